#include "rrzero/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rrzero {

CMatrix CMatrix::identity(int size) {
    CMatrix m(size);
    for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    CMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            cdouble v = x.at(i, k);
            if (v == cdouble(0.0)) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
        }
    return r;
}

CMatrix operator-(const CMatrix& x, const CMatrix& y) {
    CMatrix r(x.n);
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

bool CMatrix::finite() const {
    for (const cdouble& v : a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool CMatrix::hermitian(double tol) const {
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

std::vector<double> hermitian_eigenvalues(CMatrix m) {
    const int n = m.n;
    if (n == 0) return {};
    if (n == 1) return {m.at(0, 0).real()};

    auto off_norm = [&]() {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(m.at(i, j));
        return std::sqrt(s);
    };
    double scale = 0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(m.at(i, i)));
    for (const cdouble& v : m.a) scale = std::max(scale, std::abs(v));
    const double stop = 1e-15 * (scale + 1.0);

    for (int sweep = 0; sweep < 60 && off_norm() > stop; ++sweep) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                cdouble apq = m.at(p, q);
                double r = std::abs(apq);
                if (r <= stop * 1e-2) continue;
                cdouble phase = apq / r;
                double app = m.at(p, p).real();
                double aqq = m.at(q, q).real();
                double tau = (aqq - app) / (2.0 * r);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // columns: col_p' = c col_p - s conj(phase) col_q,
                //          col_q' = s phase col_p + c col_q
                for (int k = 0; k < n; ++k) {
                    cdouble kp = m.at(k, p), kq = m.at(k, q);
                    m.at(k, p) = c * kp - s * std::conj(phase) * kq;
                    m.at(k, q) = s * phase * kp + c * kq;
                }
                // rows: row_p' = c row_p - s phase row_q,
                //       row_q' = s conj(phase) row_p + c row_q
                for (int k = 0; k < n; ++k) {
                    cdouble pk = m.at(p, k), qk = m.at(q, k);
                    m.at(p, k) = c * pk - s * phase * qk;
                    m.at(q, k) = s * std::conj(phase) * pk + c * qk;
                }
                m.at(p, q) = 0.0;
                m.at(q, p) = 0.0;
                m.at(p, p) = cdouble(m.at(p, p).real(), 0.0);
                m.at(q, q) = cdouble(m.at(q, q).real(), 0.0);
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = m.at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double spectral_norm_hermitian(const CMatrix& a) {
    if (!a.finite()) throw std::domain_error("spectral norm of a non-finite matrix");
    std::vector<double> eig = hermitian_eigenvalues(a);
    double r = 0;
    for (double e : eig) r = std::max(r, std::abs(e));
    return r;
}

double spectral_norm(const CMatrix& a) {
    if (!a.finite()) throw std::domain_error("spectral norm of a non-finite matrix");
    if (a.n == 0) return 0.0;
    if (a.hermitian()) return spectral_norm_hermitian(a);
    CMatrix gram = a.adjoint() * a;
    std::vector<double> eig = hermitian_eigenvalues(gram);
    double top = eig.empty() ? 0.0 : std::max(0.0, eig.back());
    return std::sqrt(top);
}

}  // namespace rrzero
