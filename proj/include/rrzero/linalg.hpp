#pragma once

#include <complex>
#include <vector>

namespace rrzero {

using cdouble = std::complex<double>;

// Dense square complex matrix, row-major. Sizes here are tiny (the index of
// a finite-index embedding), so everything is straightforward O(n^3).
struct CMatrix {
    int n = 0;
    std::vector<cdouble> a;

    CMatrix() = default;
    explicit CMatrix(int size) : n(size), a(static_cast<size_t>(size) * size) {}

    static CMatrix identity(int size);

    cdouble& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    cdouble at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    CMatrix adjoint() const;
    friend CMatrix operator*(const CMatrix& x, const CMatrix& y);
    friend CMatrix operator-(const CMatrix& x, const CMatrix& y);

    bool finite() const;
    bool hermitian(double tol = 1e-12) const;
};

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
// ascending. Relative accuracy is far below 1e-10 at these sizes.
std::vector<double> hermitian_eigenvalues(CMatrix a);

// Largest singular value. Hermitian inputs take the eigenvalue path
// (max |lambda|); general inputs go through a* a. Throws on non-finite
// entries.
double spectral_norm(const CMatrix& a);
double spectral_norm_hermitian(const CMatrix& a);

}  // namespace rrzero
