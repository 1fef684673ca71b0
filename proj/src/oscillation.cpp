#include "rrzero/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <unordered_set>

#include "rrzero/rng.hpp"

namespace rrzero {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// An algebra matrix with the torsion phases of one dual component folded
// into the coefficients, so a grid point only pays for the torus part.
struct SpecializedMatrix {
    int k = 0;
    // per entry: (complex coefficient, free part)
    std::vector<std::vector<std::pair<cdouble, std::vector<long long>>>> entries;
    bool hermitian_path = true;

    CMatrix eval(const double* theta, int r) const {
        CMatrix f(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                cdouble acc = 0.0;
                for (const auto& [c, free] : entries[static_cast<size_t>(i) * k + j]) {
                    double arg = 0.0;
                    for (int a = 0; a < r; ++a) arg += theta[a] * static_cast<double>(free[a]);
                    arg -= std::floor(arg);
                    acc += c * std::polar(1.0, kTwoPi * arg);
                }
                f.at(i, j) = acc;
            }
        return f;
    }

    double norm(const double* theta, int r) const {
        CMatrix f = eval(theta, r);
        return hermitian_path ? spectral_norm_hermitian(f) : spectral_norm(f);
    }
};

SpecializedMatrix specialize(const LatticeAlgebraMatrix& m, const DualDescription& dual,
                             const std::vector<long long>& torsion_char, bool hermitian_path) {
    const FGAbelianGroup& base = dual.base();
    SpecializedMatrix sm;
    sm.k = m.size();
    sm.hermitian_path = hermitian_path;
    sm.entries.resize(static_cast<size_t>(sm.k) * sm.k);
    for (int i = 0; i < sm.k; ++i)
        for (int j = 0; j < sm.k; ++j) {
            auto& out = sm.entries[static_cast<size_t>(i) * sm.k + j];
            for (const auto& [g, c] : m.at(i, j).terms()) {
                double arg = 0.0;
                for (size_t t = 0; t < torsion_char.size(); ++t)
                    arg += static_cast<double>(torsion_char[t]) *
                           static_cast<double>(g.torsion_part[t]) /
                           static_cast<double>(base.torsion_factors()[t]);
                arg -= std::floor(arg);
                out.push_back({c.to_complex() * std::polar(1.0, kTwoPi * arg), g.free_part});
            }
        }
    return sm;
}

void merge_point(ScanExtrema& e, double v, long long i) {
    if (v > e.max_value || (v == e.max_value && i < e.argmax)) {
        e.max_value = v;
        e.argmax = i;
    }
    if (v < e.min_value || (v == e.min_value && i < e.argmin)) {
        e.min_value = v;
        e.argmin = i;
    }
}

void merge_extrema(ScanExtrema& a, const ScanExtrema& b) {
    if (b.argmax >= 0) {
        if (b.max_value > a.max_value || (b.max_value == a.max_value && b.argmax < a.argmax))
            a.max_value = b.max_value, a.argmax = b.argmax;
    }
    if (b.argmin >= 0) {
        if (b.min_value < a.min_value || (b.min_value == a.min_value && b.argmin < a.argmin))
            a.min_value = b.min_value, a.argmin = b.argmin;
    }
}

ScanExtrema empty_extrema() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), -1,
            -1};
}

std::vector<double> decode_theta(long long flat, int r, int grid) {
    std::vector<double> theta(r);
    for (int a = r; a-- > 0;) {
        theta[a] = static_cast<double>(flat % grid) / static_cast<double>(grid);
        flat /= grid;
    }
    return theta;
}

long long checked_point_count(int grid, int r) {
    __int128 pts = 1;
    for (int a = 0; a < r; ++a) {
        pts *= grid;
        if (pts > 50'000'000)
            throw UnsupportedError("grid of " + std::to_string(grid) + "^" + std::to_string(r) +
                                   " points is too large; lower --grid");
    }
    return static_cast<long long>(pts);
}

void validate_grid_spec(const GridSpec& spec) {
    if (spec.grid_per_axis < 1) throw InputError("grid must be >= 1");
    if (spec.refine_levels < 0) throw InputError("refine levels must be >= 0");
    if (spec.zoom < 2) throw InputError("refinement zoom must be >= 2");
    if (spec.component_cap < 1) throw InputError("component cap must be >= 1");
}

// Component selection under the cap; returns (indices, sampled?).
std::pair<std::vector<long long>, bool> select_components(const DualDescription& dual,
                                                          const GridSpec& spec) {
    const long long count = dual.component_count();
    if (count <= spec.component_cap) {
        std::vector<long long> all(count);
        for (long long i = 0; i < count; ++i) all[i] = i;
        return {all, false};
    }
    if (!spec.sample_components)
        throw UnsupportedError("dual has " + std::to_string(count) +
                               " components, over the cap of " +
                               std::to_string(spec.component_cap) +
                               "; raise --components-cap or enable component sampling");
    Rng rng(spec.seed);
    std::unordered_set<long long> seen;
    std::vector<long long> chosen;
    while (static_cast<long long>(chosen.size()) < spec.component_cap) {
        long long idx = rng.range(0, count - 1);
        if (seen.insert(idx).second) chosen.push_back(idx);
    }
    std::sort(chosen.begin(), chosen.end());
    return {chosen, true};
}

struct Extreme {
    double value;
    std::vector<double> theta;
};

// Scan the window center +- h (wrapped) at spacing h / zoom; widths are in
// torus coordinates.
ScanExtrema scan_local(const SpecializedMatrix& sm, int r, const std::vector<double>& center,
                       double h, int zoom, Exec exec, std::vector<double>* thetas_out) {
    const int side = 2 * zoom + 1;
    long long pts = 1;
    for (int a = 0; a < r; ++a) pts *= side;
    thetas_out->assign(static_cast<size_t>(pts) * r, 0.0);
    auto fn = [&](long long flat) {
        long long rem = flat;
        std::vector<double> theta(r);
        for (int a = r; a-- > 0;) {
            int off = static_cast<int>(rem % side) - zoom;
            rem /= side;
            double t = center[a] + static_cast<double>(off) * h / zoom;
            t -= std::floor(t);
            theta[a] = t;
        }
        for (int a = 0; a < r; ++a) (*thetas_out)[static_cast<size_t>(flat) * r + a] = theta[a];
        return sm.norm(theta.data(), r);
    };
    return scan_map_reduce(pts, fn, exec);
}

}  // namespace

ScanExtrema scan_map_reduce(long long count, const std::function<double(long long)>& f, Exec exec,
                            double* values_out) {
    ScanExtrema best = empty_extrema();
    if (count <= 0) return best;
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
        std::vector<ScanExtrema> partials;
#pragma omp parallel
        {
            ScanExtrema local = empty_extrema();
#pragma omp for schedule(static) nowait
            for (long long i = 0; i < count; ++i) {
                double v = f(i);
                if (values_out) values_out[i] = v;
                merge_point(local, v, i);
            }
#pragma omp critical
            partials.push_back(local);
        }
        for (const ScanExtrema& p : partials) merge_extrema(best, p);
        return best;
    }
#else
    (void)exec;
#endif
    for (long long i = 0; i < count; ++i) {
        double v = f(i);
        if (values_out) values_out[i] = v;
        merge_point(best, v, i);
    }
    return best;
}

double l1_operator_bound(const LatticeAlgebraMatrix& m) {
    const int k = m.size();
    double max_row = 0, max_col = 0;
    std::vector<double> col(k, 0.0);
    for (int i = 0; i < k; ++i) {
        double row = 0;
        for (int j = 0; j < k; ++j) {
            double v = m.at(i, j).l1_norm();
            row += v;
            col[j] += v;
        }
        max_row = std::max(max_row, row);
    }
    for (double c : col) max_col = std::max(max_col, c);
    return std::sqrt(max_row * max_col);
}

OscillationEstimate oscillation_sampled(const LatticeAlgebraMatrix& m, const DualDescription& dual,
                                        const GridSpec& spec, Exec exec, Surface* surface,
                                        bool allow_non_selfadjoint) {
    validate_grid_spec(spec);
    if (!(m.context().group() == dual.base()))
        throw InputError("element and dual live over different groups");
    const bool sa = m.is_selfadjoint();
    if (!sa && !allow_non_selfadjoint)
        throw UnsupportedError(
            "element is not self-adjoint; opt into singular-value mode to sample it");

    OscillationEstimate est;
    est.method = OscMethod::Sampled;
    est.grid = spec;
    est.hermitian_path = sa;
    est.l1_bound = l1_operator_bound(m);

    const int r = dual.torus_dim();
    auto [components, sampled_components] = select_components(dual, spec);
    est.component_sampled = sampled_components;

    for (long long ci : components) {
        std::vector<long long> tuple = dual.component_tuple(ci);
        SpecializedMatrix sm = specialize(m, dual, tuple, sa);

        if (r == 0) {
            double v = sm.norm(nullptr, 0);
            est.components.push_back({tuple, v, v});
            if (surface) surface->push_back({ci, {}, v});
            continue;
        }

        const int grid = spec.grid_per_axis;
        const long long pts = checked_point_count(grid, r);
        std::vector<double> values;
        if (surface) values.resize(pts);
        auto fn = [&](long long flat) {
            std::vector<double> theta = decode_theta(flat, r, grid);
            return sm.norm(theta.data(), r);
        };
        ScanExtrema base = scan_map_reduce(pts, fn, exec, surface ? values.data() : nullptr);
        if (surface)
            for (long long i = 0; i < pts; ++i)
                surface->push_back({ci, decode_theta(i, r, grid), values[i]});

        Extreme hi{base.max_value, decode_theta(base.argmax, r, grid)};
        Extreme lo{base.min_value, decode_theta(base.argmin, r, grid)};
        double h = 1.0 / grid;
        for (int level = 0; level < spec.refine_levels; ++level) {
            std::vector<double> thetas;
            ScanExtrema up = scan_local(sm, r, hi.theta, h, spec.zoom, exec, &thetas);
            if (up.max_value > hi.value) {
                hi.value = up.max_value;
                hi.theta.assign(thetas.begin() + up.argmax * r, thetas.begin() + (up.argmax + 1) * r);
            }
            ScanExtrema down = scan_local(sm, r, lo.theta, h, spec.zoom, exec, &thetas);
            if (down.min_value < lo.value) {
                lo.value = down.min_value;
                lo.theta.assign(thetas.begin() + down.argmin * r,
                                thetas.begin() + (down.argmin + 1) * r);
            }
            h /= spec.zoom;
        }
        est.components.push_back({tuple, hi.value, lo.value});
    }

    for (const ComponentStats& c : est.components) {
        est.omega_lower = std::max(est.omega_lower, c.max_norm - c.min_norm);
        est.global_max_norm = std::max(est.global_max_norm, c.max_norm);
    }
    est.omega_upper = (r == 0) ? 0.0 : 2.0 * est.l1_bound;
    return est;
}

OscillationEstimate oscillation_exact_beta_diagonal(const std::vector<AbelianElement>& entries,
                                                    const DualDescription& dual) {
    if (entries.empty()) throw InputError("empty diagonal");
    bool has_non_torsion = false;
    for (const AbelianElement& d : entries) {
        dual.base().check_shape(d);
        if (!dual.base().is_torsion(d)) has_non_torsion = true;
    }
    // Non-torsion d_1: the fiber norm sweeps from 0 (trivial character) to 2
    // (a character with chi(d_1) = -1) within one component. All torsion:
    // every fiber norm max_i (1 - Re chi(d_i)) is constant per component.
    OscillationEstimate est;
    est.method = OscMethod::ExactDiagonal;
    est.omega_lower = est.omega_upper = has_non_torsion ? 2.0 : 0.0;
    est.hermitian_path = true;
    est.global_max_norm = has_non_torsion ? 2.0 : 0.0;
    LatticeAlgebraMatrix m = beta_diagonal_matrix(dual.base(), entries);
    est.l1_bound = l1_operator_bound(m);
    return est;
}

std::optional<BetaDiagonalForm> recognize_beta_diagonal(const LatticeAlgebraMatrix& m) {
    const FGAbelianGroup& g = m.context().group();
    const AbelianElement e = g.identity();
    BetaDiagonalForm form;
    bool sign_known = false;
    bool shift_known = false;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j)
            if (i != j && !m.at(i, j).is_zero()) return std::nullopt;
    for (int i = 0; i < m.size(); ++i) {
        const auto& entry = m.at(i, i);
        ComplexRational ce = entry.coefficient(e);
        if (!ce.is_real()) return std::nullopt;
        std::vector<AbelianElement> others;
        for (const auto& [el, c] : entry.terms())
            if (!(el == e)) others.push_back(el);
        if (others.empty()) {
            // entry = shift * 1 (a beta(e) slot)
            if (shift_known && !(form.shift == ce.re)) return std::nullopt;
            form.shift = ce.re;
            shift_known = true;
            form.entries.push_back(e);
            continue;
        }
        // beta(d) = beta(d^{-1}); report the canonically larger representative
        AbelianElement d = std::max(others[0], g.inverse(others[0]));
        int s;
        if (others.size() == 1) {
            if (!(g.inverse(d) == d)) return std::nullopt;  // must be order <= 2
            ComplexRational c = entry.coefficient(d);
            if (!c.is_real()) return std::nullopt;
            if (c.re == Rational(-1))
                s = 1;
            else if (c.re == Rational(1))
                s = -1;
            else
                return std::nullopt;
        } else if (others.size() == 2) {
            if (!(g.inverse(others[0]) == others[1])) return std::nullopt;
            ComplexRational c0 = entry.coefficient(others[0]);
            ComplexRational c1 = entry.coefficient(others[1]);
            if (!c0.is_real() || !(c0 == c1)) return std::nullopt;
            if (c0.re == Rational(-1, 2))
                s = 1;
            else if (c0.re == Rational(1, 2))
                s = -1;
            else
                return std::nullopt;
        } else {
            return std::nullopt;
        }
        if (sign_known && s != form.sign) return std::nullopt;
        form.sign = s;
        sign_known = true;
        // entry = (shift + s) e + s * (beta(d) - e)  =>  shift = c_e - s
        Rational shift = ce.re - Rational(s);
        if (shift_known && !(form.shift == shift)) return std::nullopt;
        form.shift = shift;
        shift_known = true;
        form.entries.push_back(d);
    }
    if (!sign_known) form.sign = 1;
    if (!shift_known) form.shift = Rational(0);
    return form;
}

LatticeAlgebraMatrix beta_diagonal_matrix(const FGAbelianGroup& g,
                                          const std::vector<AbelianElement>& entries) {
    AbelianOps ops(g);
    std::vector<LatticeAlgebraElement> diag;
    diag.reserve(entries.size());
    for (const AbelianElement& d : entries) diag.push_back(beta(ops, d));
    return LatticeAlgebraMatrix::diagonal(ops, diag);
}

namespace {

double l1_bound_shifted(const LatticeAlgebraMatrix& m, double lambda) {
    // entrywise l1 of m - lambda * 1, assembled without exact-rational work:
    // only the identity coefficient on the diagonal moves.
    const int k = m.size();
    const AbelianElement e = m.context().group().identity();
    std::vector<double> row(k, 0.0), col(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            double v = 0;
            for (const auto& [g, c] : m.at(i, j).terms()) {
                if (i == j && g == e) continue;
                v += c.abs();
            }
            if (i == j) {
                ComplexRational ce = m.at(i, i).coefficient(e);
                v += std::hypot(ce.re.to_double() - lambda, ce.im.to_double());
            }
            row[i] += v;
            col[j] += v;
        }
    double mr = *std::max_element(row.begin(), row.end());
    double mc = *std::max_element(col.begin(), col.end());
    return std::sqrt(mr * mc);
}

double min_l1_over_shifts(const LatticeAlgebraMatrix& m) {
    std::vector<double> candidates{0.0};
    const AbelianElement e = m.context().group().identity();
    double lo = 0, hi = 0;
    for (int i = 0; i < m.size(); ++i) {
        double ce = m.at(i, i).coefficient(e).re.to_double();
        candidates.push_back(ce);
        lo = std::min(lo, ce);
        hi = std::max(hi, ce);
    }
    double span = std::max(1.0, hi - lo);
    double best = std::numeric_limits<double>::infinity();
    for (double c : candidates) best = std::min(best, l1_bound_shifted(m, c));
    // coarse scan + golden refinement over the bracketing interval
    const int steps = 512;
    double best_l = lo;
    for (int i = 0; i <= steps; ++i) {
        double lambda = (lo - span) + (hi - lo + 2 * span) * i / steps;
        double v = l1_bound_shifted(m, lambda);
        if (v < best) {
            best = v;
            best_l = lambda;
        }
    }
    double a = best_l - span / steps, b = best_l + span / steps;
    for (int it = 0; it < 120; ++it) {
        double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        if (l1_bound_shifted(m, m1) <= l1_bound_shifted(m, m2))
            b = m2;
        else
            a = m1;
    }
    best = std::min(best, l1_bound_shifted(m, (a + b) / 2));
    return best;
}

}  // namespace

DistanceBracket finite_spectrum_distance_bracket(const LatticeAlgebraMatrix& m,
                                                 const DualDescription& dual, const GridSpec& spec,
                                                 Exec exec) {
    validate_grid_spec(spec);
    if (!m.is_selfadjoint())
        throw UnsupportedError("distance bracket needs a self-adjoint element");
    DistanceBracket out;
    out.upper = min_l1_over_shifts(m);

    if (auto form = recognize_beta_diagonal(m)) {
        bool non_torsion = false;
        for (const AbelianElement& d : form->entries)
            if (!dual.base().is_torsion(d)) non_torsion = true;
        out.lower = non_torsion ? 1.0 : 0.0;
        out.exact = true;
        return out;
    }

    // Sampled route: cache fiber eigenvalue extremes on the base grids, then
    // sweep the scalar shift. Every shift yields a valid lower bound.
    const int r = dual.torus_dim();
    auto [components, sampled] = select_components(dual, spec);
    (void)sampled;
    std::vector<std::vector<std::pair<double, double>>> extremes;  // per component, per point
    for (long long ci : components) {
        SpecializedMatrix sm = specialize(m, dual, dual.component_tuple(ci), true);
        const long long pts = r == 0 ? 1 : checked_point_count(spec.grid_per_axis, r);
        std::vector<std::pair<double, double>> comp(pts);
        auto fn = [&](long long flat) {
            std::vector<double> theta =
                r == 0 ? std::vector<double>{} : decode_theta(flat, r, spec.grid_per_axis);
            std::vector<double> eig = hermitian_eigenvalues(sm.eval(theta.data(), r));
            comp[flat] = {eig.front(), eig.back()};
            return 0.0;
        };
        scan_map_reduce(pts, fn, exec);
        extremes.push_back(std::move(comp));
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& comp : extremes)
        for (const auto& [emin, emax] : comp) {
            lo = std::min(lo, emin);
            hi = std::max(hi, emax);
        }
    double best_omega = 0;
    const int steps = 2048;
    for (int i = 0; i <= steps; ++i) {
        double lambda = lo + (hi - lo) * i / steps;
        double omega = 0;
        for (const auto& comp : extremes) {
            double cmax = -std::numeric_limits<double>::infinity();
            double cmin = std::numeric_limits<double>::infinity();
            for (const auto& [emin, emax] : comp) {
                double norm = std::max(emax - lambda, lambda - emin);
                cmax = std::max(cmax, norm);
                cmin = std::min(cmin, norm);
            }
            omega = std::max(omega, cmax - cmin);
        }
        best_omega = std::max(best_omega, omega);
    }
    out.lower = best_omega / 2.0;
    out.exact = false;
    return out;
}

LipschitzReport lipschitz_audit(const LatticeAlgebraMatrix& m, const LatticeAlgebraMatrix& p,
                                const DualDescription& dual, const GridSpec& spec, Exec exec) {
    validate_grid_spec(spec);
    if (m.size() != p.size()) throw InputError("perturbation has a different matrix size");
    LatticeAlgebraMatrix mp = m + p;
    const bool hermitian = m.is_selfadjoint() && p.is_selfadjoint() && mp.is_selfadjoint();

    const int r = dual.torus_dim();
    auto [components, sampled] = select_components(dual, spec);
    (void)sampled;

    LipschitzReport rep;
    double omega_m = 0, omega_mp = 0, pnorm = 0;
    for (long long ci : components) {
        std::vector<long long> tuple = dual.component_tuple(ci);
        SpecializedMatrix sm = specialize(m, dual, tuple, hermitian);
        SpecializedMatrix smp = specialize(mp, dual, tuple, hermitian);
        SpecializedMatrix sp = specialize(p, dual, tuple, hermitian);
        const long long pts = r == 0 ? 1 : checked_point_count(spec.grid_per_axis, r);
        auto theta_of = [&](long long flat) {
            return r == 0 ? std::vector<double>{} : decode_theta(flat, r, spec.grid_per_axis);
        };
        ScanExtrema em = scan_map_reduce(
            pts, [&](long long i) { auto t = theta_of(i); return sm.norm(t.data(), r); }, exec);
        ScanExtrema emp = scan_map_reduce(
            pts, [&](long long i) { auto t = theta_of(i); return smp.norm(t.data(), r); }, exec);
        ScanExtrema ep = scan_map_reduce(
            pts, [&](long long i) { auto t = theta_of(i); return sp.norm(t.data(), r); }, exec);
        omega_m = std::max(omega_m, em.max_value - em.min_value);
        omega_mp = std::max(omega_mp, emp.max_value - emp.min_value);
        pnorm = std::max(pnorm, ep.max_value);
    }
    rep.omega_m = omega_m;
    rep.omega_mp = omega_mp;
    rep.p_norm = pnorm;
    rep.ok = std::abs(omega_m - omega_mp) <= 2.0 * pnorm + rep.slack;
    return rep;
}

ZeroOscillationReport finite_spectrum_zero_oscillation_audit(const ConjugatedDiagonalField& field,
                                                             const DualDescription& dual,
                                                             const GridSpec& spec, Exec exec,
                                                             double tol) {
    validate_grid_spec(spec);
    const int r = dual.torus_dim();
    auto [components, sampled] = select_components(dual, spec);
    (void)sampled;
    const int k = static_cast<int>(field.diag.size());
    CMatrix d(k);
    for (int i = 0; i < k; ++i) d.at(i, i) = field.diag[i];

    double omega = 0;
    for (long long ci : components) {
        std::vector<long long> tuple = dual.component_tuple(ci);
        const long long pts = r == 0 ? 1 : checked_point_count(spec.grid_per_axis, r);
        auto fn = [&](long long flat) {
            Character chi{r == 0 ? std::vector<double>{}
                                 : decode_theta(flat, r, spec.grid_per_axis),
                          tuple};
            CMatrix u = field.unitary(chi);
            CMatrix a = u * d * u.adjoint();
            return spectral_norm_hermitian(a);
        };
        ScanExtrema e = scan_map_reduce(pts, fn, exec);
        omega = std::max(omega, e.max_value - e.min_value);
    }
    ZeroOscillationReport rep;
    rep.omega_sampled = omega;
    rep.tol = tol;
    rep.ok = omega <= tol;
    return rep;
}

ConjugatedDiagonalField make_rotation_field(const CMatrix& frame, std::vector<double> diag,
                                            int winding) {
    const int k = frame.n;
    ConjugatedDiagonalField field;
    field.diag = std::move(diag);
    field.unitary = [frame, winding, k](const Character& chi) {
        double angle = chi.theta.empty() ? 0.0 : kTwoPi * winding * chi.theta[0];
        CMatrix g = CMatrix::identity(k);
        if (k == 1) {
            g.at(0, 0) = std::polar(1.0, angle);
        } else {
            g.at(0, 0) = std::cos(angle);
            g.at(0, 1) = -std::sin(angle);
            g.at(1, 0) = std::sin(angle);
            g.at(1, 1) = std::cos(angle);
        }
        return frame * g;
    };
    return field;
}

CMatrix random_unitary(int size, uint64_t seed) {
    Rng rng(seed);
    CMatrix m(size);
    for (auto& v : m.a) v = cdouble(rng.unit() * 2 - 1, rng.unit() * 2 - 1);
    // Gram-Schmidt on columns
    for (int j = 0; j < size; ++j) {
        for (int p = 0; p < j; ++p) {
            cdouble dot = 0;
            for (int i = 0; i < size; ++i) dot += std::conj(m.at(i, p)) * m.at(i, j);
            for (int i = 0; i < size; ++i) m.at(i, j) -= dot * m.at(i, p);
        }
        double norm = 0;
        for (int i = 0; i < size; ++i) norm += std::norm(m.at(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-9) {  // regenerate a degenerate column deterministically
            for (int i = 0; i < size; ++i) m.at(i, j) = (i == j) ? 1.0 : 0.0;
            --j;
            continue;
        }
        for (int i = 0; i < size; ++i) m.at(i, j) /= norm;
    }
    return m;
}

void write_surface_csv(std::ostream& os, const Surface& surface, int torus_dim) {
    os << "component";
    for (int a = 1; a <= torus_dim; ++a) os << ",theta_" << a;
    os << ",norm\n";
    char buf[64];
    for (const SurfaceRow& row : surface) {
        os << row.component;
        for (double t : row.theta) {
            std::snprintf(buf, sizeof buf, "%.12g", t);
            os << ',' << buf;
        }
        std::snprintf(buf, sizeof buf, "%.12g", row.norm);
        os << ',' << buf << '\n';
    }
}

}  // namespace rrzero
