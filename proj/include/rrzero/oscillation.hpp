#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rrzero/dual.hpp"

namespace rrzero {

// Which scan kernel runs the grid. Parallel is the production OpenMP kernel;
// Serial is the reference implementation kept for testing and benchmarks.
// Both produce bit-identical results: the reductions are max/min with a
// deterministic smallest-index tie-break, which is order-independent.
enum class Exec { Serial, Parallel };

struct GridSpec {
    int grid_per_axis = 64;
    int refine_levels = 2;
    int zoom = 8;  // local spacing shrink per refinement level
    long long component_cap = 4096;
    bool sample_components = false;  // opt-in when the cap is exceeded
    uint64_t seed = 1234577;         // drives component sampling only

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ComponentStats {
    std::vector<long long> torsion_char;
    double max_norm = 0;
    double min_norm = 0;
};

enum class OscMethod { ExactDiagonal, Sampled };

struct OscillationEstimate {
    double omega_lower = 0;
    double omega_upper = 0;
    OscMethod method = OscMethod::Sampled;
    GridSpec grid;
    bool hermitian_path = true;
    bool component_sampled = false;
    std::vector<ComponentStats> components;
    double global_max_norm = 0;
    double l1_bound = 0;  // coefficient bound on the C*-norm
};

// One evaluated grid point of the norm surface (base grid only).
struct SurfaceRow {
    long long component = 0;
    std::vector<double> theta;
    double norm = 0;
};
using Surface = std::vector<SurfaceRow>;

// Header `component,theta_1..theta_r,norm`, 12 significant digits.
void write_surface_csv(std::ostream& os, const Surface& surface, int torus_dim);

// Sampled oscillation: per component, fiber norms on a uniform grid with
// accumulating local refinement around both extrema. omega_lower is a true
// lower bound (sampled sup <= sup, sampled inf >= inf) and is monotone
// non-decreasing in refinement levels and in grid doubling; omega_upper
// comes from the coefficient l1 bound. Zero-dimensional duals give exact 0.
// Requires a symbolically self-adjoint element unless the caller opts into
// singular-value mode.
OscillationEstimate oscillation_sampled(const LatticeAlgebraMatrix& m, const DualDescription& dual,
                                        const GridSpec& spec, Exec exec = Exec::Parallel,
                                        Surface* surface = nullptr,
                                        bool allow_non_selfadjoint = false);

// Exact oscillation of diag(beta(d_1), ..., beta(d_k)): 2 when some d_i has
// infinite order, else 0 (the fiber norm is then constant per component).
OscillationEstimate oscillation_exact_beta_diagonal(const std::vector<AbelianElement>& entries,
                                                    const DualDescription& dual);

// diag(beta(d_1), ..., beta(d_k)) as a matrix over the group algebra.
LatticeAlgebraMatrix beta_diagonal_matrix(const FGAbelianGroup& g,
                                          const std::vector<AbelianElement>& entries);

// Recognizes m = shift * 1 + sign * diag(beta(d_1), ..., beta(d_k)); this is
// the family whose oscillation (and distance bracket) have closed forms.
struct BetaDiagonalForm {
    std::vector<AbelianElement> entries;
    Rational shift;
    int sign = 1;
};
std::optional<BetaDiagonalForm> recognize_beta_diagonal(const LatticeAlgebraMatrix& m);

// Two-sided bracket for the distance from a self-adjoint element to the
// self-adjoint elements of finite spectrum. Lower bound: max over scalar
// shifts of (oscillation of m - lambda)/2 (shifting by a scalar does not
// move the distance, and scalars have finite spectrum). Upper bound: min
// over scalar shifts of the coefficient-norm bound of m - lambda. Both
// sides are exact on the beta-diagonal family.
struct DistanceBracket {
    double lower = 0;
    double upper = 0;
    bool exact = false;
};
DistanceBracket finite_spectrum_distance_bracket(const LatticeAlgebraMatrix& m,
                                                 const DualDescription& dual, const GridSpec& spec,
                                                 Exec exec = Exec::Parallel);

// Checks |omega(m) - omega(m+p)| <= 2 ||p|| with all three quantities
// evaluated on one shared character set (the base grids), where the
// inequality is an identity of real numbers; `slack` absorbs eigensolver
// rounding only.
struct LipschitzReport {
    double omega_m = 0;
    double omega_mp = 0;
    double p_norm = 0;
    double slack = 1e-10;
    bool ok = false;
};
LipschitzReport lipschitz_audit(const LatticeAlgebraMatrix& m, const LatticeAlgebraMatrix& p,
                                const DualDescription& dual, const GridSpec& spec,
                                Exec exec = Exec::Parallel);

// A matrix field chi -> U(chi) D U(chi)^* with constant real diagonal D:
// a self-adjoint field with finite spectrum, so its sampled oscillation
// must vanish to numerical precision.
struct ConjugatedDiagonalField {
    std::function<CMatrix(const Character&)> unitary;
    std::vector<double> diag;
};

struct ZeroOscillationReport {
    double omega_sampled = 0;
    double tol = 1e-6;
    bool ok = false;
};
ZeroOscillationReport finite_spectrum_zero_oscillation_audit(const ConjugatedDiagonalField& field,
                                                             const DualDescription& dual,
                                                             const GridSpec& spec,
                                                             Exec exec = Exec::Parallel,
                                                             double tol = 1e-6);

// Field builder used by the zero-oscillation audit: U(chi) = frame * G(chi),
// where G rotates the (0, 1)-plane by winding * theta_1 full turns (a phase
// for 1x1 frames).
ConjugatedDiagonalField make_rotation_field(const CMatrix& frame, std::vector<double> diag,
                                            int winding);

// Deterministic dense unitary for test fields.
CMatrix random_unitary(int size, uint64_t seed);

// l1-coefficient bound on the operator norm of a matrix over the group
// algebra: sqrt(max row sum * max column sum) of entrywise l1 norms.
double l1_operator_bound(const LatticeAlgebraMatrix& m);

// Exposed for the benchmark and kernel-agreement tests: reduces f over
// [0, count) to (max, min) with smallest-index tie-breaks.
struct ScanExtrema {
    double max_value;
    double min_value;
    long long argmax;
    long long argmin;
};
ScanExtrema scan_map_reduce(long long count, const std::function<double(long long)>& f, Exec exec,
                            double* values_out = nullptr);

}  // namespace rrzero
