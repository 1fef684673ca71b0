#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrzero/algebra.hpp"
#include "rrzero/description.hpp"
#include "rrzero/rng.hpp"

namespace rrzero {

// Coset lifts for 1 -> Z^r -> G -> H -> 1 realized as a semidirect product:
// the canonical section h -> (0, h), enumerated with the identity first.
struct LiftTable {
    SemidirectProductGroup group;
    std::vector<SemidirectElement> lifts;

    int index() const { return static_cast<int>(lifts.size()); }
};

LiftTable build_lift_table(const SemidirectProductGroup& g);
// Accepts a semidirect description or an extension with a realization;
// anything else has no canonical section and throws UnsupportedError.
LiftTable build_lift_table(const GroupDescription& d);

// The finite-index matrix embedding: entry (i, j) is the conditional
// expectation of lift_i * x * lift_j^{-1} onto the base lattice. Elements of
// the lattice land on the diagonal as their conjugates, with the (0, 0)
// entry equal to the element itself.
LatticeAlgebraMatrix phi_embed(const AlgebraElement<SemidirectOps>& x, const LiftTable& lt);

struct AuditReport {
    std::string name;
    int trials = 0;
    uint64_t seed = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

// Randomized exact checks of the embedding: multiplicativity, adjoint
// compatibility, unitality; and the trace identity tr (x) Ttau(Phi(x)) = tau(x).
AuditReport verify_homomorphism(const LiftTable& lt, int trials, uint64_t seed);
AuditReport verify_trace_identity(const LiftTable& lt, int trials, uint64_t seed);

// Shared generator for seeded audit elements: small support, small exact
// coefficients, lattice coordinates in [-2, 2].
AlgebraElement<SemidirectOps> random_group_algebra_element(const SemidirectProductGroup& g,
                                                           Rng& rng, int max_support = 4);
LatticeAlgebraElement random_lattice_algebra_element(const FGAbelianGroup& g, Rng& rng,
                                                     int max_support = 4,
                                                     bool real_coefficients = false);

}  // namespace rrzero
