#include "rrzero/embedding.hpp"

namespace rrzero {

LiftTable build_lift_table(const SemidirectProductGroup& g) {
    LiftTable lt;
    lt.group = g;
    lt.lifts.reserve(g.acting().order());
    for (int h = 0; h < g.acting().order(); ++h)
        lt.lifts.push_back({std::vector<long long>(g.rank(), 0), h});
    return lt;  // identity() of the table is index 0, so the first lift is e
}

LiftTable build_lift_table(const GroupDescription& d) {
    if (const SemidirectProductGroup* s = d.as_semidirect()) return build_lift_table(*s);
    if (const ExtensionNode* e = d.as_extension(); e && e->realization)
        return build_lift_table(*e->realization);
    throw UnsupportedError("no canonical section: description '" + d.display_label() +
                           "' is not realized as a semidirect product");
}

LatticeAlgebraMatrix phi_embed(const AlgebraElement<SemidirectOps>& x, const LiftTable& lt) {
    if (!(x.context().group() == lt.group)) throw InputError("mixed-group operands");
    const int n = lt.index();
    LatticeAlgebraMatrix m(AbelianOps(lt.group.base_lattice()), n);
    SemidirectOps ops(lt.group);
    for (int i = 0; i < n; ++i) {
        AlgebraElement<SemidirectOps> left =
            AlgebraElement<SemidirectOps>::monomial(ops, lt.lifts[i], ComplexRational(Rational(1)));
        AlgebraElement<SemidirectOps> lx = left * x;
        for (int j = 0; j < n; ++j) {
            AlgebraElement<SemidirectOps> right = AlgebraElement<SemidirectOps>::monomial(
                ops, lt.group.inverse(lt.lifts[j]), ComplexRational(Rational(1)));
            m.at(i, j) = expectation_to_lattice(lx * right);
        }
    }
    return m;
}

namespace {

ComplexRational random_coefficient(Rng& rng, bool real_only) {
    Rational re(rng.range(-3, 3), rng.range(1, 3));
    Rational im = real_only ? Rational(0) : Rational(rng.range(-3, 3), rng.range(1, 3));
    return {re, im};
}

}  // namespace

AlgebraElement<SemidirectOps> random_group_algebra_element(const SemidirectProductGroup& g,
                                                           Rng& rng, int max_support) {
    SemidirectOps ops(g);
    AlgebraElement<SemidirectOps> x = AlgebraElement<SemidirectOps>::zero(ops);
    int support = static_cast<int>(rng.range(1, max_support));
    for (int s = 0; s < support; ++s) {
        std::vector<long long> v(g.rank());
        for (auto& c : v) c = rng.range(-2, 2);
        int h = static_cast<int>(rng.range(0, g.acting().order() - 1));
        x.add_term({std::move(v), h}, random_coefficient(rng, false));
    }
    return x;
}

LatticeAlgebraElement random_lattice_algebra_element(const FGAbelianGroup& g, Rng& rng,
                                                     int max_support, bool real_coefficients) {
    AbelianOps ops(g);
    LatticeAlgebraElement x = LatticeAlgebraElement::zero(ops);
    int support = static_cast<int>(rng.range(1, max_support));
    for (int s = 0; s < support; ++s) {
        std::vector<long long> free(g.free_rank());
        for (auto& c : free) c = rng.range(-2, 2);
        std::vector<long long> tor(g.torsion_factors().size());
        for (size_t i = 0; i < tor.size(); ++i) tor[i] = rng.range(0, g.torsion_factors()[i] - 1);
        x.add_term(g.element(std::move(free), std::move(tor)), random_coefficient(rng, real_coefficients));
    }
    return x;
}

AuditReport verify_homomorphism(const LiftTable& lt, int trials, uint64_t seed) {
    AuditReport report{"homomorphism", trials, seed, {}};
    SemidirectOps ops(lt.group);
    Rng rng(seed);
    const int n = lt.index();
    AbelianOps lattice(lt.group.base_lattice());
    if (!(phi_embed(AlgebraElement<SemidirectOps>::one(ops), lt) ==
          LatticeAlgebraMatrix::identity(lattice, n)))
        report.failures.push_back("Phi(1) != 1");
    for (int t = 0; t < trials; ++t) {
        auto x = random_group_algebra_element(lt.group, rng);
        auto y = random_group_algebra_element(lt.group, rng);
        if (!(phi_embed(x * y, lt) == phi_embed(x, lt) * phi_embed(y, lt)))
            report.failures.push_back("Phi(xy) != Phi(x)Phi(y) at trial " + std::to_string(t));
        if (!(phi_embed(x.adjoint(), lt) == phi_embed(x, lt).adjoint()))
            report.failures.push_back("Phi(x*) != Phi(x)* at trial " + std::to_string(t));
    }
    return report;
}

AuditReport verify_trace_identity(const LiftTable& lt, int trials, uint64_t seed) {
    AuditReport report{"trace-identity", trials, seed, {}};
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        auto x = random_group_algebra_element(lt.group, rng);
        ComplexRational lhs = phi_embed(x, lt).normalized_trace();
        ComplexRational rhs = x.canonical_trace();
        if (!(lhs == rhs))
            report.failures.push_back("trace mismatch at trial " + std::to_string(t) + ": " +
                                      lhs.str() + " vs " + rhs.str());
    }
    return report;
}

}  // namespace rrzero
