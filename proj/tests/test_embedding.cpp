#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "rrzero/embedding.hpp"

using namespace rrzero;
using namespace rrzero::testing;

namespace {
const ComplexRational kOne{Rational(1)};

SemidirectProductGroup z2_rotation3() {
    // order-3 rotation of Z^2: [[0,-1],[1,-1]]
    IntMatrix r(2);
    r.at(0, 1) = -1;
    r.at(1, 0) = 1;
    r.at(1, 1) = -1;
    return SemidirectProductGroup(2, FiniteGroupTable::cyclic(3),
                                  {IntMatrix::identity(2), r, r * r});
}
}  // namespace

TEST_CASE("lift tables") {
    LiftTable dinf = build_lift_table(infinite_dihedral());
    REQUIRE(dinf.index() == 2);
    CHECK(dinf.lifts[0] == SemidirectElement{{0}, 0});
    CHECK(dinf.lifts[1] == SemidirectElement{{0}, 1});

    SemidirectProductGroup trivial(1, FiniteGroupTable::cyclic(1), {IntMatrix::identity(1)});
    CHECK(build_lift_table(trivial).index() == 1);

    CHECK(build_lift_table(z2_rotation3()).index() == 3);

    // unrealized extensions have no canonical section
    CHECK_THROWS_AS(build_lift_table(*lamplighter_description()), UnsupportedError);
}

TEST_CASE("embedding of lattice elements is diagonal") {
    SemidirectProductGroup g = z2_rotation3();
    LiftTable lt = build_lift_table(g);
    SemidirectOps ops(g);
    SemidirectElement a = g.lattice_element({1, 0});
    auto phi = phi_embed(AlgebraElement<SemidirectOps>::monomial(ops, a, kOne), lt);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(phi.at(i, j).is_zero());
    // the (0,0) entry is the element itself; the others are its conjugates
    AbelianOps lattice(g.base_lattice());
    CHECK(phi.at(0, 0) ==
          LatticeAlgebraElement::monomial(lattice, AbelianElement{{1, 0}, {}}, kOne));
    for (int i = 1; i < 3; ++i) {
        SemidirectElement conj = g.conjugate(lt.lifts[i], a);
        CHECK(conj.h == 0);
        CHECK(phi.at(i, i) ==
              LatticeAlgebraElement::monomial(lattice, AbelianElement{conj.vec, {}}, kOne));
    }
}

TEST_CASE("embedding of the identity") {
    LiftTable lt = build_lift_table(infinite_dihedral());
    SemidirectOps ops(lt.group);
    AbelianOps lattice(lt.group.base_lattice());
    CHECK(phi_embed(AlgebraElement<SemidirectOps>::one(ops), lt) ==
          LatticeAlgebraMatrix::identity(lattice, 2));
}

TEST_CASE("Phi(beta(a)) over the infinite dihedral group") {
    SemidirectProductGroup dinf = infinite_dihedral();
    LiftTable lt = build_lift_table(dinf);
    SemidirectOps ops(dinf);
    AbelianOps lattice(dinf.base_lattice());

    auto phi = phi_embed(beta(ops, dinf.lattice_element({1})), lt);

    AbelianElement a{{1}, {}};
    auto expected = LatticeAlgebraMatrix::diagonal(
        lattice, {beta(AbelianOps(lattice), a),
                  beta(AbelianOps(lattice), FGAbelianGroup::free_lattice(1).inverse(a))});
    CHECK(phi == expected);
}

TEST_CASE("homomorphism and trace audits") {
    for (const SemidirectProductGroup& g :
         {infinite_dihedral(), lattice_semidirect_minus_identity(2)}) {
        LiftTable lt = build_lift_table(g);
        AuditReport hom = verify_homomorphism(lt, 40, 20240301);
        CHECK(hom.ok());
        CHECK(hom.trials == 40);
        AuditReport tr = verify_trace_identity(lt, 40, 20240301);
        CHECK(tr.ok());
    }
}

TEST_CASE("trace identity spot checks") {
    SemidirectProductGroup dinf = infinite_dihedral();
    LiftTable lt = build_lift_table(dinf);
    SemidirectOps ops(dinf);

    // x = e: both sides 1
    CHECK(phi_embed(AlgebraElement<SemidirectOps>::one(ops), lt).normalized_trace() == kOne);

    // x = g outside the lattice: both sides 0
    auto flip = AlgebraElement<SemidirectOps>::monomial(ops, {{0}, 1}, kOne);
    CHECK(phi_embed(flip, lt).normalized_trace() == ComplexRational());
    CHECK(flip.canonical_trace() == ComplexRational());

    Rng rng(777);
    for (int t = 0; t < 100; ++t) {
        auto x = random_group_algebra_element(dinf, rng);
        CHECK(phi_embed(x, lt).normalized_trace() == x.canonical_trace());
    }
}
