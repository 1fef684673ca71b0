#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rrzero/embedding.hpp"
#include "rrzero/oscillation.hpp"

using namespace rrzero;

namespace {

const ComplexRational kOne{Rational(1)};

LatticeAlgebraMatrix example_beta_matrix(const std::vector<long long>& exponents) {
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    std::vector<AbelianElement> entries;
    for (long long e : exponents) entries.push_back(z.element({e}, {}));
    return beta_diagonal_matrix(z, entries);
}

LatticeAlgebraMatrix random_selfadjoint_matrix(const FGAbelianGroup& g, int k, Rng& rng) {
    AbelianOps ops(g);
    LatticeAlgebraMatrix x(ops, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) x.at(i, j) = random_lattice_algebra_element(g, rng, 3);
    LatticeAlgebraMatrix r = x + x.adjoint();
    return r;
}

}  // namespace

TEST_CASE("constant elements have zero oscillation") {
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    AbelianOps ops(z);
    LatticeAlgebraMatrix m(ops, 2);
    m.at(0, 0) = LatticeAlgebraElement::monomial(ops, z.identity(), ComplexRational{Rational(3, 2)});
    m.at(1, 1) = LatticeAlgebraElement::monomial(ops, z.identity(), ComplexRational{Rational(-1, 2)});
    OscillationEstimate est = oscillation_sampled(m, DualDescription(z), GridSpec{});
    CHECK(est.omega_lower == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("diagonal powers of the torus unitary oscillate by exactly 2") {
    for (long long lambda : {1LL, 2LL, 5LL}) {
        LatticeAlgebraMatrix m = example_beta_matrix({lambda});
        DualDescription dual(m.context().group());

        OscillationEstimate exact = oscillation_exact_beta_diagonal(
            {m.context().group().element({lambda}, {})}, dual);
        CHECK(exact.omega_lower == 2.0);
        CHECK(exact.omega_upper == 2.0);
        CHECK(exact.method == OscMethod::ExactDiagonal);

        GridSpec spec;
        spec.grid_per_axis = 256;
        OscillationEstimate sampled = oscillation_sampled(m, dual, spec);
        CHECK(sampled.omega_lower >= 2.0 - 1e-3);
        CHECK(sampled.omega_lower <= 2.0);
    }

    // the 3x3 diagonal with all three exponents at once
    LatticeAlgebraMatrix m = example_beta_matrix({1, 2, 5});
    DualDescription dual(m.context().group());
    GridSpec spec;
    spec.grid_per_axis = 256;
    OscillationEstimate sampled = oscillation_sampled(m, dual, spec);
    CHECK(sampled.omega_lower >= 2.0 - 1e-3);
    CHECK(sampled.omega_lower <= 2.0);
}

TEST_CASE("zero-dimensional duals have zero oscillation") {
    FGAbelianGroup g = FGAbelianGroup::make(0, {4, 8});
    AbelianOps ops(g);
    Rng rng(4);
    LatticeAlgebraMatrix m(ops, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = random_lattice_algebra_element(g, rng);
    m = m + m.adjoint();
    OscillationEstimate est = oscillation_sampled(m, DualDescription(g), GridSpec{});
    CHECK(est.omega_lower == 0.0);
    CHECK(est.omega_upper == 0.0);
    CHECK(est.components.size() == 32);
}

TEST_CASE("exact beta-diagonal values") {
    FGAbelianGroup g = FGAbelianGroup::make(2, {4});
    DualDescription dual(g);

    // one non-torsion entry forces 2
    OscillationEstimate nt = oscillation_exact_beta_diagonal(
        {g.element({1, 0}, {0}), g.element({2, 3}, {1})}, dual);
    CHECK(nt.omega_lower == 2.0);

    // all torsion entries: fiber norms are constant per component
    OscillationEstimate tor = oscillation_exact_beta_diagonal(
        {g.element({0, 0}, {1}), g.element({0, 0}, {3})}, dual);
    CHECK(tor.omega_lower == 0.0);

    // beta(identity) is the zero element
    OscillationEstimate zero = oscillation_exact_beta_diagonal({g.identity()}, dual);
    CHECK(zero.omega_lower == 0.0);

    // cross-check by sampling: torsion-only entries give a flat surface
    AbelianOps ops(g);
    LatticeAlgebraMatrix tm = beta_diagonal_matrix(g, {g.element({0, 0}, {1})});
    OscillationEstimate ts = oscillation_sampled(tm, dual, GridSpec{});
    CHECK(ts.omega_lower == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("exact and sampled paths agree within 1e-3 at grid 256") {
    Rng rng(314);
    GridSpec spec;
    spec.grid_per_axis = 256;

    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    FGAbelianGroup mixed = FGAbelianGroup::make(2, {4});
    for (int t = 0; t < 6; ++t) {
        std::vector<AbelianElement> entries;
        int k = 1 + static_cast<int>(rng.range(0, 2));
        const FGAbelianGroup& g = (t % 2 == 0) ? z : mixed;
        for (int i = 0; i < k; ++i) {
            std::vector<long long> free(g.free_rank());
            for (auto& c : free) c = rng.range(-3, 3);
            std::vector<long long> tor(g.torsion_factors().size());
            for (size_t s = 0; s < tor.size(); ++s) tor[s] = rng.range(0, g.torsion_factors()[s] - 1);
            entries.push_back(g.element(free, tor));
        }
        DualDescription dual(g);
        double exact = oscillation_exact_beta_diagonal(entries, dual).omega_lower;
        double sampled =
            oscillation_sampled(beta_diagonal_matrix(g, entries), dual, spec).omega_lower;
        CHECK(std::abs(exact - sampled) < 1e-3);
    }
}

TEST_CASE("sampled estimate is monotone under refinement") {
    FGAbelianGroup g = FGAbelianGroup::free_lattice(2);
    Rng rng(2718);
    LatticeAlgebraMatrix m = random_selfadjoint_matrix(g, 2, rng);
    DualDescription dual(g);

    double prev = -1;
    for (int refine = 0; refine <= 2; ++refine) {
        GridSpec spec;
        spec.grid_per_axis = 32;
        spec.refine_levels = refine;
        double omega = oscillation_sampled(m, dual, spec).omega_lower;
        CHECK(omega >= prev);
        prev = omega;
    }

    prev = -1;
    for (int grid : {16, 32, 64, 128}) {
        GridSpec spec;
        spec.grid_per_axis = grid;
        spec.refine_levels = 0;
        double omega = oscillation_sampled(m, dual, spec).omega_lower;
        CHECK(omega >= prev);
        prev = omega;
    }
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    FGAbelianGroup g = FGAbelianGroup::make(1, {3});
    Rng rng(64);
    LatticeAlgebraMatrix m = random_selfadjoint_matrix(g, 3, rng);
    DualDescription dual(g);
    GridSpec spec;
    spec.grid_per_axis = 128;

    OscillationEstimate serial = oscillation_sampled(m, dual, spec, Exec::Serial);
    OscillationEstimate parallel = oscillation_sampled(m, dual, spec, Exec::Parallel);
    CHECK(serial.omega_lower == parallel.omega_lower);
    REQUIRE(serial.components.size() == parallel.components.size());
    for (size_t i = 0; i < serial.components.size(); ++i) {
        CHECK(serial.components[i].max_norm == parallel.components[i].max_norm);
        CHECK(serial.components[i].min_norm == parallel.components[i].min_norm);
    }

#ifdef _OPENMP
    // the reduction is order-independent, so the thread count must not matter
    int saved = omp_get_max_threads();
    for (int threads : {2, 3, 5}) {
        omp_set_num_threads(threads);
        OscillationEstimate again = oscillation_sampled(m, dual, spec, Exec::Parallel);
        CHECK(again.omega_lower == serial.omega_lower);
        for (size_t i = 0; i < serial.components.size(); ++i) {
            CHECK(again.components[i].max_norm == serial.components[i].max_norm);
            CHECK(again.components[i].min_norm == serial.components[i].min_norm);
        }
    }
    omp_set_num_threads(saved);
#endif
}

TEST_CASE("sampled norms never exceed the coefficient bound") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        FGAbelianGroup g = FGAbelianGroup::make(1, {2});
        LatticeAlgebraMatrix m = random_selfadjoint_matrix(g, 2, rng);
        DualDescription dual(g);
        GridSpec spec;
        spec.grid_per_axis = 48;
        OscillationEstimate est = oscillation_sampled(m, dual, spec);
        CHECK(est.global_max_norm <= est.l1_bound + 1e-9);
        CHECK(est.omega_lower <= est.omega_upper + 1e-12);
    }
}

TEST_CASE("non-self-adjoint elements need the singular-value opt-in") {
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    AbelianOps ops(z);
    LatticeAlgebraMatrix m(ops, 1);
    m.at(0, 0) = LatticeAlgebraElement::monomial(ops, z.element({1}, {}), kOne);
    DualDescription dual(z);
    CHECK_THROWS_AS(oscillation_sampled(m, dual, GridSpec{}), UnsupportedError);
    OscillationEstimate est = oscillation_sampled(m, dual, GridSpec{}, Exec::Parallel, nullptr, true);
    CHECK_FALSE(est.hermitian_path);
    // a single unitary has constant fiber norm 1
    CHECK(est.omega_lower == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(est.global_max_norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("beta-diagonal recognizer") {
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    AbelianOps ops(z);
    AbelianElement a = z.element({1}, {});

    auto plain = beta_diagonal_matrix(z, {a, z.element({3}, {})});
    auto form = recognize_beta_diagonal(plain);
    REQUIRE(form.has_value());
    CHECK(form->sign == 1);
    CHECK(form->shift == Rational(0));
    CHECK(form->entries.size() == 2);

    // (a + a^{-1}) / 2 = 1 - beta(a)
    LatticeAlgebraMatrix re(ops, 1);
    re.at(0, 0) = real_part_of(ops, a);
    auto reform = recognize_beta_diagonal(re);
    REQUIRE(reform.has_value());
    CHECK(reform->sign == -1);
    CHECK(reform->shift == Rational(1));
    CHECK(reform->entries[0] == a);

    // wrong coefficient: not in the family
    LatticeAlgebraMatrix other(ops, 1);
    other.at(0, 0) = LatticeAlgebraElement::monomial(ops, a, ComplexRational{Rational(1, 3)}) +
                     LatticeAlgebraElement::monomial(ops, z.inverse(a), ComplexRational{Rational(1, 3)});
    CHECK_FALSE(recognize_beta_diagonal(other).has_value());

    // off-diagonal support: not in the family
    LatticeAlgebraMatrix off(ops, 2);
    off.at(0, 1) = LatticeAlgebraElement::one(ops);
    off.at(1, 0) = LatticeAlgebraElement::one(ops);
    CHECK_FALSE(recognize_beta_diagonal(off).has_value());
}

TEST_CASE("recognizer round-trips random affine beta diagonals") {
    Rng rng(606);
    FGAbelianGroup g = FGAbelianGroup::make(2, {6});
    AbelianOps ops(g);
    for (int t = 0; t < 100; ++t) {
        int k = 1 + static_cast<int>(rng.range(0, 2));
        std::vector<AbelianElement> entries;
        for (int i = 0; i < k; ++i)
            entries.push_back(g.element({rng.range(-2, 2), rng.range(-2, 2)},
                                        {rng.range(0, 5)}));
        Rational shift(rng.range(-4, 4), rng.range(1, 3));
        int sign = rng.range(0, 1) ? 1 : -1;
        LatticeAlgebraMatrix m = beta_diagonal_matrix(g, entries);
        if (sign < 0) {
            LatticeAlgebraMatrix neg(ops, k);
            m = neg - m;
        }
        m = m.shifted(ComplexRational{-shift});  // m + shift * 1

        auto form = recognize_beta_diagonal(m);
        REQUIRE(form.has_value());
        CHECK(form->shift == shift);
        CHECK(form->entries.size() == static_cast<size_t>(k));
        // identity entries do not constrain the sign
        bool any_nonidentity = false;
        for (const AbelianElement& d : entries) any_nonidentity |= !(d == g.identity());
        if (any_nonidentity) CHECK(form->sign == sign);
        for (size_t i = 0; i < entries.size(); ++i) {
            const AbelianElement& d = form->entries[i];
            CHECK((d == entries[i] || d == g.inverse(entries[i])));
        }

        // a perturbed off-diagonal knocks it out of the family
        if (k >= 2) {
            LatticeAlgebraMatrix p = m;
            p.at(0, 1) = LatticeAlgebraElement::one(ops);
            CHECK_FALSE(recognize_beta_diagonal(p).has_value());
        }
    }
}

TEST_CASE("distance bracket on real parts of non-torsion unitaries") {
    for (const FGAbelianGroup& g : {FGAbelianGroup::free_lattice(1),
                                    FGAbelianGroup::make(2, {4}),
                                    FGAbelianGroup::make(3, {2, 6})}) {
        AbelianOps ops(g);
        std::vector<long long> free(g.free_rank(), 0);
        free[0] = 1;
        AbelianElement a = g.element(free, std::vector<long long>(g.torsion_factors().size(), 0));
        LatticeAlgebraMatrix m(ops, 1);
        m.at(0, 0) = real_part_of(ops, a);
        DistanceBracket b = finite_spectrum_distance_bracket(m, DualDescription(g), GridSpec{});
        CHECK(b.exact);
        CHECK(std::abs(b.lower - 1.0) < 1e-9);
        CHECK(std::abs(b.upper - 1.0) < 1e-9);
    }
}

TEST_CASE("distance bracket edge cases") {
    FGAbelianGroup g = FGAbelianGroup::make(1, {4});
    DualDescription dual(g);

    // all-torsion diagonal: oscillation 0, so the lower bound is 0
    LatticeAlgebraMatrix tm = beta_diagonal_matrix(g, {g.element({0}, {1})});
    DistanceBracket tb = finite_spectrum_distance_bracket(tm, dual, GridSpec{});
    CHECK(tb.lower == 0.0);
    CHECK(tb.exact);

    // diag(beta(a), beta(d)) with a non-torsion: lower bound 1
    LatticeAlgebraMatrix dm = beta_diagonal_matrix(g, {g.element({1}, {0}), g.element({0}, {2})});
    DistanceBracket db = finite_spectrum_distance_bracket(dm, dual, GridSpec{});
    CHECK(db.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(db.exact);

    // sampled route: a self-adjoint element outside the closed-form family
    AbelianOps ops(g);
    LatticeAlgebraMatrix sm(ops, 1);
    sm.at(0, 0) = real_part_of(ops, g.element({1}, {0})) +
                  real_part_of(ops, g.element({2}, {0})).scaled(ComplexRational{Rational(1, 2)});
    REQUIRE_FALSE(recognize_beta_diagonal(sm).has_value());
    GridSpec spec;
    spec.grid_per_axis = 128;
    DistanceBracket sb = finite_spectrum_distance_bracket(sm, dual, spec);
    CHECK_FALSE(sb.exact);
    CHECK(sb.lower <= sb.upper + 1e-12);
    CHECK(sb.lower > 0.0);

    // non-self-adjoint input is rejected
    LatticeAlgebraMatrix nsa(ops, 1);
    nsa.at(0, 0) = LatticeAlgebraElement::monomial(ops, g.element({1}, {0}), kOne);
    CHECK_THROWS_AS(finite_spectrum_distance_bracket(nsa, dual, GridSpec{}), UnsupportedError);
}

TEST_CASE("lipschitz audit") {
    FGAbelianGroup g = FGAbelianGroup::free_lattice(2);
    AbelianOps ops(g);
    DualDescription dual(g);
    GridSpec spec;
    spec.grid_per_axis = 24;

    LatticeAlgebraMatrix m = beta_diagonal_matrix(g, {g.element({1, 0}, {}), g.element({0, 1}, {})});

    // p = 0
    LatticeAlgebraMatrix zero(ops, 2);
    LipschitzReport r0 = lipschitz_audit(m, zero, dual, spec);
    CHECK(r0.ok);
    CHECK(r0.p_norm == 0.0);
    CHECK(r0.omega_m == r0.omega_mp);

    // scalar shift: fiber-norm differences move by at most 2 epsilon
    LatticeAlgebraMatrix eps(ops, 2);
    for (int i = 0; i < 2; ++i)
        eps.at(i, i) = LatticeAlgebraElement::monomial(ops, g.identity(),
                                                       ComplexRational{Rational(1, 100)});
    LipschitzReport r1 = lipschitz_audit(m, eps, dual, spec);
    CHECK(r1.ok);
    CHECK(std::abs(r1.p_norm - 0.01) < 1e-12);

    Rng rng(500);
    for (int t = 0; t < 50; ++t) {
        int k = 1 + static_cast<int>(rng.range(0, 2));
        LatticeAlgebraMatrix mm = random_selfadjoint_matrix(g, k, rng);
        LatticeAlgebraMatrix pp = random_selfadjoint_matrix(g, k, rng);
        LipschitzReport rep = lipschitz_audit(mm, pp, dual, spec);
        CHECK(rep.ok);
    }
}

TEST_CASE("finite-spectrum fields have vanishing sampled oscillation") {
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    DualDescription dual(z);
    GridSpec spec;
    spec.grid_per_axis = 64;

    // constant unitary
    ConjugatedDiagonalField constant = make_rotation_field(random_unitary(3, 7), {1.0, -1.0, 0.5}, 0);
    CHECK(finite_spectrum_zero_oscillation_audit(constant, dual, spec).ok);

    // rotation by theta with diag(1, -1)
    ConjugatedDiagonalField rot = make_rotation_field(CMatrix::identity(2), {1.0, -1.0}, 1);
    ZeroOscillationReport rep = finite_spectrum_zero_oscillation_audit(rot, dual, spec);
    CHECK(rep.ok);
    CHECK(rep.omega_sampled <= 1e-6);

    // D = 0
    ConjugatedDiagonalField zero = make_rotation_field(random_unitary(2, 9), {0.0, 0.0}, 3);
    ZeroOscillationReport zrep = finite_spectrum_zero_oscillation_audit(zero, dual, spec);
    CHECK(zrep.ok);
    CHECK(zrep.omega_sampled == 0.0);

    Rng rng(808);
    for (int t = 0; t < 10; ++t) {
        int k = 2 + static_cast<int>(rng.range(0, 2));
        std::vector<double> diag(k);
        for (auto& d : diag) d = rng.unit() * 4 - 2;
        ConjugatedDiagonalField f =
            make_rotation_field(random_unitary(k, rng.next()), diag, 1 + static_cast<int>(rng.range(0, 3)));
        CHECK(finite_spectrum_zero_oscillation_audit(f, dual, spec).ok);
    }
}

TEST_CASE("component cap") {
    FGAbelianGroup g = FGAbelianGroup::make(1, std::vector<long long>(13, 2));
    DualDescription dual(g);
    CHECK(dual.component_count() == 8192);
    AbelianOps ops(g);
    LatticeAlgebraMatrix m = beta_diagonal_matrix(
        g, {g.element({1}, std::vector<long long>(13, 0))});
    GridSpec spec;
    spec.grid_per_axis = 8;
    CHECK_THROWS_AS(oscillation_sampled(m, dual, spec), UnsupportedError);

    spec.sample_components = true;
    spec.component_cap = 64;
    OscillationEstimate est = oscillation_sampled(m, dual, spec);
    CHECK(est.component_sampled);
    CHECK(est.components.size() == 64);
    CHECK(est.omega_lower > 1.9);  // the free coordinate still sweeps a full circle
}

TEST_CASE("degenerate grid specs are rejected") {
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    LatticeAlgebraMatrix m = beta_diagonal_matrix(z, {z.element({1}, {})});
    DualDescription dual(z);
    GridSpec bad;
    bad.grid_per_axis = 0;
    CHECK_THROWS_AS(oscillation_sampled(m, dual, bad), InputError);
    bad = GridSpec{};
    bad.zoom = 1;
    CHECK_THROWS_AS(oscillation_sampled(m, dual, bad), InputError);
    bad = GridSpec{};
    bad.component_cap = 0;
    CHECK_THROWS_AS(oscillation_sampled(m, dual, bad), InputError);
}

TEST_CASE("surface dump") {
    FGAbelianGroup g = FGAbelianGroup::make(1, {2});
    LatticeAlgebraMatrix m = beta_diagonal_matrix(g, {g.element({1}, {0})});
    DualDescription dual(g);
    GridSpec spec;
    spec.grid_per_axis = 16;

    Surface s1, s2;
    oscillation_sampled(m, dual, spec, Exec::Parallel, &s1);
    oscillation_sampled(m, dual, spec, Exec::Serial, &s2);
    CHECK(s1.size() == 32);  // 2 components x 16 points

    std::ostringstream csv1, csv2;
    write_surface_csv(csv1, s1, dual.torus_dim());
    write_surface_csv(csv2, s2, dual.torus_dim());
    CHECK(csv1.str() == csv2.str());
    CHECK(csv1.str().substr(0, csv1.str().find('\n')) == "component,theta_1,norm");
}
