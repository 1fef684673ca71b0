// Acceptance suite: one pass/fail line per criterion, all tolerances pinned
// here. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "rrzero/io.hpp"

using namespace rrzero;
using namespace rrzero::testing;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<void(std::vector<std::string>&)> run;
};

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::vector<const char*> argv{"rrzero"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    return code;
}

// --------------------------------------------------------------- criterion 1
void c1_example_oscillation(std::vector<std::string>& failures) {
    GridSpec spec;
    spec.grid_per_axis = 256;
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    DualDescription dual(z);
    for (long long lambda : {1LL, 2LL, 5LL}) {
        auto t0 = std::chrono::steady_clock::now();
        OscillationEstimate exact =
            oscillation_exact_beta_diagonal({z.element({lambda}, {})}, dual);
        LatticeAlgebraMatrix m = beta_diagonal_matrix(z, {z.element({lambda}, {})});
        OscillationEstimate sampled = oscillation_sampled(m, dual, spec);
        double elapsed = seconds_since(t0);
        expect(failures, exact.omega_lower == 2.0,
               "exact omega != 2 for exponent " + std::to_string(lambda));
        expect(failures, sampled.omega_lower >= 2.0 - 1e-3 && sampled.omega_lower <= 2.0,
               "sampled omega outside [2-1e-3, 2] for exponent " + std::to_string(lambda));
        expect(failures, elapsed < 1.0,
               "runtime " + std::to_string(elapsed) + "s >= 1s for exponent " +
                   std::to_string(lambda));
    }
    // all three exponents in one diagonal
    std::vector<AbelianElement> entries{z.element({1}, {}), z.element({2}, {}),
                                        z.element({5}, {})};
    auto t0 = std::chrono::steady_clock::now();
    OscillationEstimate exact = oscillation_exact_beta_diagonal(entries, dual);
    OscillationEstimate sampled =
        oscillation_sampled(beta_diagonal_matrix(z, entries), dual, spec);
    expect(failures, exact.omega_lower == 2.0, "exact omega != 2 for the 3x3 diagonal");
    expect(failures, sampled.omega_lower >= 2.0 - 1e-3 && sampled.omega_lower <= 2.0,
           "sampled omega outside [2-1e-3, 2] for the 3x3 diagonal");
    expect(failures, seconds_since(t0) < 1.0, "3x3 runtime >= 1s");
}

// --------------------------------------------------------------- criterion 2
void c2_mixed_dual(std::vector<std::string>& failures) {
    FGAbelianGroup g = FGAbelianGroup::make(2, {4});
    DualDescription dual(g);
    std::vector<AbelianElement> entries{g.element({1, 0}, {0}), g.element({2, 3}, {1})};

    OscillationEstimate exact = oscillation_exact_beta_diagonal(entries, dual);
    expect(failures, exact.omega_lower == 2.0, "exact omega != 2 over Z^2 + Z/4");

    GridSpec spec;
    spec.grid_per_axis = 64;
    OscillationEstimate sampled =
        oscillation_sampled(beta_diagonal_matrix(g, entries), dual, spec);
    expect(failures, std::abs(sampled.omega_lower - 2.0) <= 1e-3,
           "sampled omega " + std::to_string(sampled.omega_lower) + " not within 1e-3 of 2");

    std::vector<AbelianElement> torsion_only{g.element({0, 0}, {1}), g.element({0, 0}, {3})};
    OscillationEstimate zero = oscillation_exact_beta_diagonal(torsion_only, dual);
    expect(failures, zero.omega_lower == 0.0, "all-torsion variant has nonzero omega");
    OscillationEstimate zero_sampled =
        oscillation_sampled(beta_diagonal_matrix(g, torsion_only), dual, spec);
    expect(failures, zero_sampled.omega_lower <= 1e-12,
           "all-torsion sampled omega is not zero");
}

// --------------------------------------------------------------- criterion 3
void c3_dihedral_pipeline(std::vector<std::string>& failures) {
    // structural equality of the embedded beta element
    SemidirectProductGroup dinf = infinite_dihedral();
    LiftTable lt = build_lift_table(dinf);
    SemidirectOps ops(dinf);
    AbelianOps lattice(dinf.base_lattice());
    AbelianElement a{{1}, {}};
    LatticeAlgebraMatrix phi = phi_embed(beta(ops, dinf.lattice_element({1})), lt);
    LatticeAlgebraMatrix expected = LatticeAlgebraMatrix::diagonal(
        lattice,
        {beta(lattice, a), beta(lattice, dinf.base_lattice().inverse(a))});
    expect(failures, phi == expected, "Phi(beta(a)) != diag(beta(a), beta(a^-1))");

    auto t0 = std::chrono::steady_clock::now();
    AnalyzeConfig config;
    config.grid.grid_per_axis = 64;
    Verdict v = rr0_obstruction_analyze(*dinf_description(), config);
    double elapsed = seconds_since(t0);
    expect(failures, v.kind == VerdictKind::NotRealRankZero, "verdict is not NotRealRankZero");
    expect(failures, v.omega && v.omega->exact == 2.0, "omega evidence != 2");
    expect(failures, elapsed < 1.0, "analyze runtime " + std::to_string(elapsed) + "s >= 1s");

    // and through the CLI
    std::string out;
    int code = cli({"analyze", samples_dir() + "/dinf.grp", "--grid", "64"}, &out);
    expect(failures, code == 0, "cli analyze exit code != 0");
    if (code == 0) {
        json report = json::parse(out);
        expect(failures, report["results"]["verdict"] == "NotRealRankZero",
               "cli verdict is not NotRealRankZero");
    }
}

// --------------------------------------------------------------- criterion 4
void c4_trace_identity(std::vector<std::string>& failures) {
    for (const SemidirectProductGroup& g :
         {infinite_dihedral(), lattice_semidirect_minus_identity(2)}) {
        LiftTable lt = build_lift_table(g);
        AuditReport rep = verify_trace_identity(lt, 100, 424242);
        expect(failures, rep.trials == 100, "trace audit ran fewer than 100 trials");
        expect(failures, rep.ok(),
               "trace identity failures: " + std::to_string(rep.failures.size()));
    }
}

// --------------------------------------------------------------- criterion 5
void c5_homomorphism(std::vector<std::string>& failures) {
    for (const SemidirectProductGroup& g :
         {infinite_dihedral(), lattice_semidirect_minus_identity(2)}) {
        LiftTable lt = build_lift_table(g);
        AuditReport rep = verify_homomorphism(lt, 100, 424242);
        expect(failures, rep.ok(),
               "homomorphism failures: " + std::to_string(rep.failures.size()));
    }
}

// --------------------------------------------------------------- criterion 6
void c6_lipschitz(std::vector<std::string>& failures) {
    FGAbelianGroup g = FGAbelianGroup::free_lattice(2);
    DualDescription dual(g);
    GridSpec spec;
    spec.grid_per_axis = 16;
    Rng rng(20240606);
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
        int k = 1 + static_cast<int>(rng.range(0, 2));
        AbelianOps ops(g);
        LatticeAlgebraMatrix m(ops, k), p(ops, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                m.at(i, j) = random_lattice_algebra_element(g, rng, 2);
                p.at(i, j) = random_lattice_algebra_element(g, rng, 2);
            }
        m = m + m.adjoint();
        p = p + p.adjoint();
        LipschitzReport rep = lipschitz_audit(m, p, dual, spec);
        if (!rep.ok) ++violations;
    }
    expect(failures, violations == 0,
           std::to_string(violations) + " of 200 pairs violated the perturbation bound");
}

// --------------------------------------------------------------- criterion 7
void c7_finite_spectrum_fields(std::vector<std::string>& failures) {
    FGAbelianGroup z = FGAbelianGroup::free_lattice(1);
    DualDescription dual(z);
    GridSpec spec;
    spec.grid_per_axis = 64;
    Rng rng(778899);
    int violations = 0;
    for (int t = 0; t < 50; ++t) {
        int k = 1 + static_cast<int>(rng.range(0, 3));
        std::vector<double> diag(k);
        for (auto& d : diag) d = rng.unit() * 6 - 3;
        ConjugatedDiagonalField field = make_rotation_field(
            random_unitary(k, rng.next()), diag, static_cast<int>(rng.range(0, 4)));
        ZeroOscillationReport rep =
            finite_spectrum_zero_oscillation_audit(field, dual, spec, Exec::Parallel, 1e-6);
        if (!rep.ok) ++violations;
    }
    expect(failures, violations == 0,
           std::to_string(violations) + " of 50 fields exceeded sampled omega 1e-6");
}

// --------------------------------------------------------------- criterion 8
void c8_distance_bracket(std::vector<std::string>& failures) {
    struct Case {
        FGAbelianGroup group;
        std::vector<long long> free;
        std::vector<long long> torsion;
    };
    std::vector<Case> cases{
        {FGAbelianGroup::free_lattice(1), {1}, {}},
        {FGAbelianGroup::free_lattice(1), {-4}, {}},
        {FGAbelianGroup::free_lattice(2), {2, 3}, {}},
        {FGAbelianGroup::make(2, {4}), {1, 0}, {2}},
        {FGAbelianGroup::make(3, {2, 6}), {0, 1, 5}, {1, 3}},
    };
    for (const Case& c : cases) {
        AbelianOps ops(c.group);
        AbelianElement a = c.group.element(c.free, c.torsion);
        if (c.group.is_torsion(a)) {
            failures.push_back("test bug: witness is torsion");
            continue;
        }
        LatticeAlgebraMatrix m(ops, 1);
        m.at(0, 0) = real_part_of(ops, a);
        DistanceBracket b =
            finite_spectrum_distance_bracket(m, DualDescription(c.group), GridSpec{});
        expect(failures, std::abs(b.lower - 1.0) <= 1e-9 && std::abs(b.upper - 1.0) <= 1e-9,
               "bracket [" + std::to_string(b.lower) + ", " + std::to_string(b.upper) +
                   "] != [1,1] over " + c.group.str());
    }
}

// --------------------------------------------------------------- criterion 9
void c9_hirsch(std::vector<std::string>& failures) {
    for (int n = 0; n <= 10; ++n)
        expect(failures, hirsch_length(*abelian("Z^n", n)) == HirschLength::finite(n),
               "h(Z^" + std::to_string(n) + ") != " + std::to_string(n));
    for (int n = 1; n <= 4; ++n) {
        UnionNode q;
        for (int s = 0; s < 3; ++s) q.stages.push_back(abelian("Z^n", n));
        expect(failures,
               hirsch_length(*make_description("Q^n", std::move(q))) == HirschLength::finite(n),
               "h(Q^" + std::to_string(n) + ") != " + std::to_string(n));
    }
    expect(failures, hirsch_length(*finite_cyclic("Z/12", 12)) == HirschLength::finite(0),
           "h(finite) != 0");
    expect(failures, hirsch_length(*z_wr_z_description()) == HirschLength::infinite(),
           "h(Z wr Z) is not infinite");

    Rng rng(5150);
    int bad = 0;
    std::function<DescPtr(int, long long&)> random_tree = [&](int depth,
                                                              long long& expected) -> DescPtr {
        if (depth == 0 || rng.range(0, 2) == 0) {
            int r = static_cast<int>(rng.range(0, 3));
            expected += r;
            return abelian("leaf", r);
        }
        ExtensionNode e;
        e.normal = random_tree(depth - 1, expected);
        e.quotient = random_tree(depth - 1, expected);
        return make_description("ext", std::move(e));
    };
    for (int t = 0; t < 100; ++t) {
        long long expected_left = 0, expected_right = 0;
        DescPtr left = random_tree(3, expected_left);
        DescPtr right = random_tree(3, expected_right);
        ExtensionNode e;
        e.normal = left;
        e.quotient = right;
        DescPtr tree = make_description("root", std::move(e));
        HirschLength h = hirsch_length(*tree);
        if (!(h == HirschLength::finite(expected_left + expected_right) &&
              h == hirsch_length(*left) + hirsch_length(*right)))
            ++bad;
    }
    expect(failures, bad == 0, std::to_string(bad) + " of 100 extension trees broke additivity");
}

// -------------------------------------------------------------- criterion 10
void c10_series(std::vector<std::string>& failures) {
    Rng rng(31337);
    int bad = 0;
    for (int t = 0; t < 500; ++t) {
        NormalSeries s;
        int len = static_cast<int>(rng.range(1, 14));
        for (int i = 0; i < len; ++i)
            s.labels.push_back(rng.range(0, 1) ? QuotientLabel::LocallyFinite
                                               : QuotientLabel::Abelian);
        NormalSeries n = normalize_normal_series(s);

        bool adjacent = false;
        for (size_t i = 0; i + 1 < n.labels.size(); ++i)
            adjacent |= (n.labels[i] == QuotientLabel::LocallyFinite &&
                         n.labels[i + 1] == QuotientLabel::LocallyFinite);

        NormalSeries brute = s;
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i + 1 < brute.labels.size(); ++i)
                if (brute.labels[i] == QuotientLabel::LocallyFinite &&
                    brute.labels[i + 1] == QuotientLabel::LocallyFinite) {
                    brute.labels.erase(brute.labels.begin() + static_cast<long>(i));
                    changed = true;
                    break;
                }
        }
        if (adjacent || !(normalize_normal_series(n) == n) || !(n == brute)) ++bad;
    }
    expect(failures, bad == 0, std::to_string(bad) + " of 500 series failed normalization checks");
}

// -------------------------------------------------------------- criterion 11
void c11_rule_engine(std::vector<std::string>& failures) {
    auto has_rule = [](const Verdict& v, const std::string& rule) {
        for (const RuleStep& s : v.trace)
            if (s.rule_id == rule) return true;
        return false;
    };
    AnalyzeConfig config;
    config.grid.grid_per_axis = 64;

    Verdict q = rr0_obstruction_analyze(*rationals_description(), config);
    expect(failures, q.kind == VerdictKind::StronglyNotFS, "Q is not StronglyNotFS");
    expect(failures, has_rule(q, "R1") || has_rule(q, "R3"), "Q trace lacks R1/R3");

    Verdict lamp = rr0_obstruction_analyze(*lamplighter_description(), config);
    expect(failures, lamp.kind == VerdictKind::StronglyNotFS, "lamplighter is not StronglyNotFS");
    expect(failures, has_rule(lamp, "R2"), "lamplighter trace lacks R2");

    Verdict tri = rr0_obstruction_analyze(*triangular_union_description(), config);
    expect(failures, tri.kind == VerdictKind::StronglyNotFS,
           "unitriangular union is not StronglyNotFS");
    expect(failures, has_rule(tri, "R4") && has_rule(tri, "R3"),
           "unitriangular trace lacks R4+R3");

    Verdict sum = rr0_obstruction_analyze(*sum_z2_description(), config);
    expect(failures, sum.kind == VerdictKind::LocallyFiniteAF,
           "sum of Z/2 is not LocallyFinite-AF");

    for (const DescPtr& d : {rationals_description(), lamplighter_description(),
                             triangular_union_description(), sum_z2_description()}) {
        Verdict a = rr0_obstruction_analyze(*d, config);
        Verdict b = rr0_obstruction_analyze(*d, config);
        expect(failures, certificate_to_json(a).dump() == certificate_to_json(b).dump(),
               "trace replay differs for " + d->display_label());
    }
}

// -------------------------------------------------------------- criterion 12
void c12_determinism(std::vector<std::string>& failures) {
    const std::string dir = samples_dir();
    auto full_suite = [&]() {
        std::string all;
        std::string out;
        std::vector<std::vector<std::string>> runs{
            {"analyze", dir + "/dinf.grp", "--grid", "64", "--seed", "31415"},
            {"analyze", dir + "/lamplighter.grp", "--seed", "31415"},
            {"analyze", dir + "/q_union.grp", "--seed", "31415"},
            {"analyze", dir + "/triangular_union.grp", "--seed", "31415"},
            {"analyze", dir + "/sum_z2.grp", "--seed", "31415"},
            {"hirsch", dir + "/z3.grp"},
            {"oscillation", dir + "/ex_torus.grp", "--grid", "128", "--seed", "31415"},
            {"oscillation", dir + "/z2z4_beta.grp", "--grid", "32", "--seed", "31415"},
            {"embed-audit", dir + "/dinf.grp", "--trials", "100", "--seed", "31415"},
            {"embed-audit", dir + "/z2_minus.grp", "--trials", "100", "--seed", "31415"},
            {"series-normalize", dir + "/series.grp"},
        };
        for (const auto& args : runs) {
            int code = cli(args, &out);
            if (code != 0) {
                failures.push_back("suite command failed: " + args[0] + " " + args[1]);
                return std::string();
            }
            all += out;
        }
        return all;
    };
    std::string first = full_suite();
    std::string second = full_suite();
    expect(failures, !first.empty() && first == second,
           "reports differ between two runs with the same seed");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "torus unitary diagonals oscillate by 2 (exact and sampled)", c1_example_oscillation},
        {2, "beta diagonals over Z^2 + Z/4 (exact, sampled, torsion-only)", c2_mixed_dual},
        {3, "infinite dihedral pipeline: embedding, omega, verdict", c3_dihedral_pipeline},
        {4, "trace identity holds exactly on 100 seeded samples x 2 groups", c4_trace_identity},
        {5, "embedding is multiplicative and star-preserving on 100 seeded pairs", c5_homomorphism},
        {6, "oscillation is 2-Lipschitz on a shared character set (200 pairs)", c6_lipschitz},
        {7, "finite-spectrum fields: sampled oscillation below 1e-6 (50 fields)",
         c7_finite_spectrum_fields},
        {8, "distance bracket [1,1] for real parts of non-torsion elements", c8_distance_bracket},
        {9, "Hirsch calculus: atoms, unions, infinity, 100 random extensions", c9_hirsch},
        {10, "normal-series normalization on 500 seeded sequences", c10_series},
        {11, "rule engine verdicts and deterministic replays", c11_rule_engine},
        {12, "byte-identical reports across two seeded runs of the suite", c12_determinism},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        std::vector<std::string> failures;
        try {
            c.run(failures);
        } catch (const std::exception& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        if (failures.empty()) {
            std::cout << "PASS criterion " << c.number << ": " << c.title << "\n";
        } else {
            ++failed;
            std::cout << "FAIL criterion " << c.number << ": " << c.title << "\n";
            for (const std::string& f : failures) std::cout << "     - " << f << "\n";
        }
    }
    if (failed) {
        std::cout << failed << " of " << criteria.size() << " criteria failed\n";
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed\n";
    return 0;
}
