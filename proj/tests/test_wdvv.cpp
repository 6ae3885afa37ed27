#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ellitri/special.hpp"
#include "ellitri/trilog.hpp"
#include "ellitri/wdvv.hpp"

using namespace ellitri;

namespace {
const HalfPlanePoint kTau(cplx(0.11, 1.13));
}

TEST_CASE("well-distribution") {
    auto wd = check_well_distributed(builtin_system("a2-roots-unit-weights"));
    CHECK(wd.is_wd);
    CHECK(std::abs(wd.h_vee - 1.5) < 1e-12);

    // single vector in N = 2 is rank deficient
    VeeSystem single;
    single.dim = 2;
    single.vectors = {{1.0, 0.0}};
    single.weights = {1.0};
    CHECK_FALSE(check_well_distributed(single).is_wd);

    // doubling all weights doubles h_vee
    auto sys = builtin_system("a2-roots-unit-weights");
    for (auto& w : sys.weights) w *= 2.0;
    CHECK(std::abs(check_well_distributed(sys).h_vee - 3.0) < 1e-12);

    CHECK(std::abs(check_well_distributed(a1_dual_system()).h_vee) < 1e-14);
    CHECK(std::abs(check_well_distributed(builtin_system("a1-weight3")).h_vee - 1.5) < 1e-14);
}

TEST_CASE("quartic condition") {
    // A2 unit weights fail the quartic tensor comparison
    auto q = check_quartic(builtin_system("a2-roots-unit-weights"));
    CHECK_FALSE(q.ok);
    CHECK(q.max_dev_tensor > 0.1);

    // zero weights: RHS is nonzero, so the check fails
    VeeSystem zero = builtin_system("a2-roots-unit-weights");
    for (auto& w : zero.weights) w = 0.0;
    CHECK_FALSE(check_quartic(zero).ok);

    // a configuration passing the tensor check passes the point checks too:
    // {e1, e2, (e1+e2)/sqrt2, (e1-e2)/sqrt2} with weight 2 throughout gives
    // 3(z1^4 + z2^4) + 6 z1^2 z2^2 = 3 (z,z)^2 exactly
    VeeSystem pass;
    pass.dim = 2;
    const double s = std::sqrt(0.5);
    pass.vectors = {{1.0, 0.0}, {0.0, 1.0}, {s, s}, {s, -s}};
    pass.weights = {2.0, 2.0, 2.0, 2.0};
    auto qp = check_quartic(pass);
    CHECK(qp.ok);
    CHECK(qp.max_dev_points < 1e-10);
}

TEST_CASE("plane conditions") {
    auto full = builtin_system("a2-full-roots-unit-weights");
    for (int ai = 0; ai < 6; ++ai) {
        auto rep = check_plane_conditions(full, ai, 4);
        CHECK_FALSE(rep.reducible);
        for (const auto& row : rep.rows) {
            CHECK(row.s1 < 1e-10);
            CHECK(row.s2 < 1e-10);
            CHECK(row.s3 < 1e-10);
        }
    }
    // n = 0 first sum against an independent direct sum (full root set)
    cplx direct = 0.0;
    for (const auto& b : full.vectors) direct += full.pair(full.vectors[0], b);
    auto rep0 = check_plane_conditions(full, 0, 0);
    CHECK(std::abs(std::abs(direct) - rep0.rows[0].s1) < 1e-12);

    CHECK(check_plane_conditions(builtin_system("a1xa1"), 0, 2).reducible);
    CHECK_THROWS_AS(check_plane_conditions(a1_dual_system(), 0, 2), domain_error);
}

TEST_CASE("weight lattice") {
    VeeSystem dbl;
    dbl.dim = 1;
    dbl.vectors = {{2.0}, {-2.0}};
    dbl.weights = {1.0, 1.0};
    CHECK(check_weight_lattice(dbl, {{0.5}}));
    CHECK_FALSE(check_weight_lattice(dbl, {{0.3}}));
    CHECK(check_weight_lattice(dbl, {}));  // vacuous
}

TEST_CASE("prepotential third derivatives") {
    auto a2 = builtin_system("a2-roots-unit-weights");
    PrepotentialPoint pt{cplx(0.4, 0.2), {cplx(0.23, 0.05), cplx(-0.31, 0.04)}, kTau};
    const int u = 0, z1 = 1, z2 = 2, tix = 3;

    CHECK(prepotential_third_derivs(a2, pt, u, u, tix) == cplx(1.0));
    CHECK(prepotential_third_derivs(a2, pt, u, z1, z1) == cplx(-1.0));
    CHECK(prepotential_third_derivs(a2, pt, u, z1, z2) == cplx(0.0));
    CHECK(prepotential_third_derivs(a2, pt, u, u, u) == cplx(0.0));

    // symmetry in the index triple is exact
    CHECK(prepotential_third_derivs(a2, pt, z1, z2, tix) ==
          prepotential_third_derivs(a2, pt, tix, z1, z2));
    CHECK(prepotential_third_derivs(a2, pt, z1, z1, z2) ==
          prepotential_third_derivs(a2, pt, z2, z1, z1));

    // (tau,tau,tau) = sum h f03 + 10 h_vee^2 E4/360 for the corrected system
    cplx sum_f03 = 0.0;
    for (std::size_t v = 0; v < a2.vectors.size(); ++v) {
        cplx t = pt.zvec[0] * a2.vectors[v][0] + pt.zvec[1] * a2.vectors[v][1];
        sum_f03 += f_third_derivs(t, kTau).f03;
    }
    cplx corr = 10.0 * cplx(1.5) * cplx(1.5) / 3.0 * elliptic_li3_one_tau3(kTau);
    CHECK(std::abs(prepotential_third_derivs(a2, pt, tix, tix, tix) - sum_f03 - corr) < 1e-13);
    CHECK(std::abs(corr - 10.0 * 2.25 * eisenstein(4, kTau) / 360.0) < 1e-12);

    // every non-(tau,tau,tau) entry is independent of the correction term
    auto no_corr = a1_dual_system();  // h_vee = 0, no correction path
    PrepotentialPoint p1{0.0, {cplx(0.21, 0.06)}, kTau};
    cplx t = 2.0 * p1.zvec[0];  // (z, alpha) under form [[2]], alpha = 1
    cplx expect_zzz = 8.0 * f_third_derivs(t, kTau).f30 -
                      4.0 * 1.0 * f_third_derivs(p1.zvec[0], kTau).f30 * 1.0;
    CHECK(std::abs(prepotential_third_derivs(no_corr, p1, 1, 1, 1) - expect_zzz) < 1e-13);
}

TEST_CASE("unity axiom: F_u is the identity") {
    // (F_u)_j^k = g^{kr} F_{u j r} with g = 2 du dtau - (dz,dz); for the
    // Euclidean A2 system g^{-1} swaps u/tau and negates the z block.
    auto a2 = builtin_system("a2-roots-unit-weights");
    PrepotentialPoint pt{0.0, {cplx(0.23, 0.05), cplx(-0.31, 0.04)}, kTau};
    const int dim = 4;
    auto ginv = [](int k, int r) {
        if ((k == 0 && r == 3) || (k == 3 && r == 0)) return 1.0;
        if (k == r && (k == 1 || k == 2)) return -1.0;
        return 0.0;
    };
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
            cplx entry = 0.0;
            for (int r = 0; r < dim; ++r)
                entry += ginv(k, r) * prepotential_third_derivs(a2, pt, 0, j, r);
            CHECK(std::abs(entry - (j == k ? 1.0 : 0.0)) == 0.0);
        }
}

TEST_CASE("wdvv residuals") {
    PrepotentialPoint p1{0.0, {cplx(0.21, 0.06)}, kTau};
    CHECK(wdvv_residual(a1_dual_system(), p1) < 1e-8);
    CHECK(wdvv_residual(builtin_system("a1-weight3"), p1) < 1e-8);

    // sensitivity control: a 10% weight perturbation must be detected
    VeeSystem broken = a1_dual_system();
    broken.weights[1] = cplx(-4.4, 0.0);
    CHECK(wdvv_residual(broken, p1) > 1e-4);

    // seeded sweep for the dual system
    SplitMix64 rng(23);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        HalfPlanePoint tau(cplx(rng.uniform(-0.4, 0.4), rng.uniform(0.8, 1.9)));
        cplx z(rng.uniform(-0.3, 0.3), rng.uniform(-0.15, 0.15));
        if (lattice_distance(2.0 * z, tau) < 0.05 || lattice_distance(z, tau) < 0.05) continue;
        worst = std::max(worst, wdvv_residual(a1_dual_system(), {0.0, {z}, tau}));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("lemma PDE residuals") {
    cplx z(0.27, 0.08);
    TrilogCombination h1{{{cplx(1.0), cplx(1.0)}}, cplx(2.5)};
    CHECK(std::abs(pde_residual_h(h1, z, kTau)) < 1e-9);

    // the dual solution satisfies the printed PDE in its 1/12 normalization
    TrilogCombination h2{{{cplx(1.0 / 12.0), cplx(2.0)}, {cplx(-1.0 / 3.0), cplx(1.0)}}, 0.0};
    CHECK(std::abs(pde_residual_h(h2, z, kTau)) < 1e-9);

    // negative control: f alone leaves exactly -E4/144
    TrilogCombination h3{{{cplx(1.0), cplx(1.0)}}, 0.0};
    CHECK(std::abs(pde_residual_h(h3, z, kTau) + eisenstein(4, kTau) / 144.0) < 1e-9);
}

TEST_CASE("system file round trip and errors") {
    const char* path = "test_system.tmp";
    {
        std::ofstream out(path);
        out << "# A1 dual encoding\n";
        out << "dim 1\n";
        out << "form 2\n";
        out << "vector 1 weight 1\n";
        out << "vector 0.5 weight -4\n";
    }
    VeeSystem sys = load_vee_system(path);
    CHECK(sys.dim == 1);
    CHECK(sys.vectors.size() == 2);
    PrepotentialPoint p1{0.0, {cplx(0.21, 0.06)}, kTau};
    CHECK(wdvv_residual(sys, p1) < 1e-8);
    std::remove(path);

    auto expect_line = [](const char* text, int line) {
        std::istringstream in(text);
        try {
            parse_vee_system(in);
            FAIL("expected parse_error");
        } catch (const parse_error& e) {
            CHECK(e.line == line);
        }
    };
    expect_line("dim 2\nvector 1 weight 1\n", 2);       // missing component
    expect_line("vector 1 weight 1\n", 1);              // vector before dim
    expect_line("dim 2\nplanet 9\n", 2);                // unknown directive
    expect_line("dim 1\nvector 1x weight 1\n", 2);      // bad complex literal
    CHECK_THROWS(load_vee_system("no_such_file.vee"));
}
