#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ellitri/identities.hpp"
#include "ellitri/special.hpp"

using namespace ellitri;

namespace {
const HalfPlanePoint kTau(cplx(0.0, 1.1));
const HalfPlanePoint kTauG(cplx(0.3, 0.9));
}  // namespace

TEST_CASE("frobenius-stickelberger, three forms") {
    ConstrainedTriple t(cplx(0.23, 0.11), cplx(-0.41, 0.07));
    CHECK(std::abs(t.a + t.b + t.c) == 0.0);

    CHECK(std::abs(residual_fs_weierstrass(t, kTau)) < 1e-7);
    CHECK(std::abs(residual_fs_theta(t, kTau)) < 1e-9);
    CHECK(std::abs(residual_fs_trilog(t, kTau)) < 1e-9);

    // residual is symmetric under cyclic rotation by construction
    ConstrainedTriple rot(t.b, t.c);
    CHECK(std::abs(residual_fs_theta(t, kTau) - residual_fs_theta(rot, kTau)) < 1e-12);

    // a -> a+1 (b fixed, c recomputed) stays an identity
    ConstrainedTriple shifted(t.a + 1.0, t.b);
    CHECK(std::abs(residual_fs_theta(shifted, kTau)) < 1e-9);

    // symmetric sixth-root directions
    cplx om = std::exp(two_pi_i / 3.0);
    ConstrainedTriple sym(cplx(0.21, 0.05), cplx(0.21, 0.05) * om);
    CHECK(std::abs(residual_fs_weierstrass(sym, kTauG)) < 1e-7);

    // b = -a puts c = 0 on the lattice: excluded by precondition
    ConstrainedTriple degenerate(cplx(0.23, 0.11), cplx(-0.23, -0.11));
    CHECK_THROWS_AS(residual_fs_weierstrass(degenerate, kTau), domain_error);
    CHECK_THROWS_AS(residual_fs_theta(degenerate, kTau), domain_error);
}

TEST_CASE("theorem 3.1 residual") {
    CHECK(std::abs(residual_delta(cplx(0.31, 0.11), HalfPlanePoint(cplx(0.0, 1.07)))) < 1e-9);
    // z-independence and tau -> tau+1 invariance
    cplx d1 = residual_delta(cplx(0.31, 0.11), kTau);
    cplx d2 = residual_delta(cplx(-0.22, 0.18), kTau);
    CHECK(std::abs(d1 - d2) < 1e-9);
    HalfPlanePoint tau1(kTau.tau + 1.0);
    CHECK(std::abs(residual_delta(cplx(0.31, 0.11), tau1) - d1) < 1e-10);
}

TEST_CASE("rank-2 identities") {
    std::array<cplx, 2> z{cplx(0.21, 0.05), cplx(-0.17, 0.08)};
    CHECK(std::abs(residual_rank2(root_system_a2(), z, kTau)) < 1e-9);
    CHECK(std::abs(residual_rank2(root_system_b2(), z, kTau)) < 1e-9);
    std::array<cplx, 2> zg{cplx(0.21, 0.03), cplx(-0.17, 0.04)};
    CHECK(std::abs(residual_rank2(root_system_g2(), zg, kTauG)) < 1e-8);

    // the A2 case must reduce to the trilog Frobenius-Stickelberger form
    auto a2 = root_system_a2();
    cplx a = z[0] * a2.pos_roots[0][0] + z[1] * a2.pos_roots[0][1];
    cplx b = z[0] * a2.pos_roots[1][0] + z[1] * a2.pos_roots[1][1];
    ConstrainedTriple t(a, b);
    CHECK(std::abs(residual_rank2(a2, z, kTau) + residual_fs_trilog(t, kTau)) < 1e-12);
}

TEST_CASE("A2 identity pair") {
    cplx x(0.22, 0.06), y(-0.31, 0.04);
    CHECK(std::abs(residual_a2_first(x, y, kTau)) < 1e-9);
    CHECK(std::abs(residual_a2_first(y, x, kTau)) < 1e-9);  // both orientations separately
    CHECK(std::abs(residual_a2_second(x, y, HalfPlanePoint(cplx(0.3, 0.9)))) < 1e-9);

    // printed form of the second identity is symmetric in x and y
    CHECK(std::abs(residual_a2_second(x, y, kTau) - residual_a2_second(y, x, kTau)) == 0.0);

    // q-dependence only: tau -> tau+1 gives the same residual
    HalfPlanePoint tau1(kTau.tau + 1.0);
    CHECK(std::abs(residual_a2_second(x, y, tau1) - residual_a2_second(x, y, kTau)) < 1e-10);

    // trigonometric limit
    HalfPlanePoint t20(cplx(0.0, 20.0));
    CHECK(std::abs(residual_a2_first(cplx(0.22, 0.0), cplx(-0.31, 0.0), t20)) < 1e-11);
}

TEST_CASE("B2 identity sets") {
    cplx x(0.27, 0.05), y(-0.16, 0.03);
    for (B2Set s : {B2Set::a1, B2Set::a2, B2Set::b1, B2Set::b2})
        CHECK(std::abs(residual_b2(s, x, y, kTau)) < 1e-9);
    CHECK(std::abs(residual_b2(B2Set::b1, x, y, kTauG)) < 1e-9);
    CHECK(std::abs(residual_b2(B2Set::b2, x, y, kTauG)) < 1e-9);
}

TEST_CASE("rational and trigonometric limits") {
    ConstrainedTriple t(cplx(1.0), cplx(1.0));  // (1, 1, -2)
    CHECK(std::abs(residual_rational_limit(t)) < 1e-16);
    ConstrainedTriple t2(cplx(0.3, 0.1), cplx(-1.2, 0.0));
    CHECK(std::abs(residual_rational_limit(t2)) < 1e-14);

    // homogeneity: residual(lambda a, ...) * lambda^2 = residual(a, ...)
    cplx lam(1.7, -0.4);
    ConstrainedTriple ts(lam * t2.a, lam * t2.b);
    CHECK(std::abs(residual_rational_limit(ts) * lam * lam - residual_rational_limit(t2)) <
          1e-14);

    ConstrainedTriple tt(cplx(pi / 4.0), cplx(pi / 4.0));  // cot(-pi/2) = 0
    CHECK(std::abs(residual_trig_limit(tt)) < 1e-15);
    ConstrainedTriple tc(cplx(0.4, 0.2), cplx(0.7, -0.3));
    CHECK(std::abs(residual_trig_limit(tc)) < 1e-12);

    CHECK_THROWS_AS(residual_rational_limit(ConstrainedTriple(cplx(0.5), cplx(-0.5))),
                    domain_error);
    CHECK_THROWS_AS(residual_trig_limit(ConstrainedTriple(cplx(pi), cplx(0.4))), domain_error);
}

TEST_CASE("run_suite") {
    SamplePlan plan;
    plan.count = 30;
    ResidualReport r = run_suite(plan, 1e-8);
    CHECK(r.overall_pass);
    CHECK(r.identities.size() == 16);
    for (const auto& s : r.identities) CHECK(s.max_abs < 1e-8);

    // fixed seed: byte-identical serialization
    ResidualReport r2 = run_suite(plan, 1e-8);
    CHECK(to_json(r) == to_json(r2));
    CHECK(to_csv(r) == to_csv(r2));

    // count = 0: empty report, vacuous pass
    SamplePlan empty = plan;
    empty.count = 0;
    ResidualReport re = run_suite(empty, 1e-8);
    CHECK(re.identities.empty());
    CHECK(re.overall_pass);

    // tolerance below float noise: failures reported, report still well-formed
    ResidualReport rf = run_suite(plan, 1e-18);
    CHECK_FALSE(rf.overall_pass);
    CHECK(to_json(rf).find("\"overall_pass\": false") != std::string::npos);

    // a pathological pole margin drives the resample rate above 90%
    SamplePlan bad = plan;
    bad.pole_margin = 0.35;
    CHECK_THROWS_AS(run_suite(bad, 1e-8), domain_error);
}
