#ifndef ELLITRI_IDENTITIES_HPP
#define ELLITRI_IDENTITIES_HPP

#include <array>
#include <string>
#include <vector>

#include "ellitri/core.hpp"
#include "ellitri/report.hpp"

// Residual evaluators for the functional identities: the classical
// Frobenius-Stickelberger relation in its Weierstrass, theta and trilog
// forms, the third-order differential identity, the rank-2 root-system
// identities with their multiplicity tables, the A2 and B2 identity sets,
// and the rational/trigonometric limits.  Each evaluator returns a complex
// residual whose magnitude should vanish.

namespace ellitri {

// Triple with a + b + c = 0 exactly: c is always computed as -a-b.
struct ConstrainedTriple {
    cplx a, b, c;
    ConstrainedTriple(cplx a_, cplx b_) : a(a_), b(b_), c(-a_ - b_) {}
};

// A rank-2 positive root set with multiplicities, in a Euclidean embedding
// matching the normalizations (alpha,alpha)/(beta,beta)/(alpha,beta) of the
// rank-2 identity: A2 2/2/-1, B2 2/1/-1, G2 6/2/-3.
struct RootSystem2D {
    std::string name;
    std::vector<std::array<double, 2>> pos_roots;
    std::vector<double> k_mult;
};

RootSystem2D root_system_a2();
RootSystem2D root_system_b2();
RootSystem2D root_system_g2();

// (zeta(a)+zeta(b)+zeta(c))^2 - P(a) - P(b) - P(c).
cplx residual_fs_weierstrass(const ConstrainedTriple& t, const HalfPlanePoint& tau,
                             const SeriesPolicy& policy = {});

// Cyclic sum of theta log-derivative products plus half the theta''/theta sum,
// minus theta'''(0)/(2 theta'(0)).
cplx residual_fs_theta(const ConstrainedTriple& t, const HalfPlanePoint& tau,
                       const SeriesPolicy& policy = {});

// Cyclic sum f30 f30 minus the f21 sum.
cplx residual_fs_trilog(const ConstrainedTriple& t, const HalfPlanePoint& tau,
                        const SeriesPolicy& policy = {});

// f30 f12 - f21^2 + f03/3 + E4/144.
cplx residual_delta(cplx z, const HalfPlanePoint& tau, const SeriesPolicy& policy = {});

// sum over unordered pairs of positive roots of (alpha,beta) f30 f30, plus
// the k-weighted f21 sum.  The pair convention is fixed by the requirement
// that the A2 case reduce exactly to the trilog Frobenius-Stickelberger form.
cplx residual_rank2(const RootSystem2D& system, const std::array<cplx, 2>& zvec,
                    const HalfPlanePoint& tau, const SeriesPolicy& policy = {});

// The first A2 identity (x and y play asymmetric roles).
cplx residual_a2_first(cplx x, cplx y, const HalfPlanePoint& tau,
                       const SeriesPolicy& policy = {});

// The second A2 identity, with the 2/3, 8/3, 10/9 and 1/108 coefficients.
cplx residual_a2_second(cplx x, cplx y, const HalfPlanePoint& tau,
                        const SeriesPolicy& policy = {});

enum class B2Set { a1, a2, b1, b2 };

// The four B2 identities, constants 1/36 and 1/18 included.
cplx residual_b2(B2Set set_id, cplx x, cplx y, const HalfPlanePoint& tau,
                 const SeriesPolicy& policy = {});

// 1/(ab) + 1/(bc) + 1/(ca).
cplx residual_rational_limit(const ConstrainedTriple& t);

// cot a cot b + cot b cot c + cot c cot a - 1.
cplx residual_trig_limit(const ConstrainedTriple& t);

struct Rect {
    double re_lo, re_hi, im_lo, im_hi;
};

// Seeded, reproducible sampling specification.  Identical (seed, count,
// ranges) reproduce identical samples bit for bit.
struct SamplePlan {
    std::uint64_t seed = 1;
    int count = 100;
    Rect tau_range{-0.45, 0.45, 0.8, 2.0};
    Rect z_box{-0.45, 0.45, -0.25, 0.25};
    double pole_margin = 0.05;
};

SamplePlan make_plan(const RunConfig& config);

// Runs every residual evaluator above over the plan's samples; precondition
// violations are resampled and counted (>90% resample rate is an error).
ResidualReport run_suite(const SamplePlan& plan, double tol, const SeriesPolicy& policy = {},
                         int threads = 0);

}  // namespace ellitri

#endif
