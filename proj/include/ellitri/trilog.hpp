#ifndef ELLITRI_TRILOG_HPP
#define ELLITRI_TRILOG_HPP

#include "ellitri/core.hpp"

// The elliptic trilogarithm f(z, tau) and its mixed derivatives f^(n,m).
//
// The fast path is the sine-squared q-series
//   f = (2 pi i)^-3 (Li_3(e^{2 pi i z}) - zeta(3)) + z^3/12 - z^2 tau/24
//       - 4 (2 pi i)^-3 sum_r q^r/(1-q^r) sin^2(pi r z)/r^3,
// which converges geometrically in the strip |Im z| < Im tau and
// differentiates term-wise in both variables.  The regularized elliptic
// trilogarithm Li3(zeta, q) built from plain trilogarithms serves as an
// independent oracle, and a z ~ 0 Eisenstein expansion as a second one.

namespace ellitri {

// A point (z, tau) inside the direct-convergence strip |Im z| < Im tau.
struct StripPoint {
    cplx z;
    HalfPlanePoint tau;

    StripPoint(cplx z_, HalfPlanePoint tau_) : z(z_), tau(tau_) {
        if (!(std::abs(z_.imag()) < tau_.tau.imag()))
            throw domain_error("StripPoint: |Im z| must be below Im tau");
    }
};

// chi_r(zeta, q) = sum_{j=0}^r B_{j+1} / ((r-j)! (j+1)!) (log zeta)^{r-j} (log q)^j,
// with principal log zeta and log q := 2 pi i tau.  Exact finite sum.
cplx chi(int r, cplx zeta, const HalfPlanePoint& tau);

// Li3(zeta, q) = sum_{n>=0} Li_3(q^n zeta) + sum_{n>=1} Li_3(q^n / zeta) - chi_3(zeta, q),
// for |q| < |zeta| < 1/|q|.  The oracle route for f_eval.
cplx elliptic_li3_direct(cplx zeta, const HalfPlanePoint& tau, const SeriesPolicy& policy = {});

// (d/dtau)^3 of (2 pi i)^-3 Li3(1, q), term-wise: 2 sum_n n^3 q^n/(1-q^n) + 1/120.
// Identically equal to E_4(tau)/120, but computed via the Lambert series,
// independently of the divisor-sum Eisenstein route.
cplx elliptic_li3_one_tau3(const HalfPlanePoint& tau, const SeriesPolicy& policy = {});

// f(z, tau) itself.
cplx f_eval(const StripPoint& p, const SeriesPolicy& policy = {});

// f^(n,m)(z, tau) = d^{n+m} f / dz^n dtau^m, each term differentiated analytically.
cplx f_deriv(DerivOrder order, const StripPoint& p, const SeriesPolicy& policy = {});

// Third derivatives from the z ~ 0 expansion
//   f ~ -(2 pi i)^-1 {z^2 log z / 2 + z^2 log eta}
//       + (2 pi i)^-3 sum_n (-1)^n E_2n B_2n (2 pi z)^{2n+2} / ((2n+2)! 2n),
// truncated at n_max Eisenstein terms.  Supports (n,m) = (3,0) and (2,1);
// used only as an independent cross-check for 0 < |z| < 1.
cplx f_series1_thirdderiv(DerivOrder order, const StripPoint& p, int n_max = 8);

struct StripReduction {
    StripPoint p;  // z0 = z - a - b*tau with |Im z0| <= Im tau / 2
    long a = 0;
    long b = 0;
};

// Translate z by the lattice into the strip, returning the shift counts.
StripReduction reduce_to_strip(cplx z, const HalfPlanePoint& tau);

// The four derivatives of total order three, bundled for the shift laws.
struct ThirdDerivs {
    cplx f30, f21, f12, f03;
};

// One-step quasi-periodicity maps for z -> z + tau / z -> z - tau:
//   f30 -> f30 + 1,  f21 -> f21 - f30 - 1/2,
//   f12 -> f12 - 2 f21 + f30 + 1/3,  f03 -> f03 - 3 f12 + 3 f21 - f30 - 1/4.
ThirdDerivs shift_step_up(const ThirdDerivs& v);
ThirdDerivs shift_step_down(const ThirdDerivs& v);

// All four third derivatives at arbitrary z: reduce to the strip, evaluate,
// then iterate the one-step shift laws b times.
ThirdDerivs f_third_derivs(cplx z, const HalfPlanePoint& tau, const SeriesPolicy& policy = {});

// The same four derivatives from the regularized-trilogarithm route: at total
// order three every polylogarithm collapses to the rational Li_0, so
//   f30 = 1/2 + sum_{k>=0} Li_0(q^k zeta) - sum_{k>=1} Li_0(q^k/zeta),
//   f21 = -1/12 + sum_{k>=1} k [Li_0(q^k zeta) + Li_0(q^k/zeta)],
//   f12 = sum_{k>=1} k^2 [Li_0(q^k zeta) - Li_0(q^k/zeta)],
//   f03 = sum_{k>=1} k^3 [Li_0(q^k zeta) + Li_0(q^k/zeta)],
// with zeta = e^{2 pi i z}.  Valid for any z off the lattice, without strip
// reduction; an independent cross-check for the shift and modular laws.
ThirdDerivs f_third_derivs_bilateral(cplx z, const HalfPlanePoint& tau,
                                     const SeriesPolicy& policy = {});

}  // namespace ellitri

#endif
