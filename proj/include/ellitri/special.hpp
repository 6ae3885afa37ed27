#ifndef ELLITRI_SPECIAL_HPP
#define ELLITRI_SPECIAL_HPP

#include <cstdint>

#include "ellitri/core.hpp"

// Classical special functions: Bernoulli numbers, divisor sums, Eisenstein
// series, the Dedekind eta function, polylogarithms with analytic
// continuation, the Jacobi theta_1 function, and the Weierstrass pair
// built on top of it.  Everything is a pure function of its arguments.

namespace ellitri {

// B_n under x/(e^x - 1) = sum B_n x^n / n!, exact; table-backed for n <= 58.
Rational bernoulli(int n);

// sigma_k(n) = sum of d^k over divisors d of n, exact; throws on uint64 overflow.
std::uint64_t divisor_sigma(int k, std::uint64_t n);

// (d/dtau)^m E_k(tau) for k in {2,4,6}, from E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n,
// differentiated term-wise (the n-th term picks up (2*pi*i*n)^m).
cplx eisenstein(int k, const HalfPlanePoint& tau, int m = 0,
                const SeriesPolicy& policy = {});

// eta(tau) = q^{1/24} prod (1 - q^n), with q^{1/24} = exp(2*pi*i*tau/24).
cplx dedekind_eta(const HalfPlanePoint& tau, const SeriesPolicy& policy = {});

// eta'(tau)/eta(tau) via the Lambert series 2*pi*i*(1/24 - sum n q^n/(1-q^n));
// independent of the divisor-sum route used by eisenstein().
cplx dedekind_eta_log_deriv(const HalfPlanePoint& tau, const SeriesPolicy& policy = {});

// Li_N(z) for N >= 1.  Direct series for |z| <= 0.99; the Bernoulli inversion
// formula for |z| >= 1/0.99; slow direct summation with an extended term cap
// in the annulus between.  Principal branch, cut along [1, inf) for z != 1.
cplx polylog(int N, cplx z, const SeriesPolicy& policy = {});

// Li_{-k}(x) for k >= 0: the closed rational forms (Eulerian polynomials).
cplx polylog_neg(int k, cplx x);

// zeta(N) for integer N >= 2 (Euler-Maclaurin tail; accurate to ~1e-18).
double zeta_int(int N);

// d^dz/dz^dz d^dtau/dtau^dtau theta_1(z | tau) from the sine sum
// theta_1 = 2 q^{1/8} sum (-1)^n q^{n(n+1)/2} sin((2n+1) pi z),
// differentiated term-wise.  dz in 0..3, dtau in 0..1.
cplx theta1(cplx z, const HalfPlanePoint& tau, int dz = 0, int dtau = 0,
            const SeriesPolicy& policy = {});

// Distance from z to the nearest point of the lattice Z + tau*Z.
double lattice_distance(cplx z, const HalfPlanePoint& tau);

struct WeierstrassPair {
    cplx p;       // Weierstrass P
    cplx zeta_w;  // Weierstrass zeta
};

// P and zeta from log-derivatives of theta_1, with the additive constants
// fixed by the Laurent normalization zeta(z) - 1/z -> 0, P(z) - 1/z^2 -> 0.
WeierstrassPair weierstrass_pair(cplx z, const HalfPlanePoint& tau,
                                 const SeriesPolicy& policy = {});

}  // namespace ellitri

#endif
