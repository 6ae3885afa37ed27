#include "ellitri/trilog.hpp"

#include <cmath>

#include "ellitri/special.hpp"

namespace ellitri {

namespace {

// The chi polynomial and the cubic terms of the q-series live on the
// principal tau sheet: reducing Re tau to [-1/2, 1/2) keeps f(z, tau+1)
// equal to f(z, tau) exactly, as the transformation law requires.
cplx principal_tau(const HalfPlanePoint& tau) {
    return tau.tau - std::round(tau.tau.real());
}

cplx chi_with_logq(int r, cplx zeta, cplx logq) {
    if (zeta == cplx(0.0)) throw domain_error("chi: zeta must be nonzero");
    if (r < 1 || r % 2 == 0) throw domain_error("chi: r must be a positive odd integer");
    if (r > 17) throw domain_error("chi: r above supported range");
    double fact[20];
    fact[0] = 1.0;
    for (int i = 1; i <= r + 1; ++i) fact[i] = fact[i - 1] * i;
    const cplx lz = std::log(zeta);
    cplx sum = 0.0;
    for (int j = 0; j <= r; ++j) {
        double b = bernoulli(j + 1).to_double();
        if (b == 0.0) continue;
        sum += b / (fact[r - j] * fact[j + 1]) * std::pow(lz, r - j) * std::pow(logq, j);
    }
    return sum;
}

}  // namespace

cplx chi(int r, cplx zeta, const HalfPlanePoint& tau) {
    return chi_with_logq(r, zeta, two_pi_i * tau.tau);
}

cplx elliptic_li3_direct(cplx zeta, const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    policy.validate();
    const double aq = tau.abs_q();
    const double az = std::abs(zeta);
    if (!(aq < az && az < 1.0 / aq))
        throw domain_error("elliptic_li3_direct: zeta outside the annulus |q| < |zeta| < 1/|q|");

    cplx sum = polylog(3, zeta, policy);  // n = 0 term
    const cplx zinv = 1.0 / zeta;
    cplx qn = 1.0;
    bool done = false;
    for (int n = 1; n <= policy.max_terms; ++n) {
        qn *= tau.q;
        sum += polylog(3, qn * zeta, policy) + polylog(3, qn * zinv, policy);
        // |Li_3(x)| <= |x|/(1-|x|); both argument families shrink by |q| per step.
        double worst = std::pow(aq, n + 1.0) * std::max(az, 1.0 / az);
        if (worst < 0.5 && 2.0 * worst / ((1.0 - worst) * (1.0 - aq)) < policy.eps) {
            done = true;
            break;
        }
    }
    if (!done) throw convergence_error("elliptic_li3_direct: no convergence within max_terms");
    return sum - chi_with_logq(3, zeta, two_pi_i * principal_tau(tau));
}

cplx elliptic_li3_one_tau3(const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    policy.validate();
    const double aq = tau.abs_q();
    cplx qn = 1.0;
    cplx lam = 0.0;
    for (int n = 1; n <= policy.max_terms; ++n) {
        qn *= tau.q;
        double n3 = static_cast<double>(n) * n * n;
        lam += n3 * qn / (1.0 - qn);
        double ratio = aq * std::pow((n + 1.0) / n, 3);
        if (ratio < 1.0 && n3 * std::pow(aq, n + 1.0) * ratio / ((1.0 - ratio) * (1.0 - aq)) <
                               policy.eps)
            return 2.0 * lam + 1.0 / 120.0;
    }
    throw convergence_error("elliptic_li3_one_tau3: no convergence within max_terms");
}

namespace {

// d^n/dz^n sin^2(pi r z); for n >= 1 this is -(1/2) (2 pi r)^n cos(2 pi r z + n pi/2).
cplx sin_sq_deriv(int n, int r, cplx z) {
    const cplx arg = 2.0 * pi * static_cast<double>(r) * z;
    if (n == 0) {
        cplx s = std::sin(pi * static_cast<double>(r) * z);
        return s * s;
    }
    cplx c;
    switch (n % 4) {
        case 0: c = std::cos(arg); break;
        case 1: c = -std::sin(arg); break;
        case 2: c = -std::cos(arg); break;
        default: c = std::sin(arg); break;
    }
    return -0.5 * std::pow(2.0 * pi * static_cast<double>(r), n) * c;
}

// The q-series part of f^(n,m):
//   -4 (2 pi i)^-3 sum_r (2 pi i r)^m Li_{-m}(q^r) d^n/dz^n sin^2(pi r z) / r^3.
cplx fseries_sum(int n, int m, cplx z, const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    const double aq = tau.abs_q();
    const double growth = std::exp(2.0 * pi * std::abs(z.imag()));
    const cplx w3 = two_pi_i * two_pi_i * two_pi_i;
    cplx qr = 1.0;
    cplx sum = 0.0;
    for (int r = 1; r <= policy.max_terms; ++r) {
        qr *= tau.q;
        cplx term = polylog_neg(m, qr) * sin_sq_deriv(n, r, z) /
                    (static_cast<double>(r) * r * r);
        if (m > 0) term *= std::pow(two_pi_i * static_cast<double>(r), m);
        sum += term;
        double ratio = aq * growth * std::pow((r + 1.0) / r, n + m);
        if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) < policy.eps)
            return -4.0 / w3 * sum;
    }
    throw convergence_error("f series: no convergence within max_terms");
}

// Derivatives of the cubic polynomial z^3/12 - z^2 tau/24 on the principal
// tau sheet.  All entries with n + m > 3 or m > 1 vanish.
cplx poly_part(int n, int m, cplx z, cplx tau_p) {
    if (m == 0) {
        switch (n) {
            case 0: return z * z * z / 12.0 - z * z * tau_p / 24.0;
            case 1: return z * z / 4.0 - z * tau_p / 12.0;
            case 2: return z / 2.0 - tau_p / 12.0;
            case 3: return 0.5;
            default: return 0.0;
        }
    }
    if (m == 1) {
        switch (n) {
            case 0: return -z * z / 24.0;
            case 1: return -z / 12.0;
            case 2: return -1.0 / 12.0;
            default: return 0.0;
        }
    }
    return 0.0;
}

}  // namespace

cplx f_deriv(DerivOrder order, const StripPoint& p, const SeriesPolicy& policy) {
    order.validate();
    policy.validate();
    const int n = order.n, m = order.m;
    if (m == 0 && n >= 2 && lattice_distance(p.z, p.tau) < 1e-8)
        throw domain_error("f_deriv: z within 1e-8 of a lattice point for a singular order");

    cplx value = poly_part(n, m, p.z, principal_tau(p.tau));
    if (m == 0) {
        // (2 pi i)^{n-3} Li_{3-n}(e^{2 pi i z}); Li_1 and below are closed forms.
        const cplx zeta = std::exp(two_pi_i * p.z);
        cplx li;
        switch (n) {
            case 0: li = polylog(3, zeta, policy) - zeta3; break;
            case 1: li = polylog(2, zeta, policy); break;
            case 2: li = -std::log(1.0 - zeta); break;
            default: li = polylog_neg(n - 3, zeta); break;
        }
        value += std::pow(two_pi_i, n - 3) * li;
    }
    return value + fseries_sum(n, m, p.z, p.tau, policy);
}

cplx f_eval(const StripPoint& p, const SeriesPolicy& policy) {
    return f_deriv({0, 0}, p, policy);
}

namespace {

// E_2n and E_2n' for 2n = 2..16 from the k <= 6 q-series plus the standard
// monomial relations in the ring generated by E_4 and E_6.
void eisenstein_ladder(const HalfPlanePoint& tau, const SeriesPolicy& policy, int n_max,
                       cplx E[9], cplx Ed[9]) {
    const cplx e2 = eisenstein(2, tau, 0, policy), e2d = eisenstein(2, tau, 1, policy);
    const cplx e4 = eisenstein(4, tau, 0, policy), e4d = eisenstein(4, tau, 1, policy);
    const cplx e6 = eisenstein(6, tau, 0, policy), e6d = eisenstein(6, tau, 1, policy);
    E[1] = e2;
    Ed[1] = e2d;
    if (n_max < 2) return;
    E[2] = e4;
    Ed[2] = e4d;
    E[3] = e6;
    Ed[3] = e6d;
    E[4] = e4 * e4;
    Ed[4] = 2.0 * e4 * e4d;
    E[5] = e4 * e6;
    Ed[5] = e4d * e6 + e4 * e6d;
    E[6] = (441.0 * e4 * e4 * e4 + 250.0 * e6 * e6) / 691.0;
    Ed[6] = (1323.0 * e4 * e4 * e4d + 500.0 * e6 * e6d) / 691.0;
    E[7] = e4 * e4 * e6;
    Ed[7] = 2.0 * e4 * e4d * e6 + e4 * e4 * e6d;
    E[8] = (1617.0 * std::pow(e4, 4) + 2000.0 * e4 * e6 * e6) / 3617.0;
    Ed[8] = (6468.0 * e4 * e4 * e4 * e4d + 2000.0 * (e4d * e6 * e6 + 2.0 * e4 * e6 * e6d)) /
            3617.0;
}

}  // namespace

cplx f_series1_thirdderiv(DerivOrder order, const StripPoint& p, int n_max) {
    order.validate();
    if (n_max < 1 || n_max > 8)
        throw domain_error("f_series1_thirdderiv: n_max must be in 1..8");
    const cplx z = p.z;
    const double az = std::abs(z);
    if (!(az > 0.0 && az < 1.0))
        throw domain_error("f_series1_thirdderiv: requires 0 < |z| < 1");
    const bool want30 = (order.n == 3 && order.m == 0);
    if (!want30 && !(order.n == 2 && order.m == 1))
        throw domain_error("f_series1_thirdderiv: only orders (3,0) and (2,1) are supported");

    SeriesPolicy policy;
    cplx E[9], Ed[9];
    eisenstein_ladder(p.tau, policy, n_max, E, Ed);

    double fact[20];
    fact[0] = 1.0;
    for (int i = 1; i < 20; ++i) fact[i] = fact[i - 1] * i;

    const cplx w3 = two_pi_i * two_pi_i * two_pi_i;
    cplx sum = want30 ? -1.0 / (two_pi_i * z)
                      : -2.0 / two_pi_i * dedekind_eta_log_deriv(p.tau, policy);
    for (int n = 1; n <= n_max; ++n) {
        double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        double b2n = bernoulli(2 * n).to_double();
        double base = sgn * b2n * std::pow(2.0 * pi, 2 * n + 2) /
                      (fact[2 * n + 2] * (2.0 * n));
        if (want30)
            sum += base * E[n] / w3 * (2.0 * n + 2.0) * (2.0 * n + 1.0) * (2.0 * n) *
                   std::pow(z, 2 * n - 1);
        else
            sum += base * Ed[n] / w3 * (2.0 * n + 2.0) * (2.0 * n + 1.0) * std::pow(z, 2 * n);
    }
    return sum;
}

StripReduction reduce_to_strip(cplx z, const HalfPlanePoint& tau) {
    const long b = std::lround(z.imag() / tau.tau.imag());
    const cplx zb = z - static_cast<double>(b) * tau.tau;
    const long a = std::lround(zb.real());
    return StripReduction{StripPoint(zb - static_cast<double>(a), tau), a, b};
}

ThirdDerivs shift_step_up(const ThirdDerivs& v) {
    ThirdDerivs o;
    o.f30 = v.f30 + 1.0;
    o.f21 = v.f21 - v.f30 - 0.5;
    o.f12 = v.f12 - 2.0 * v.f21 + v.f30 + 1.0 / 3.0;
    o.f03 = v.f03 - 3.0 * v.f12 + 3.0 * v.f21 - v.f30 - 0.25;
    return o;
}

ThirdDerivs shift_step_down(const ThirdDerivs& v) {
    ThirdDerivs o;
    o.f30 = v.f30 - 1.0;
    o.f21 = v.f21 + o.f30 + 0.5;
    o.f12 = v.f12 + 2.0 * o.f21 - o.f30 - 1.0 / 3.0;
    o.f03 = v.f03 + 3.0 * o.f12 - 3.0 * o.f21 + o.f30 + 0.25;
    return o;
}

ThirdDerivs f_third_derivs(cplx z, const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    StripReduction red = reduce_to_strip(z, tau);
    ThirdDerivs v{f_deriv({3, 0}, red.p, policy), f_deriv({2, 1}, red.p, policy),
                  f_deriv({1, 2}, red.p, policy), f_deriv({0, 3}, red.p, policy)};
    for (long i = 0; i < red.b; ++i) v = shift_step_up(v);
    for (long i = 0; i > red.b; --i) v = shift_step_down(v);
    return v;
}

ThirdDerivs f_third_derivs_bilateral(cplx z, const HalfPlanePoint& tau,
                                     const SeriesPolicy& policy) {
    policy.validate();
    if (lattice_distance(z, tau) < 1e-8)
        throw domain_error("f_third_derivs_bilateral: z within 1e-8 of a lattice point");
    const cplx zeta = std::exp(two_pi_i * z);
    const cplx zinv = 1.0 / zeta;
    // k = 0 contributes only to f30.
    ThirdDerivs v{0.5 + polylog_neg(0, zeta), -1.0 / 12.0, 0.0, 0.0};
    cplx qk = 1.0;
    const double aq = tau.abs_q();
    const double growth = std::exp(2.0 * pi * std::abs(z.imag()));
    for (int k = 1; k <= policy.max_terms; ++k) {
        qk *= tau.q;
        cplx lp = polylog_neg(0, qk * zeta);
        cplx lm = polylog_neg(0, qk * zinv);
        double kd = k;
        v.f30 += lp - lm;
        v.f21 += kd * (lp + lm);
        v.f12 += kd * kd * (lp - lm);
        // the subtracted Li3(1, q) regularization survives only here
        v.f03 += kd * kd * kd * (lp + lm - 2.0 * polylog_neg(0, qk));
        // |Li_0(x)| <= |x|/(1-|x|); both argument families decay by |q| per step
        // once k Im tau exceeds |Im z|.
        double worst = std::pow(aq, k + 1.0) * growth;
        if (worst < 0.5 &&
            2.0 * std::pow(k + 1.0, 3) * worst / ((1.0 - worst) * (1.0 - aq)) < policy.eps)
            return v;
    }
    throw convergence_error("f_third_derivs_bilateral: no convergence within max_terms");
}

}  // namespace ellitri
