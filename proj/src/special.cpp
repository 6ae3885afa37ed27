#include "ellitri/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace ellitri {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

__int128 parse128(const char* s) {
    __int128 v = 0;
    bool neg = false;
    if (*s == '-') {
        neg = true;
        ++s;
    }
    for (; *s; ++s) v = v * 10 + (*s - '0');
    return neg ? -v : v;
}

}  // namespace

Rational::Rational(__int128 num, __int128 den) : num_(num), den_(den) {
    if (den_ == 0) throw domain_error("Rational: zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    __int128 g = gcd128(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_decimal_strings(const char* num, const char* den) {
    return Rational(parse128(num), parse128(den));
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

double Rational::to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    auto dec = [](__int128 v) {
        if (v == 0) return std::string("0");
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        while (v > 0) {
            s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        }
        if (neg) s.push_back('-');
        std::reverse(s.begin(), s.end());
        return s;
    };
    return den_ == 1 ? dec(num_) : dec(num_) + "/" + dec(den_);
}

namespace {

// B_0 .. B_58 as reduced fractions.  58 is the largest index whose numerator
// fits in 128 bits; nothing in this project needs more than B_16.
struct BernoulliEntry {
    const char* num;
    const char* den;
};

constexpr int kBernoulliMax = 58;

const BernoulliEntry kBernoulliEven[] = {
    {"1", "1"},                                          // B_0
    {"1", "6"},                                          // B_2
    {"-1", "30"},                                        // B_4
    {"1", "42"},                                         // B_6
    {"-1", "30"},                                        // B_8
    {"5", "66"},                                         // B_10
    {"-691", "2730"},                                    // B_12
    {"7", "6"},                                          // B_14
    {"-3617", "510"},                                    // B_16
    {"43867", "798"},                                    // B_18
    {"-174611", "330"},                                  // B_20
    {"854513", "138"},                                   // B_22
    {"-236364091", "2730"},                              // B_24
    {"8553103", "6"},                                    // B_26
    {"-23749461029", "870"},                             // B_28
    {"8615841276005", "14322"},                          // B_30
    {"-7709321041217", "510"},                           // B_32
    {"2577687858367", "6"},                              // B_34
    {"-26315271553053477373", "1919190"},                // B_36
    {"2929993913841559", "6"},                           // B_38
    {"-261082718496449122051", "13530"},                 // B_40
    {"1520097643918070802691", "1806"},                  // B_42
    {"-27833269579301024235023", "690"},                 // B_44
    {"596451111593912163277961", "282"},                 // B_46
    {"-5609403368997817686249127547", "46410"},          // B_48
    {"495057205241079648212477525", "66"},               // B_50
    {"-801165718135489957347924991853", "1590"},         // B_52
    {"29149963634884862421418123812691", "798"},         // B_54
    {"-2479392929313226753685415739663229", "870"},      // B_56
    {"84483613348880041862046775994036021", "354"},      // B_58
};

}  // namespace

Rational bernoulli(int n) {
    if (n < 0) throw domain_error("bernoulli: n must be non-negative");
    if (n > kBernoulliMax) throw domain_error("bernoulli: index above table range");
    if (n == 0) return Rational(1);
    if (n == 1) return Rational(-1) / Rational(2);
    if (n % 2 == 1) return Rational(0);
    const BernoulliEntry& e = kBernoulliEven[n / 2];
    return Rational::from_decimal_strings(e.num, e.den);
}

std::uint64_t divisor_sigma(int k, std::uint64_t n) {
    if (k < 1 || k % 2 == 0) throw domain_error("divisor_sigma: k must be a positive odd integer");
    if (n < 1) throw domain_error("divisor_sigma: n must be >= 1");
    auto powk = [k](std::uint64_t d) {
        unsigned __int128 r = 1;
        for (int i = 0; i < k; ++i) {
            r *= d;
            if (r > (unsigned __int128)UINT64_MAX) throw domain_error("divisor_sigma: overflow");
        }
        return r;
    };
    unsigned __int128 total = 0;
    for (std::uint64_t d = 1; d <= n / d; ++d) {
        if (n % d != 0) continue;
        total += powk(d);
        std::uint64_t e = n / d;
        if (e != d) total += powk(e);
        if (total > (unsigned __int128)UINT64_MAX) throw domain_error("divisor_sigma: overflow");
    }
    return static_cast<std::uint64_t>(total);
}

cplx eisenstein(int k, const HalfPlanePoint& tau, int m, const SeriesPolicy& policy) {
    policy.validate();
    if (k != 2 && k != 4 && k != 6) throw domain_error("eisenstein: k must be 2, 4 or 6");
    if (m < 0) throw domain_error("eisenstein: derivative order must be >= 0");

    const double coeff = -2.0 * k / bernoulli(k).to_double();  // -24, 240, -504
    const double aq = tau.abs_q();
    cplx qn = 1.0;
    cplx sum = 0.0;
    for (int n = 1; n <= policy.max_terms; ++n) {
        qn *= tau.q;
        cplx term = static_cast<double>(divisor_sigma(k - 1, n)) * qn;
        if (m > 0) term *= std::pow(two_pi_i * static_cast<double>(n), m);
        sum += term;
        // Tail bound: once |q|*((n+1)/n)^(k-1+m) < 1, successors shrink at
        // least geometrically at that rate.
        double ratio = aq * std::pow((n + 1.0) / n, k - 1 + m);
        if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) < policy.eps)
            return (m == 0 ? cplx(1.0) : cplx(0.0)) + coeff * sum;
    }
    throw convergence_error("eisenstein: no convergence within max_terms");
}

cplx dedekind_eta(const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    policy.validate();
    const double aq = tau.abs_q();
    cplx prod = std::exp(two_pi_i * tau.tau / 24.0);
    cplx qn = 1.0;
    for (int n = 1; n <= policy.max_terms; ++n) {
        qn *= tau.q;
        prod *= 1.0 - qn;
        double tail = std::pow(aq, n + 1) / (1.0 - aq);
        if (tail < policy.eps) return prod;
    }
    throw convergence_error("dedekind_eta: no convergence within max_terms");
}

cplx dedekind_eta_log_deriv(const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    policy.validate();
    const double aq = tau.abs_q();
    cplx qn = 1.0;
    cplx lam = 0.0;
    for (int n = 1; n <= policy.max_terms; ++n) {
        qn *= tau.q;
        lam += static_cast<double>(n) * qn / (1.0 - qn);
        double tail = (n + 1.0) * std::pow(aq, n + 1) / ((1.0 - aq) * (1.0 - aq));
        if (tail < policy.eps) return two_pi_i * (1.0 / 24.0 - lam);
    }
    throw convergence_error("dedekind_eta_log_deriv: no convergence within max_terms");
}

double zeta_int(int N) {
    if (N < 2) throw domain_error("zeta_int: N must be >= 2");
    const int M = 256;
    double s = 0.0;
    for (int n = M; n >= 1; --n) s += std::pow(static_cast<double>(n), -N);
    // Euler-Maclaurin tail starting at M.
    double Md = M;
    double tail = std::pow(Md, 1.0 - N) / (N - 1.0) - 0.5 * std::pow(Md, -static_cast<double>(N)) +
                  (N / 12.0) * std::pow(Md, -N - 1.0) -
                  (N * (N + 1.0) * (N + 2.0) / 720.0) * std::pow(Md, -N - 3.0);
    return s + tail;
}

cplx polylog_neg(int k, cplx x) {
    if (x == cplx(1.0)) throw domain_error("polylog_neg: pole at x = 1");
    const cplx u = 1.0 - x;
    switch (k) {
        case 0: return x / u;
        case 1: return x / (u * u);
        case 2: return x * (1.0 + x) / (u * u * u);
        case 3: return x * (1.0 + x * (4.0 + x)) / (u * u * u * u);
        case 4: return x * (1.0 + x * (11.0 + x * (11.0 + x))) / std::pow(u, 5);
        case 5: return x * (1.0 + x * (26.0 + x * (66.0 + x * (26.0 + x)))) / std::pow(u, 6);
        case 6:
            return x * (1.0 + x * (57.0 + x * (302.0 + x * (302.0 + x * (57.0 + x))))) /
                   std::pow(u, 7);
        default: throw domain_error("polylog_neg: order out of supported range");
    }
}

namespace {

// Direct series sum_{n>=1} z^n / n^N with a rigorous tail bound; used in the
// unit disc and, with the extended cap, in the annulus near |z| = 1.
cplx polylog_series(int N, cplx z, double eps, long cap) {
    const double az = std::abs(z);
    cplx zn = 1.0;
    cplx sum = 0.0;
    for (long n = 1; n <= cap; ++n) {
        zn *= z;
        sum += zn / std::pow(static_cast<double>(n), N);
        double tail;
        if (az < 1.0)
            tail = std::pow(az, n + 1.0) / (std::pow(n + 1.0, N) * (1.0 - az));
        else  // |z| == 1, N >= 2: integral comparison
            tail = 1.0 / ((N - 1.0) * std::pow(static_cast<double>(n), N - 1.0));
        if (tail < eps) return sum;
    }
    throw convergence_error("polylog: series did not reach the tail bound within the term cap");
}

// The Bernoulli sum in the inversion formula:
// S_N(l) = sum_{j=0}^N B_j (2 pi i)^j l^{N-j} / ((N-j)! j!).
cplx inversion_sum(int N, cplx logz) {
    static const auto factorial = [] {
        std::array<double, 32> f{};
        f[0] = 1.0;
        for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
        return f;
    }();
    cplx s = 0.0;
    cplx tp = 1.0;  // (2 pi i)^j
    for (int j = 0; j <= N; ++j) {
        double bj = bernoulli(j).to_double();
        if (bj != 0.0) s += bj * tp * std::pow(logz, N - j) / (factorial[N - j] * factorial[j]);
        tp *= two_pi_i;
    }
    return s;
}

constexpr double kDiscRadius = 0.99;
constexpr long kAnnulusCap = 4000000;

}  // namespace

cplx polylog(int N, cplx z, const SeriesPolicy& policy) {
    policy.validate();
    if (N < 1) throw domain_error("polylog: N must be >= 1");
    if (N > 16) throw domain_error("polylog: order above supported range");
    if (z == cplx(0.0)) return 0.0;
    if (z.imag() == 0.0 && z.real() >= 1.0) {
        if (z.real() == 1.0 && N >= 2) return zeta_int(N);  // Li_N(1) = zeta(N)
        throw domain_error("polylog: z on the branch cut [1, inf)");
    }
    if (N == 1) return -std::log(1.0 - z);  // closed form everywhere off the cut

    const double az = std::abs(z);
    if (az <= kDiscRadius) return polylog_series(N, z, policy.eps, policy.max_terms);
    if (az <= 1.0) {
        // Annulus, convergent side: direct series, extended cap, relaxed target.
        double eps = std::max(policy.eps, 1e-13);
        return polylog_series(N, z, eps, std::max<long>(policy.max_terms, kAnnulusCap));
    }
    // |z| > 1: inversion formula with principal logarithms.  The printed
    // formula holds on the closed upper half plane; the lower half follows
    // by the reflection Li_N(conj z) = conj Li_N(z).
    if (z.imag() < 0.0) return std::conj(polylog(N, std::conj(z), policy));
    cplx inner = polylog(N, 1.0 / z, policy);
    double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    return sign * inner - inversion_sum(N, std::log(z));
}

namespace {

// One theta_1 sine-sum term and its z/tau derivatives:
//   2 (-1)^n exp(2 pi i tau c_n) * d^dz/dz^dz sin((2n+1) pi z),  c_n = n(n+1)/2 + 1/8.
cplx theta1_term(int n, cplx z, const HalfPlanePoint& tau, int dz, int dtau) {
    const double cn = 0.5 * n * (n + 1.0) + 0.125;
    cplx qpart = std::exp(two_pi_i * tau.tau * cn);
    if (dtau == 1) qpart *= two_pi_i * cn;
    const double a = (2.0 * n + 1.0) * pi;
    const cplx arg = a * z;
    cplx zpart;
    switch (dz % 4) {
        case 0: zpart = std::sin(arg); break;
        case 1: zpart = std::cos(arg); break;
        case 2: zpart = -std::sin(arg); break;
        default: zpart = -std::cos(arg); break;
    }
    zpart *= std::pow(a, dz);
    double sign = (n % 2 == 0) ? 2.0 : -2.0;
    return sign * qpart * zpart;
}

}  // namespace

cplx theta1(cplx z, const HalfPlanePoint& tau, int dz, int dtau, const SeriesPolicy& policy) {
    policy.validate();
    if (dz < 0 || dz > 3) throw domain_error("theta1: dz must be in 0..3");
    if (dtau < 0 || dtau > 1) throw domain_error("theta1: dtau must be in 0..1");

    const double aq = tau.abs_q();
    const double growth = std::exp(2.0 * pi * std::abs(z.imag()));
    cplx sum = 0.0;
    for (int n = 0; n <= policy.max_terms; ++n) {
        cplx term = theta1_term(n, z, tau, dz, dtau);
        sum += term;
        // |term_{n+1}/term_n| <~ |q|^{n+1} * e^{2 pi |Im z|} * polynomial growth.
        double poly = std::pow((2.0 * n + 3.0) / (2.0 * n + 1.0), dz) *
                      (dtau == 1 ? (0.5 * (n + 1) * (n + 2) + 0.125) / (0.5 * n * (n + 1) + 0.125)
                                 : 1.0);
        double ratio = std::pow(aq, n + 1.0) * growth * poly;
        if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) < policy.eps) return sum;
    }
    throw convergence_error("theta1: no convergence within max_terms");
}

double lattice_distance(cplx z, const HalfPlanePoint& tau) {
    double b0 = std::round(z.imag() / tau.tau.imag());
    double a0 = std::round((z - b0 * tau.tau).real());
    double best = std::abs(z - a0 - b0 * tau.tau);
    for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db)
            best = std::min(best, std::abs(z - (a0 + da) - (b0 + db) * tau.tau));
    return best;
}

WeierstrassPair weierstrass_pair(cplx z, const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    if (lattice_distance(z, tau) < 1e-8)
        throw domain_error("weierstrass_pair: z within 1e-8 of a lattice point");

    const cplx t0 = theta1(z, tau, 0, 0, policy);
    const cplx t1 = theta1(z, tau, 1, 0, policy);
    const cplx t2 = theta1(z, tau, 2, 0, policy);
    const cplx d1 = theta1(0.0, tau, 1, 0, policy);
    const cplx d3 = theta1(0.0, tau, 3, 0, policy);
    // theta_1(z) = theta_1'(0) z (1 + A z^2/6 + ...) with A below, so the
    // Laurent normalization pins both additive constants to -A/3 and +A/3.
    const cplx A = d3 / d1;

    WeierstrassPair out;
    out.zeta_w = t1 / t0 - (A / 3.0) * z;
    const cplx logdd = t2 / t0 - (t1 / t0) * (t1 / t0);
    out.p = -logdd + A / 3.0;
    return out;
}

}  // namespace ellitri
