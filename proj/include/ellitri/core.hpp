#ifndef ELLITRI_CORE_HPP
#define ELLITRI_CORE_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ellitri {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;

// 2*pi*i, the ubiquitous prefactor.
inline const cplx two_pi_i{0.0, 2.0 * pi};

// zeta(3); Li_3(1).
inline constexpr double zeta3 = 1.2020569031595942854;

// Thrown when an argument violates a documented precondition.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Thrown when a series fails to meet its tail bound within the term cap.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Input-file syntax error; carries the 1-based offending line.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// Truncation control shared by every series evaluator: stop once the
// geometric tail bound drops below eps, error out at max_terms.
struct SeriesPolicy {
    double eps = 1e-16;
    int max_terms = 4096;

    void validate() const {
        if (!(eps > 0.0)) throw domain_error("SeriesPolicy: eps must be positive");
        if (max_terms < 1) throw domain_error("SeriesPolicy: max_terms must be >= 1");
    }
};

// Modular parameter tau with Im(tau) > 0 and its cached nome q = exp(2*pi*i*tau).
struct HalfPlanePoint {
    cplx tau;
    cplx q;

    explicit HalfPlanePoint(cplx tau_) : tau(tau_), q(std::exp(two_pi_i * tau_)) {
        if (!(tau_.imag() > 0.0))
            throw domain_error("HalfPlanePoint: Im(tau) must be positive");
    }

    double abs_q() const { return std::abs(q); }
};

// Mixed derivative order (n z-derivatives, m tau-derivatives).
struct DerivOrder {
    int n = 0;
    int m = 0;

    void validate() const {
        if (n < 0 || m < 0) throw domain_error("DerivOrder: orders must be non-negative");
        if (n + m > 6) throw domain_error("DerivOrder: total order above supported range (6)");
    }
};

// splitmix64: tiny deterministic generator, identical streams on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

// Exact rational backed by 128-bit integers; wide enough for the Bernoulli table.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(__int128 num, __int128 den);

    static Rational from_decimal_strings(const char* num, const char* den);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    __int128 num() const { return num_; }
    __int128 den() const { return den_; }
    double to_double() const;
    std::string str() const;

private:
    __int128 num_;
    __int128 den_;  // always > 0, gcd(num, den) == 1
};

// Complex literals `a`, `ai`, `a+bi`, `a-bi` with decimal floats, no
// whitespace.  Throws std::invalid_argument on malformed input.
cplx parse_complex(const std::string& text);

}  // namespace ellitri

#endif
