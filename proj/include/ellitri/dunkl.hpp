#ifndef ELLITRI_DUNKL_HPP
#define ELLITRI_DUNKL_HPP

#include <array>
#include <vector>

#include "ellitri/core.hpp"

// Dunkl-type operators for A2:
//   Xi^(-1)(xi) = d_xi + sum_a k_a (a,xi) s_a
//   Xi^(i)(xi)  = d_xi + sum_a k_a (a,xi) f^(3-i,i)((z,a)) s_a,   i = 0..3,
// over U = {alpha, beta, -(alpha+beta)}, acting on polynomial test functions.
// Nested applications are evaluated symbolically: reflections map polynomials
// to polynomials and root vectors to root vectors, and d_xi acts on the
// f^(n,m) weight factors through the chain rule f^(n,m) -> f^(n+1,m).
// A rational mode swaps the weights for 1/(z,a) with the same plumbing.

namespace ellitri {

using Vec2 = std::array<cplx, 2>;
using RVec2 = std::array<double, 2>;

// Polynomial in (z1, z2) with exact directional derivative and exact
// composition with linear maps.
class PolyFunction {
public:
    static constexpr int kMaxDeg = 8;

    PolyFunction();
    static PolyFunction constant(cplx c);
    static PolyFunction monomial(int i, int j, cplx c);
    static PolyFunction random(SplitMix64& rng, int degree);

    cplx& at(int i, int j);
    cplx at(int i, int j) const;
    cplx eval(const Vec2& z) const;
    PolyFunction dir_deriv(const Vec2& xi) const;
    PolyFunction compose_linear(const std::array<std::array<double, 2>, 2>& m) const;
    PolyFunction& operator+=(const PolyFunction& o);
    PolyFunction scaled(cplx c) const;

private:
    std::vector<cplx> c_;  // (kMaxDeg+1)^2 dense
};

struct DunklConfig {
    std::vector<RVec2> roots;  // U, three vectors for A2
    std::vector<cplx> k;       // coupling per root
    HalfPlanePoint tau;

    // U = {alpha, beta, -(alpha+beta)} in the rank-2 identity normalization,
    // equal coupling k on the single A2 orbit.
    static DunklConfig a2(cplx coupling, const HalfPlanePoint& tau);
};

// s_a(z) = z - 2 (a,z)/(a,a) a.
Vec2 reflect(const RVec2& a, const Vec2& z);

// Operator selector: index -1, 0..3, or the rational-limit weight 1/(z,a).
struct XiOp {
    int index = -1;
    bool rational = false;
    static XiOp elliptic(int i) { return {i, false}; }
    static XiOp rational_limit() { return {0, true}; }
};

// (Xi F)(z) for a polynomial F.
cplx apply_xi(int i, const Vec2& xi_dir, const PolyFunction& F, const Vec2& zvec,
              const DunklConfig& cfg, const SeriesPolicy& policy = {});

// Plain commutator [Xi^a(xi), Xi^b(eta)] applied to F at z.
cplx commutator_pair(XiOp a, XiOp b, const Vec2& xi_dir, const Vec2& eta_dir,
                     const PolyFunction& F, const Vec2& zvec, const DunklConfig& cfg,
                     const SeriesPolicy& policy = {});

// F^(a,b)(xi,eta) = [Xi^a(xi), Xi^b(eta)] + [Xi^b(xi), Xi^a(eta)] applied to F.
cplx commutator_F(int a, int b, const Vec2& xi_dir, const Vec2& eta_dir,
                  const PolyFunction& F, const Vec2& zvec, const DunklConfig& cfg,
                  const SeriesPolicy& policy = {});

// max |Xi^(1)(xi)F + (1/12) Xi^(-1)(xi)F| over seeded samples at tau = T*i.
double trig_limit_check(double T, cplx coupling, int samples, std::uint64_t seed,
                        const SeriesPolicy& policy = {});

}  // namespace ellitri

#endif
