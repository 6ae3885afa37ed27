#include "ellitri/dunkl.hpp"

#include <cmath>

#include "ellitri/trilog.hpp"

namespace ellitri {

PolyFunction::PolyFunction() : c_((kMaxDeg + 1) * (kMaxDeg + 1), cplx(0.0)) {}

PolyFunction PolyFunction::constant(cplx c) {
    PolyFunction p;
    p.at(0, 0) = c;
    return p;
}

PolyFunction PolyFunction::monomial(int i, int j, cplx c) {
    PolyFunction p;
    p.at(i, j) = c;
    return p;
}

PolyFunction PolyFunction::random(SplitMix64& rng, int degree) {
    PolyFunction p;
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j)
            p.at(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return p;
}

cplx& PolyFunction::at(int i, int j) { return c_[i * (kMaxDeg + 1) + j]; }
cplx PolyFunction::at(int i, int j) const { return c_[i * (kMaxDeg + 1) + j]; }

cplx PolyFunction::eval(const Vec2& z) const {
    cplx sum = 0.0;
    cplx zi = 1.0;
    for (int i = 0; i <= kMaxDeg; ++i) {
        cplx zj = 1.0;
        for (int j = 0; j <= kMaxDeg; ++j) {
            if (at(i, j) != cplx(0.0)) sum += at(i, j) * zi * zj;
            zj *= z[1];
        }
        zi *= z[0];
    }
    return sum;
}

PolyFunction PolyFunction::dir_deriv(const Vec2& xi) const {
    PolyFunction out;
    for (int i = 0; i <= kMaxDeg; ++i)
        for (int j = 0; j <= kMaxDeg; ++j) {
            cplx c = at(i, j);
            if (c == cplx(0.0)) continue;
            if (i > 0) out.at(i - 1, j) += c * static_cast<double>(i) * xi[0];
            if (j > 0) out.at(i, j - 1) += c * static_cast<double>(j) * xi[1];
        }
    return out;
}

PolyFunction PolyFunction::compose_linear(const std::array<std::array<double, 2>, 2>& m) const {
    // z1 -> m00 z1 + m01 z2, z2 -> m10 z1 + m11 z2, expanded binomially.
    PolyFunction out;
    std::array<double, kMaxDeg + 1> binom[kMaxDeg + 1];
    for (int n = 0; n <= kMaxDeg; ++n)
        for (int k = 0; k <= n; ++k)
            binom[n][k] = (k == 0 || k == n) ? 1.0 : binom[n - 1][k - 1] + binom[n - 1][k];
    for (int i = 0; i <= kMaxDeg; ++i)
        for (int j = 0; i + j <= kMaxDeg; ++j) {
            cplx c = at(i, j);
            if (c == cplx(0.0)) continue;
            // (m00 z1 + m01 z2)^i (m10 z1 + m11 z2)^j
            for (int p = 0; p <= i; ++p)
                for (int q = 0; q <= j; ++q) {
                    double coef = binom[i][p] * binom[j][q] * std::pow(m[0][0], p) *
                                  std::pow(m[0][1], i - p) * std::pow(m[1][0], q) *
                                  std::pow(m[1][1], j - q);
                    out.at(p + q, (i - p) + (j - q)) += c * coef;
                }
        }
    return out;
}

PolyFunction& PolyFunction::operator+=(const PolyFunction& o) {
    for (int i = 0; i <= kMaxDeg; ++i)
        for (int j = 0; j <= kMaxDeg; ++j) at(i, j) += o.at(i, j);
    return *this;
}

PolyFunction PolyFunction::scaled(cplx c) const {
    PolyFunction out = *this;
    for (int i = 0; i <= kMaxDeg; ++i)
        for (int j = 0; j <= kMaxDeg; ++j) out.at(i, j) *= c;
    return out;
}

DunklConfig DunklConfig::a2(cplx coupling, const HalfPlanePoint& tau) {
    const double r2 = std::sqrt(2.0), hr2 = std::sqrt(0.5), r32 = std::sqrt(1.5);
    // alpha, beta, -(alpha+beta) = (-1/sqrt2, -sqrt(3/2))
    DunklConfig cfg{{RVec2{r2, 0.0}, RVec2{-hr2, r32}, RVec2{-hr2, -r32}}, {}, tau};
    cfg.k.assign(3, coupling);
    return cfg;
}

Vec2 reflect(const RVec2& a, const Vec2& z) {
    double aa = a[0] * a[0] + a[1] * a[1];
    if (aa == 0.0) throw domain_error("reflect: zero root");
    cplx az = a[0] * z[0] + a[1] * z[1];
    cplx f = 2.0 * az / aa;
    return {z[0] - f * a[0], z[1] - f * a[1]};
}

namespace {

cplx dot_rc(const RVec2& a, const Vec2& x) { return a[0] * x[0] + a[1] * x[1]; }

std::array<std::array<double, 2>, 2> reflection_matrix(const RVec2& a) {
    double aa = a[0] * a[0] + a[1] * a[1];
    std::array<std::array<double, 2>, 2> m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - 2.0 * a[i] * a[j] / aa;
    return m;
}

RVec2 reflect_real(const RVec2& a, const RVec2& b) {
    double aa = a[0] * a[0] + a[1] * a[1];
    double ab = a[0] * b[0] + a[1] * b[1];
    double f = 2.0 * ab / aa;
    return {b[0] - f * a[0], b[1] - f * a[1]};
}

// One multiplicative factor of a symbolic term: either f^(n,m)((z,a)) or
// (z,a)^(-p) in the rational mode.
struct Factor {
    bool rational;
    int n, m;  // derivative orders; p is stored in n for rational factors
    RVec2 a;
};

struct Term {
    cplx coeff;
    PolyFunction poly;
    std::vector<Factor> factors;
};

using TermSum = std::vector<Term>;

// Apply Xi to a term sum symbolically.
TermSum apply_op(const TermSum& in, XiOp op, const Vec2& xi, const DunklConfig& cfg) {
    TermSum out;
    for (const Term& t : in) {
        // d_xi: product rule over the polynomial and every factor.
        {
            Term dt = t;
            dt.poly = t.poly.dir_deriv(xi);
            out.push_back(std::move(dt));
        }
        for (std::size_t j = 0; j < t.factors.size(); ++j) {
            Term dt = t;
            Factor& fj = dt.factors[j];
            cplx axi = dot_rc(fj.a, xi);
            if (fj.rational) {
                dt.coeff *= -static_cast<double>(fj.n) * axi;
                fj.n += 1;
            } else {
                dt.coeff *= axi;
                fj.n += 1;
            }
            out.push_back(std::move(dt));
        }
        // Reflection part: k_a (a,xi) W_a(z) * (term composed with s_a).
        for (std::size_t r = 0; r < cfg.roots.size(); ++r) {
            const RVec2& a = cfg.roots[r];
            Term rt;
            rt.coeff = t.coeff * cfg.k[r] * dot_rc(a, xi);
            rt.poly = t.poly.compose_linear(reflection_matrix(a));
            rt.factors.reserve(t.factors.size() + 1);
            for (const Factor& f : t.factors) {
                Factor g = f;
                g.a = reflect_real(a, f.a);  // (s_a z, b) = (z, s_a b)
                rt.factors.push_back(g);
            }
            if (op.rational)
                rt.factors.push_back(Factor{true, 1, 0, a});
            else if (op.index >= 0)
                rt.factors.push_back(Factor{false, 3 - op.index, op.index, a});
            out.push_back(std::move(rt));
        }
    }
    return out;
}

cplx eval_terms(const TermSum& terms, const Vec2& z, const DunklConfig& cfg,
                const SeriesPolicy& policy) {
    cplx sum = 0.0;
    for (const Term& t : terms) {
        if (t.coeff == cplx(0.0)) continue;
        cplx v = t.coeff * t.poly.eval(z);
        for (const Factor& f : t.factors) {
            cplx arg = dot_rc(f.a, z);
            if (f.rational) {
                if (std::abs(arg) < 1e-10) throw domain_error("dunkl: (z,a) at a rational pole");
                v *= std::pow(arg, -f.n);
            } else {
                v *= f_deriv({f.n, f.m}, StripPoint(arg, cfg.tau), policy);
            }
        }
        sum += v;
    }
    return sum;
}

XiOp resolve(int i) {
    if (i < -1 || i > 3) throw domain_error("dunkl: operator index must be in -1..3");
    return XiOp{i, false};
}

}  // namespace

cplx apply_xi(int i, const Vec2& xi_dir, const PolyFunction& F, const Vec2& zvec,
              const DunklConfig& cfg, const SeriesPolicy& policy) {
    TermSum start{Term{1.0, F, {}}};
    return eval_terms(apply_op(start, resolve(i), xi_dir, cfg), zvec, cfg, policy);
}

cplx commutator_pair(XiOp a, XiOp b, const Vec2& xi_dir, const Vec2& eta_dir,
                     const PolyFunction& F, const Vec2& zvec, const DunklConfig& cfg,
                     const SeriesPolicy& policy) {
    TermSum start{Term{1.0, F, {}}};
    TermSum ab = apply_op(apply_op(start, b, eta_dir, cfg), a, xi_dir, cfg);
    TermSum ba = apply_op(apply_op(start, a, xi_dir, cfg), b, eta_dir, cfg);
    return eval_terms(ab, zvec, cfg, policy) - eval_terms(ba, zvec, cfg, policy);
}

cplx commutator_F(int a, int b, const Vec2& xi_dir, const Vec2& eta_dir, const PolyFunction& F,
                  const Vec2& zvec, const DunklConfig& cfg, const SeriesPolicy& policy) {
    return commutator_pair(resolve(a), resolve(b), xi_dir, eta_dir, F, zvec, cfg, policy) +
           commutator_pair(resolve(b), resolve(a), xi_dir, eta_dir, F, zvec, cfg, policy);
}

double trig_limit_check(double T, cplx coupling, int samples, std::uint64_t seed,
                        const SeriesPolicy& policy) {
    if (T < 1.0) throw domain_error("trig_limit_check: T must be >= 1");
    HalfPlanePoint tau(cplx(0.0, T));
    DunklConfig cfg = DunklConfig::a2(coupling, tau);
    SplitMix64 rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        PolyFunction F = PolyFunction::random(rng, 2);
        Vec2 xi{cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        Vec2 z{cplx(rng.uniform(-0.4, 0.4), rng.uniform(-0.1, 0.1)),
               cplx(rng.uniform(-0.4, 0.4), rng.uniform(-0.1, 0.1))};
        // Xi^(1) -> -(1/12) Xi^(-1) holds for the reflection parts; the bare
        // d_xi summand is removed so the k = 0 residual is exactly zero.
        cplx dF = F.dir_deriv(xi).eval(z);
        cplx v = (apply_xi(1, xi, F, z, cfg, policy) - dF) +
                 (apply_xi(-1, xi, F, z, cfg, policy) - dF) / 12.0;
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

}  // namespace ellitri
