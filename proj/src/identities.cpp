#include "ellitri/identities.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "ellitri/parallel.hpp"
#include "ellitri/special.hpp"
#include "ellitri/trilog.hpp"

namespace ellitri {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt6 = std::sqrt(6.0);
const double kHalfSqrt2 = std::sqrt(0.5);
const double kSqrt32 = std::sqrt(1.5);  // sqrt(3/2)

double dot(const std::array<double, 2>& u, const std::array<double, 2>& v) {
    return u[0] * v[0] + u[1] * v[1];
}

cplx pair_z(const std::array<cplx, 2>& z, const std::array<double, 2>& a) {
    return z[0] * a[0] + z[1] * a[1];
}

void guard_off_lattice(cplx arg, const HalfPlanePoint& tau, double margin, const char* what) {
    if (lattice_distance(arg, tau) < margin) throw domain_error(std::string(what) + ": argument too close to the lattice");
}

}  // namespace

RootSystem2D root_system_a2() {
    RootSystem2D r;
    r.name = "A2";
    r.pos_roots = {{kSqrt2, 0.0},
                   {-kHalfSqrt2, kSqrt32},
                   {kHalfSqrt2, kSqrt32}};
    r.k_mult = {1.0, 1.0, 1.0};
    return r;
}

RootSystem2D root_system_b2() {
    RootSystem2D r;
    r.name = "B2";
    r.pos_roots = {{kSqrt2, 0.0},                 // alpha, long
                   {-kHalfSqrt2, kHalfSqrt2},     // beta, short
                   {kHalfSqrt2, kHalfSqrt2},      // alpha+beta, short
                   {0.0, kSqrt2}};                // alpha+2beta, long
    r.k_mult = {1.0, 2.0, 2.0, 1.0};
    return r;
}

RootSystem2D root_system_g2() {
    RootSystem2D r;
    r.name = "G2";
    const std::array<double, 2> al{kSqrt6, 0.0};
    const std::array<double, 2> be{-0.5 * kSqrt6, kHalfSqrt2};
    auto add = [&](double ca, double cb) {
        return std::array<double, 2>{ca * al[0] + cb * be[0], ca * al[1] + cb * be[1]};
    };
    r.pos_roots = {al, be, add(1, 1), add(1, 2), add(1, 3), add(2, 3)};
    // k_short = 10, k_long = 6; short roots have norm 2, long roots norm 6.
    for (const auto& v : r.pos_roots) r.k_mult.push_back(dot(v, v) < 4.0 ? 10.0 : 6.0);
    return r;
}

cplx residual_fs_weierstrass(const ConstrainedTriple& t, const HalfPlanePoint& tau,
                             const SeriesPolicy& policy) {
    auto pa = weierstrass_pair(t.a, tau, policy);
    auto pb = weierstrass_pair(t.b, tau, policy);
    auto pc = weierstrass_pair(t.c, tau, policy);
    cplx zsum = pa.zeta_w + pb.zeta_w + pc.zeta_w;
    return zsum * zsum - pa.p - pb.p - pc.p;
}

cplx residual_fs_theta(const ConstrainedTriple& t, const HalfPlanePoint& tau,
                       const SeriesPolicy& policy) {
    auto l1 = [&](cplx x) { return theta1(x, tau, 1, 0, policy) / theta1(x, tau, 0, 0, policy); };
    auto l2 = [&](cplx x) { return theta1(x, tau, 2, 0, policy) / theta1(x, tau, 0, 0, policy); };
    for (cplx x : {t.a, t.b, t.c}) guard_off_lattice(x, tau, 1e-8, "residual_fs_theta");
    return l1(t.a) * l1(t.b) + l1(t.b) * l1(t.c) + l1(t.c) * l1(t.a) +
           0.5 * (l2(t.a) + l2(t.b) + l2(t.c)) -
           0.5 * theta1(0.0, tau, 3, 0, policy) / theta1(0.0, tau, 1, 0, policy);
}

cplx residual_fs_trilog(const ConstrainedTriple& t, const HalfPlanePoint& tau,
                        const SeriesPolicy& policy) {
    ThirdDerivs da = f_third_derivs(t.a, tau, policy);
    ThirdDerivs db = f_third_derivs(t.b, tau, policy);
    ThirdDerivs dc = f_third_derivs(t.c, tau, policy);
    return da.f30 * db.f30 + db.f30 * dc.f30 + dc.f30 * da.f30 - (da.f21 + db.f21 + dc.f21);
}

cplx residual_delta(cplx z, const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    ThirdDerivs d = f_third_derivs(z, tau, policy);
    return d.f30 * d.f12 - d.f21 * d.f21 + d.f03 / 3.0 + eisenstein(4, tau, 0, policy) / 144.0;
}

cplx residual_rank2(const RootSystem2D& system, const std::array<cplx, 2>& zvec,
                    const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    const std::size_t n = system.pos_roots.size();
    std::vector<ThirdDerivs> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = f_third_derivs(pair_z(zvec, system.pos_roots[i]), tau, policy);
    cplx quad = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            quad += dot(system.pos_roots[i], system.pos_roots[j]) * d[i].f30 * d[j].f30;
    cplx lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) lin += system.k_mult[i] * d[i].f21;
    return quad + lin;
}

cplx residual_a2_first(cplx x, cplx y, const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    ThirdDerivs dx = f_third_derivs(x, tau, policy);
    ThirdDerivs dy = f_third_derivs(y, tau, policy);
    ThirdDerivs ds = f_third_derivs(x + y, tau, policy);
    return ds.f30 * (dx.f21 - dy.f21) + dy.f30 * (ds.f21 - dx.f21) +
           (dx.f12 - 0.5 * dy.f12 + 0.5 * ds.f12);
}

cplx residual_a2_second(cplx x, cplx y, const HalfPlanePoint& tau, const SeriesPolicy& policy) {
    ThirdDerivs dx = f_third_derivs(x, tau, policy);
    ThirdDerivs dy = f_third_derivs(y, tau, policy);
    ThirdDerivs ds = f_third_derivs(x + y, tau, policy);
    cplx quad = dx.f30 * (ds.f12 - dy.f12) + dy.f30 * (ds.f12 - dx.f12) -
                (2.0 / 3.0) * ds.f30 * (dx.f12 + dy.f12);
    cplx cross = (2.0 / 3.0) * ds.f21 * dx.f21 + (2.0 / 3.0) * ds.f21 * dy.f21 -
                 (8.0 / 3.0) * dx.f21 * dy.f21;
    return quad + cross + (10.0 / 9.0) * ds.f03 + eisenstein(4, tau, 0, policy) / 108.0;
}

cplx residual_b2(B2Set set_id, cplx x, cplx y, const HalfPlanePoint& tau,
                 const SeriesPolicy& policy) {
    ThirdDerivs dx = f_third_derivs(x, tau, policy);
    ThirdDerivs dy = f_third_derivs(y, tau, policy);
    ThirdDerivs d1 = f_third_derivs(x + y, tau, policy);
    ThirdDerivs d2 = f_third_derivs(x + 2.0 * y, tau, policy);
    switch (set_id) {
        case B2Set::a1:
            return dx.f30 * (dy.f21 - d1.f21) + d1.f30 * (dx.f21 - d2.f21) +
                   d2.f30 * (d1.f21 - dy.f21) +
                   (0.5 * dx.f12 - 0.5 * d2.f12 - 2.0 * dy.f12);
        case B2Set::a2:
            return dy.f30 * (d2.f21 - dx.f21) + d1.f30 * (dx.f21 - d2.f21) +
                   2.0 * d2.f30 * (d1.f21 - dy.f21) +
                   (dx.f12 + 2.0 * d1.f12 - 2.0 * dy.f12);
        case B2Set::b1:
            return dx.f30 * (d1.f12 - dy.f12) + d1.f30 * (dx.f12 + d2.f12) +
                   d2.f30 * (d1.f12 + dy.f12) -
                   2.0 * (d1.f21 * dx.f21 + d1.f21 * d2.f21) +
                   (dx.f03 + 2.0 * d1.f03 + d2.f03 + 6.0 * dy.f03) / 3.0 +
                   eisenstein(4, tau, 0, policy) / 36.0;
        case B2Set::b2:
            // The f03(x) coefficient is 3/3, not 1/3: with 1/3 the identity
            // fails at order q (unique single-coefficient completion).
            return dy.f30 * (d2.f12 - dx.f12) + 4.0 * d2.f30 * (dy.f12 + d1.f12) +
                   d1.f30 * (dx.f12 + d2.f12) -
                   4.0 * (d2.f21 * d1.f21 + d2.f21 * dy.f21) +
                   (3.0 * dx.f03 + 8.0 * d1.f03 + d2.f03 + 8.0 * dy.f03) / 3.0 +
                   eisenstein(4, tau, 0, policy) / 18.0;
    }
    throw domain_error("residual_b2: unknown set");
}

cplx residual_rational_limit(const ConstrainedTriple& t) {
    if (t.a == cplx(0.0) || t.b == cplx(0.0) || t.c == cplx(0.0))
        throw domain_error("residual_rational_limit: zero denominator");
    return 1.0 / (t.a * t.b) + 1.0 / (t.b * t.c) + 1.0 / (t.c * t.a);
}

cplx residual_trig_limit(const ConstrainedTriple& t) {
    auto cot = [](cplx x) {
        cplx s = std::sin(x);
        if (std::abs(s) < 1e-12) throw domain_error("residual_trig_limit: cotangent pole");
        return std::cos(x) / s;
    };
    cplx ca = cot(t.a), cb = cot(t.b), cc = cot(t.c);
    return ca * cb + cb * cc + cc * ca - 1.0;
}

// ---------------------------------------------------------------------------
// Sampling and suite driver.

namespace {

struct Sampler {
    SplitMix64 rng;
    const SamplePlan& plan;
    long resamples = 0;
    long accepted = 0;

    Sampler(const SamplePlan& p, std::uint64_t stream) : rng(p.seed * 0x100003ULL + stream), plan(p) {}

    cplx in_rect(const Rect& r) {
        return {rng.uniform(r.re_lo, r.re_hi), rng.uniform(r.im_lo, r.im_hi)};
    }

    HalfPlanePoint tau() { return HalfPlanePoint(in_rect(plan.tau_range)); }

    // Draw until pred accepts; every rejection is a logged resample.
    template <typename Gen, typename Pred>
    auto accept(Gen&& gen, Pred&& pred) {
        for (int tries = 0; tries < 10000; ++tries) {
            auto cand = gen();
            if (pred(cand)) {
                ++accepted;
                return cand;
            }
            ++resamples;
        }
        throw domain_error("sampler: admissible sample not found (resample limit)");
    }

    void check_rate() const {
        long attempts = accepted + resamples;
        if (attempts > 0 && resamples * 10 > attempts * 9)
            throw domain_error("sampler: resample rate above 90%");
    }
};

// Shrink a z-box so a linear combination with coefficient sum `scale` stays
// well inside the strip.
Rect shrink_im(Rect r, double max_abs_im) {
    r.im_lo = std::max(r.im_lo, -max_abs_im);
    r.im_hi = std::min(r.im_hi, max_abs_im);
    return r;
}

}  // namespace

SamplePlan make_plan(const RunConfig& config) {
    SamplePlan plan;
    plan.seed = config.seed;
    plan.count = config.samples;
    plan.tau_range = Rect{-0.45, 0.45, config.tau_min_im, config.tau_max_im};
    plan.pole_margin = config.pole_margin;
    return plan;
}

ResidualReport run_suite(const SamplePlan& plan, double tol, const SeriesPolicy& policy,
                         int threads) {
    ResidualReport report;
    report.config.command = "verify";
    report.config.seed = plan.seed;
    report.config.samples = plan.count;
    report.config.tol = tol;
    report.config.tau_min_im = plan.tau_range.im_lo;
    report.config.tau_max_im = plan.tau_range.im_hi;
    report.config.pole_margin = plan.pole_margin;
    report.config.policy = policy;

    if (plan.count == 0) {
        report.finalize();
        return report;
    }
    const double margin = plan.pole_margin;

    struct Entry {
        std::string id;
        int count;
        std::function<cplx(Sampler&)> eval;
    };
    std::vector<Entry> entries;

    auto triple_gen = [margin](Sampler& s, const Rect& box, const HalfPlanePoint& tau) {
        return s.accept(
            [&] { return ConstrainedTriple(s.in_rect(box), s.in_rect(box)); },
            [&](const ConstrainedTriple& t) {
                return lattice_distance(t.a, tau) >= margin &&
                       lattice_distance(t.b, tau) >= margin &&
                       lattice_distance(t.c, tau) >= margin;
            });
    };

    const Rect zbox = plan.z_box;
    entries.push_back({"fs_weierstrass", plan.count, [=](Sampler& s) {
                           HalfPlanePoint tau = s.tau();
                           return residual_fs_weierstrass(triple_gen(s, zbox, tau), tau, policy);
                       }});
    entries.push_back({"fs_theta", plan.count, [=](Sampler& s) {
                           HalfPlanePoint tau = s.tau();
                           return residual_fs_theta(triple_gen(s, zbox, tau), tau, policy);
                       }});
    entries.push_back({"fs_trilog", plan.count, [=](Sampler& s) {
                           HalfPlanePoint tau = s.tau();
                           return residual_fs_trilog(triple_gen(s, zbox, tau), tau, policy);
                       }});
    entries.push_back({"thm31_delta", plan.count, [=](Sampler& s) {
                           HalfPlanePoint tau = s.tau();
                           cplx z = s.accept([&] { return s.in_rect(zbox); },
                                             [&](cplx c) { return lattice_distance(c, tau) >= margin; });
                           return residual_delta(z, tau, policy);
                       }});
    entries.push_back({"thm31_delta_zspread", std::max(plan.count / 10, 1), [=](Sampler& s) {
                           HalfPlanePoint tau = s.tau();
                           cplx base = 0.0;
                           double spread = 0.0;
                           for (int i = 0; i < 20; ++i) {
                               cplx z = s.accept([&] { return s.in_rect(zbox); },
                                                 [&](cplx c) { return lattice_distance(c, tau) >= margin; });
                               ThirdDerivs d = f_third_derivs(z, tau, policy);
                               cplx delta = d.f30 * d.f12 - d.f21 * d.f21 + d.f03 / 3.0;
                               if (i == 0)
                                   base = delta;
                               else
                                   spread = std::max(spread, std::abs(delta - base));
                           }
                           return cplx(spread, 0.0);
                       }});

    auto rank2_entry = [&](RootSystem2D sys, double im_cap) {
        std::string id = "rank2_" + std::string(sys.name == "A2" ? "a2" : sys.name == "B2" ? "b2" : "g2");
        Rect box = shrink_im(zbox, im_cap);
        entries.push_back({id, std::max(plan.count / 2, 1), [=](Sampler& s) {
                               HalfPlanePoint tau = s.tau();
                               auto zv = s.accept(
                                   [&] { return std::array<cplx, 2>{s.in_rect(box), s.in_rect(box)}; },
                                   [&](const std::array<cplx, 2>& z) {
                                       for (const auto& a : sys.pos_roots)
                                           if (lattice_distance(pair_z(z, a), tau) < margin) return false;
                                       return true;
                                   });
                               return residual_rank2(sys, zv, tau, policy);
                           }});
    };
    rank2_entry(root_system_a2(), 0.15);
    rank2_entry(root_system_b2(), 0.15);
    rank2_entry(root_system_g2(), 0.09);

    auto xy_gen = [margin](Sampler& s, const Rect& box, const HalfPlanePoint& tau, bool with_2y) {
        struct XY {
            cplx x, y;
        };
        return s.accept(
            [&] { return XY{s.in_rect(box), s.in_rect(box)}; },
            [&](const XY& v) {
                if (lattice_distance(v.x, tau) < margin) return false;
                if (lattice_distance(v.y, tau) < margin) return false;
                if (lattice_distance(v.x + v.y, tau) < margin) return false;
                if (with_2y && lattice_distance(v.x + 2.0 * v.y, tau) < margin) return false;
                return true;
            });
    };
    const Rect xybox = shrink_im(zbox, 0.12);
    entries.push_back({"a2_first", std::max(plan.count / 2, 1), [=](Sampler& s) {
                           HalfPlanePoint tau = s.tau();
                           auto v = xy_gen(s, xybox, tau, false);
                           return residual_a2_first(v.x, v.y, tau, policy);
                       }});
    entries.push_back({"a2_second", std::max(plan.count / 2, 1), [=](Sampler& s) {
                           HalfPlanePoint tau = s.tau();
                           auto v = xy_gen(s, xybox, tau, false);
                           return residual_a2_second(v.x, v.y, tau, policy);
                       }});
    for (auto [set, name] : {std::pair{B2Set::a1, "b2_a1"}, {B2Set::a2, "b2_a2"},
                             {B2Set::b1, "b2_b1"}, {B2Set::b2, "b2_b2"}}) {
        entries.push_back({name, std::max(plan.count / 2, 1), [=](Sampler& s) {
                               HalfPlanePoint tau = s.tau();
                               auto v = xy_gen(s, xybox, tau, true);
                               return residual_b2(set, v.x, v.y, tau, policy);
                           }});
    }

    entries.push_back({"rational_limit", plan.count, [=](Sampler& s) {
                           auto t = s.accept(
                               [&] {
                                   return ConstrainedTriple(
                                       cplx(s.rng.uniform(-1.2, 1.2), s.rng.uniform(-0.6, 0.6)),
                                       cplx(s.rng.uniform(-1.2, 1.2), s.rng.uniform(-0.6, 0.6)));
                               },
                               [&](const ConstrainedTriple& t) {
                                   return std::abs(t.a) > 0.1 && std::abs(t.b) > 0.1 &&
                                          std::abs(t.c) > 0.1;
                               });
                           return residual_rational_limit(t);
                       }});
    entries.push_back({"trig_limit", plan.count, [=](Sampler& s) {
                           auto off_pi = [](cplx v) {
                               return std::abs(v - pi * std::round(v.real() / pi)) > 0.15;
                           };
                           auto t = s.accept(
                               [&] {
                                   return ConstrainedTriple(
                                       cplx(s.rng.uniform(-1.2, 1.2), s.rng.uniform(-0.5, 0.5)),
                                       cplx(s.rng.uniform(-1.2, 1.2), s.rng.uniform(-0.5, 0.5)));
                               },
                               [&](const ConstrainedTriple& t) {
                                   return off_pi(t.a) && off_pi(t.b) && off_pi(t.c);
                               });
                           return residual_trig_limit(t);
                       }});

    // Evaluate.  Samples for one identity come from one deterministic stream
    // evaluated serially; identities run in parallel.
    std::vector<IdentityStats> stats(entries.size());
    std::vector<SampleLog> logs(entries.size());
    parallel_for(static_cast<int>(entries.size()), threads, [&](int i) {
        const Entry& e = entries[i];
        Sampler s(plan, static_cast<std::uint64_t>(i) + 1);
        std::vector<double> mags;
        mags.reserve(e.count);
        for (int k = 0; k < e.count; ++k) mags.push_back(std::abs(e.eval(s)));
        s.check_rate();
        stats[i] = summarize(e.id, mags, tol, s.resamples);
        logs[i] = SampleLog{e.id, std::move(mags)};
    });
    for (std::size_t i = 0; i < entries.size(); ++i)
        report.add(stats[i], std::move(logs[i].abs_residuals));
    report.finalize();
    return report;
}

}  // namespace ellitri
