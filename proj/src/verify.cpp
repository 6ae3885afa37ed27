#include "ellitri/verify.hpp"

#include <cmath>
#include <functional>

#include "ellitri/dunkl.hpp"
#include "ellitri/identities.hpp"
#include "ellitri/parallel.hpp"
#include "ellitri/special.hpp"
#include "ellitri/trilog.hpp"

namespace ellitri {

namespace {

struct Entry {
    std::string id;
    int count;
    std::function<double(SplitMix64&)> eval;  // one |residual| per call
};

// Evaluate a batch of entries, one deterministic stream per entry.
void run_entries(ResidualReport& report, const std::vector<Entry>& entries, std::uint64_t seed,
                 double tol, int threads, std::uint64_t stream_base) {
    std::vector<IdentityStats> stats(entries.size());
    std::vector<std::vector<double>> logs(entries.size());
    parallel_for(static_cast<int>(entries.size()), threads, [&](int i) {
        SplitMix64 rng(seed * 0x100003ULL + stream_base + static_cast<std::uint64_t>(i));
        std::vector<double> mags;
        mags.reserve(entries[i].count);
        for (int k = 0; k < entries[i].count; ++k) mags.push_back(entries[i].eval(rng));
        stats[i] = summarize(entries[i].id, mags, tol);
        logs[i] = std::move(mags);
    });
    for (std::size_t i = 0; i < entries.size(); ++i)
        report.add(stats[i], std::move(logs[i]));
}

HalfPlanePoint sample_tau(SplitMix64& rng, const RunConfig& c) {
    return HalfPlanePoint(cplx(rng.uniform(-0.45, 0.45), rng.uniform(c.tau_min_im, c.tau_max_im)));
}

cplx sample_strip_z(SplitMix64& rng, const HalfPlanePoint& tau, double margin) {
    for (int tries = 0; tries < 1000; ++tries) {
        cplx z(rng.uniform(-0.45, 0.45), rng.uniform(-0.25, 0.25));
        if (lattice_distance(z, tau) >= margin) return z;
    }
    throw domain_error("verify: admissible z not found");
}

double norm_thirds(const ThirdDerivs& a, const ThirdDerivs& b) {
    return std::max({std::abs(a.f30 - b.f30), std::abs(a.f21 - b.f21),
                     std::abs(a.f12 - b.f12), std::abs(a.f03 - b.f03)});
}

}  // namespace

ResidualReport verify_all(const RunConfig& config) {
    config.validate();
    const SeriesPolicy policy = config.policy;
    const double margin = config.pole_margin;
    SamplePlan plan = make_plan(config);

    ResidualReport report = run_suite(plan, config.tol, policy, config.threads);
    report.config = config;
    report.config.command = "verify";

    const int half = std::max(config.samples / 2, 1);
    std::vector<Entry> extra;

    extra.push_back({"e4int", 20, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         return std::abs(elliptic_li3_one_tau3(tau, policy) -
                                         eisenstein(4, tau, 0, policy) / 120.0);
                     }});

    // Quasi-periodicity: each one-step law checked with the bilateral
    // evaluator on both sides (no strip reduction involved).
    for (int which = 0; which < 4; ++which) {
        const char* ids[4] = {"shift_f30", "shift_f21", "shift_f12", "shift_f03"};
        extra.push_back({ids[which], half, [&, which, policy](SplitMix64& rng) {
                             HalfPlanePoint tau = sample_tau(rng, config);
                             cplx z = sample_strip_z(rng, tau, margin);
                             ThirdDerivs lo = f_third_derivs_bilateral(z, tau, policy);
                             ThirdDerivs hi = f_third_derivs_bilateral(z + tau.tau, tau, policy);
                             ThirdDerivs law = shift_step_up(lo);
                             switch (which) {
                                 case 0: return std::abs(hi.f30 - law.f30);
                                 case 1: return std::abs(hi.f21 - law.f21);
                                 case 2: return std::abs(hi.f12 - law.f12);
                                 default: return std::abs(hi.f03 - law.f03);
                             }
                         }});
    }
    extra.push_back({"z_plus_1_invariance", half, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z = sample_strip_z(rng, tau, margin);
                         return norm_thirds(f_third_derivs(z + 1.0, tau, policy),
                                            f_third_derivs_bilateral(z, tau, policy));
                     }});
    extra.push_back({"modular_f30", half, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z = sample_strip_z(rng, tau, margin) * 0.5;
                         if (lattice_distance(z, tau) < 0.02) z += 0.25;
                         HalfPlanePoint tinv(-1.0 / tau.tau);
                         cplx lhs = f_third_derivs_bilateral(z / tau.tau, tinv, policy).f30;
                         cplx rhs = tau.tau * f_third_derivs_bilateral(z, tau, policy).f30 - z;
                         return std::abs(lhs - rhs);
                     }});
    extra.push_back({"oracle_f_vs_li3", config.samples, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z(rng.uniform(0.05, 0.45), rng.uniform(-0.25, 0.25));
                         if (lattice_distance(z, tau) < margin) z = cplx(0.25, 0.1);
                         StripPoint p(z, tau);
                         cplx zeta = std::exp(two_pi_i * z);
                         cplx w3 = two_pi_i * two_pi_i * two_pi_i;
                         cplx direct = (elliptic_li3_direct(zeta, tau, policy) -
                                        elliptic_li3_direct(1.0, tau, policy)) /
                                       w3;
                         return std::abs(f_eval(p, policy) - direct);
                     }});
    extra.push_back({"oracle_eq5_thirdderiv", half, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z(rng.uniform(0.03, 0.1), rng.uniform(-0.05, 0.05));
                         StripPoint p(z, tau);
                         double d30 = std::abs(f_series1_thirdderiv({3, 0}, p, 8) -
                                               f_deriv({3, 0}, p, policy));
                         double d21 = std::abs(f_series1_thirdderiv({2, 1}, p, 8) -
                                               f_deriv({2, 1}, p, policy));
                         return std::max(d30, d21);
                     }});
    extra.push_back({"f_tau_shift_invariance", half, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z = sample_strip_z(rng, tau, margin);
                         HalfPlanePoint tau1(tau.tau + 1.0);
                         return std::abs(f_eval(StripPoint(z, tau1), policy) -
                                         f_eval(StripPoint(z, tau), policy));
                     }});
    extra.push_back({"ramanujan", 20, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx e2 = eisenstein(2, tau, 0, policy);
                         return std::abs(eisenstein(2, tau, 1, policy) / two_pi_i -
                                         (e2 * e2 - eisenstein(4, tau, 0, policy)) / 12.0);
                     }});
    extra.push_back({"heat_theta1", half, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z = sample_strip_z(rng, tau, margin);
                         return std::abs(theta1(z, tau, 2, 0, policy) -
                                         4.0 * pi * cplx(0, 1) * theta1(z, tau, 0, 1, policy));
                     }});
    extra.push_back({"theta1_shift_z1", half, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z = sample_strip_z(rng, tau, margin);
                         return std::abs(theta1(z + 1.0, tau, 0, 0, policy) +
                                         theta1(z, tau, 0, 0, policy));
                     }});
    extra.push_back({"theta1_shift_ztau", half, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx z = sample_strip_z(rng, tau, margin);
                         cplx factor = -std::exp(-pi * cplx(0, 1) * tau.tau - two_pi_i * z);
                         return std::abs(theta1(z + tau.tau, tau, 0, 0, policy) -
                                         factor * theta1(z, tau, 0, 0, policy));
                     }});
    extra.push_back({"eta_e2_theta_link", 20, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         cplx lead = dedekind_eta_log_deriv(tau, policy);
                         double d1 = std::abs(lead - two_pi_i / 24.0 * eisenstein(2, tau, 0, policy));
                         double d2 = std::abs(lead - theta1(0.0, tau, 3, 0, policy) /
                                                         (12.0 * pi * cplx(0, 1) *
                                                          theta1(0.0, tau, 1, 0, policy)));
                         return std::max(d1, d2);
                     }});
    extra.push_back({"e4_inversion", 20, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         HalfPlanePoint tinv(-1.0 / tau.tau);
                         cplx t2 = tau.tau * tau.tau;
                         return std::abs(eisenstein(4, tinv, 0, policy) -
                                         t2 * t2 * eisenstein(4, tau, 0, policy));
                     }});
    extra.push_back({"e6_inversion", 20, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         HalfPlanePoint tinv(-1.0 / tau.tau);
                         cplx t2 = tau.tau * tau.tau;
                         return std::abs(eisenstein(6, tinv, 0, policy) -
                                         t2 * t2 * t2 * eisenstein(6, tau, 0, policy));
                     }});
    extra.push_back({"e2_inversion", 20, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         HalfPlanePoint tinv(-1.0 / tau.tau);
                         return std::abs(eisenstein(2, tinv, 0, policy) -
                                         (tau.tau * tau.tau * eisenstein(2, tau, 0, policy) +
                                          12.0 * tau.tau / two_pi_i));
                     }});
    extra.push_back({"eta_inversion", 20, [&, policy](SplitMix64& rng) {
                         HalfPlanePoint tau = sample_tau(rng, config);
                         HalfPlanePoint tinv(-1.0 / tau.tau);
                         return std::abs(dedekind_eta(tinv, policy) -
                                         std::sqrt(tau.tau / cplx(0, 1)) *
                                             dedekind_eta(tau, policy));
                     }});
    extra.push_back({"polylog_inversion_roundtrip", half, [&, policy](SplitMix64& rng) {
                         // Upper half plane, away from the cut and unit circle.
                         cplx z(rng.uniform(-3.0, 3.0), rng.uniform(0.3, 3.0));
                         if (std::abs(z) < 1.1) z += cplx(0.0, 1.2);
                         cplx l = std::log(z);
                         cplx S = std::pow(l, 3) / 6.0 - pi * cplx(0, 1) / 2.0 * l * l -
                                  pi * pi / 3.0 * l;
                         cplx li = polylog(3, z, policy);
                         cplx li_inv = polylog(3, 1.0 / z, policy);
                         // forward: Li3(1/z) from Li3(z); back again.
                         cplx forward = li + S;
                         double r1 = std::abs(forward - li_inv);
                         double r2 = std::abs((forward - S) - li);
                         return std::max(r1, r2);
                     }});

    run_entries(report, extra, config.seed, config.tol, config.threads, 1000);
    report.finalize();
    return report;
}

ResidualReport wdvv_report(const VeeSystem& sys, const std::string& system_name,
                           const RunConfig& config,
                           const std::vector<std::vector<cplx>>* lattice_basis) {
    config.validate();
    sys.validate();
    const SeriesPolicy policy = config.policy;

    ResidualReport report;
    report.config = config;
    report.config.command = "wdvv";
    report.notes.emplace_back("system", system_name);

    WellDistributedResult wd = check_well_distributed(sys, 16, config.seed);
    report.notes.emplace_back("well_distributed", wd.is_wd ? "true" : "false");
    report.notes.emplace_back("h_vee_re", format_double(wd.h_vee.real()));
    report.notes.emplace_back("h_vee_im", format_double(wd.h_vee.imag()));
    report.notes.emplace_back("correction_applied",
                              (wd.is_wd && std::abs(wd.h_vee) > 1e-12) ? "true" : "false");
    report.add(summarize("vee_well_distributed_dev", {wd.max_dev}, config.tol), {wd.max_dev});

    QuarticResult q = check_quartic(sys, 16, config.seed);
    report.notes.emplace_back("quartic_ok", q.ok ? "true" : "false");
    report.add(summarize("vee_quartic_tensor_dev", {q.max_dev_tensor}, config.tol),
               {q.max_dev_tensor});

    if (sys.dim == 2) {
        bool reducible = false;
        std::vector<double> sums;
        for (std::size_t ai = 0; ai < sys.vectors.size(); ++ai) {
            PlaneConditionReport pc = check_plane_conditions(sys, static_cast<int>(ai), 4);
            reducible = reducible || pc.reducible;
            if (pc.reducible) continue;  // conditions hold vacuously
            for (const auto& row : pc.rows) {
                sums.push_back(row.s1);
                sums.push_back(row.s2);
                sums.push_back(row.s3);
            }
        }
        report.notes.emplace_back("plane_reducible", reducible ? "true" : "false");
        report.add(summarize("vee_plane_conditions", sums, config.tol), std::move(sums));
    }
    if (lattice_basis != nullptr)
        report.notes.emplace_back("weight_lattice",
                                  check_weight_lattice(sys, *lattice_basis) ? "true" : "false");

    // Commutator statistics over admissible seeded points.
    std::vector<Entry> entries;
    entries.push_back({"wdvv_commutator", config.samples, [&, policy](SplitMix64& rng) {
                           for (int tries = 0; tries < 1000; ++tries) {
                               HalfPlanePoint tau(cplx(rng.uniform(-0.45, 0.45),
                                                       rng.uniform(config.tau_min_im,
                                                                   config.tau_max_im)));
                               PrepotentialPoint pt{cplx(rng.uniform(-1, 1), 0.0), {}, tau};
                               pt.zvec.resize(sys.dim);
                               for (auto& c : pt.zvec)
                                   c = cplx(rng.uniform(-0.3, 0.3), rng.uniform(-0.08, 0.08));
                               bool ok = true;
                               for (const auto& a : sys.vectors) {
                                   auto ba = sys.lowered(a);
                                   cplx t = 0.0;
                                   for (int i = 0; i < sys.dim; ++i) t += pt.zvec[i] * ba[i];
                                   if (lattice_distance(t, tau) < config.pole_margin) ok = false;
                               }
                               if (!ok) continue;
                               return wdvv_residual(sys, pt, policy);
                           }
                           throw domain_error("wdvv_report: admissible point not found");
                       }});
    run_entries(report, entries, config.seed, config.tol, config.threads, 2000);
    report.finalize();
    return report;
}

ResidualReport dunkl_report(const RunConfig& config, double trig_T) {
    config.validate();
    const SeriesPolicy policy = config.policy;

    ResidualReport report;
    report.config = config;
    report.config.command = "dunkl";

    auto sample_cfg = [&](SplitMix64& rng, double im_lo, double im_hi) {
        HalfPlanePoint tau(cplx(rng.uniform(-0.3, 0.3), rng.uniform(im_lo, im_hi)));
        return DunklConfig::a2(cplx(1.0), tau);
    };
    auto sample_setup = [&](SplitMix64& rng, const DunklConfig& cfg, PolyFunction& F, Vec2& xi,
                            Vec2& eta, Vec2& z) {
        F = PolyFunction::random(rng, 3);
        xi = {cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)),
              cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        eta = {cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)),
               cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))};
        for (int tries = 0; tries < 1000; ++tries) {
            z = {cplx(rng.uniform(-0.35, 0.35), rng.uniform(-0.09, 0.09)),
                 cplx(rng.uniform(-0.35, 0.35), rng.uniform(-0.09, 0.09))};
            bool ok = true;
            for (const auto& r : cfg.roots) {
                cplx arg = r[0] * z[0] + r[1] * z[1];
                if (lattice_distance(arg, cfg.tau) < config.pole_margin ||
                    std::abs(arg) < 0.08)
                    ok = false;
            }
            if (ok) return;
        }
        throw domain_error("dunkl_report: admissible point not found");
    };

    const int n = std::max(config.samples / 2, 1);
    std::vector<Entry> entries;
    entries.push_back({"dunkl_F_0_m1", n, [&, policy](SplitMix64& rng) {
                           DunklConfig cfg = sample_cfg(rng, 0.9, 1.5);
                           PolyFunction F;
                           Vec2 xi, eta, z;
                           sample_setup(rng, cfg, F, xi, eta, z);
                           return std::abs(commutator_F(0, -1, xi, eta, F, z, cfg, policy));
                       }});
    entries.push_back({"dunkl_F00_plus_F1m1", n, [&, policy](SplitMix64& rng) {
                           DunklConfig cfg = sample_cfg(rng, 0.9, 1.5);
                           PolyFunction F;
                           Vec2 xi, eta, z;
                           sample_setup(rng, cfg, F, xi, eta, z);
                           return std::abs(commutator_F(0, 0, xi, eta, F, z, cfg, policy) +
                                           commutator_F(1, -1, xi, eta, F, z, cfg, policy));
                       }});
    entries.push_back({"dunkl_F01_negative_control", n, [&, policy](SplitMix64& rng) {
                           DunklConfig cfg = sample_cfg(rng, 0.9, 1.0);
                           PolyFunction F;
                           Vec2 xi, eta, z;
                           sample_setup(rng, cfg, F, xi, eta, z);
                           return std::abs(commutator_F(0, 1, xi, eta, F, z, cfg, policy));
                       }});
    entries.push_back({"dunkl_rational_commutator", n, [&, policy](SplitMix64& rng) {
                           DunklConfig cfg = sample_cfg(rng, 0.9, 1.5);
                           PolyFunction F;
                           Vec2 xi, eta, z;
                           sample_setup(rng, cfg, F, xi, eta, z);
                           return std::abs(commutator_pair(XiOp::rational_limit(),
                                                           XiOp::rational_limit(), xi, eta, F, z,
                                                           cfg, policy));
                       }});
    entries.push_back({"dunkl_trig_limit", 1, [&, policy, trig_T](SplitMix64& rng) {
                           return trig_limit_check(trig_T, 1.0, std::max(config.samples / 4, 4),
                                                   rng.next_u64(), policy);
                       }});
    run_entries(report, entries, config.seed, config.tol, config.threads, 3000);

    // The negative control passes by NOT vanishing.
    for (auto& s : report.identities)
        if (s.identity_id == "dunkl_F01_negative_control") s.pass = s.max_abs > 1e-4;
    report.notes.emplace_back("negative_control_threshold", "1e-4");
    report.notes.emplace_back("trig_limit_T", format_double(trig_T));
    report.finalize();
    return report;
}

}  // namespace ellitri
