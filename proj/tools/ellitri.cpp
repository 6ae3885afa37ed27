// ellitri: evaluate the elliptic trilogarithm and its special-function
// substrate, verify the identity suite, check vee-systems/WDVV, and run the
// Dunkl-operator checks.  Exit codes: 0 pass, 1 verification failure,
// 2 usage/parse, 3 domain violation, 4 I/O.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ellitri/identities.hpp"
#include "ellitri/special.hpp"
#include "ellitri/trilog.hpp"
#include "ellitri/verify.hpp"

using namespace ellitri;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct EvalArgs {
    std::string fn;
    std::string z = "0";
    std::string tau = "1i";
    std::string zeta = "1";
    int n = 0, m = 0;
    int dz = 0, dtau = 0;
    int k = 4;
    int order = 3;
};

struct CommonArgs {
    std::uint64_t seed = 1;
    int samples = 100;
    double tol = 1e-8;
    double tau_min_im = 0.8;
    double eps = 1e-16;
    int max_terms = 4096;
    std::string json_path;
    std::string csv_path;
};

RunConfig to_config(const CommonArgs& a, const std::string& command) {
    RunConfig c;
    c.command = command;
    c.seed = a.seed;
    c.samples = a.samples;
    c.tol = a.tol;
    c.tau_min_im = a.tau_min_im;
    c.policy.eps = a.eps;
    c.policy.max_terms = a.max_terms;
    return c;
}

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--seed", a.seed, "sample-plan seed");
    cmd->add_option("--samples", a.samples, "samples per identity");
    cmd->add_option("--tol", a.tol, "pass/fail tolerance on |residual|");
    cmd->add_option("--tau-min-im", a.tau_min_im, "lower edge of the Im(tau) sampling range");
    cmd->add_option("--eps", a.eps, "series truncation target");
    cmd->add_option("--max-terms", a.max_terms, "series term cap");
    cmd->add_option("--json", a.json_path, "write the JSON report to this path");
    cmd->add_option("--csv", a.csv_path, "write the per-sample CSV to this path");
}

int emit_report(const ResidualReport& report, const CommonArgs& a) {
    std::string json = to_json(report);
    if (!a.json_path.empty()) {
        std::ofstream out(a.json_path, std::ios::binary);
        out << json;
        if (!out) {
            std::cerr << "ellitri: cannot write " << a.json_path << "\n";
            return kExitIo;
        }
    }
    if (!a.csv_path.empty()) {
        std::ofstream out(a.csv_path, std::ios::binary);
        out << to_csv(report);
        if (!out) {
            std::cerr << "ellitri: cannot write " << a.csv_path << "\n";
            return kExitIo;
        }
    }
    if (a.json_path.empty()) std::cout << json;
    for (const auto& s : report.identities)
        std::fprintf(stderr, "%-28s max %.3e  %s\n", s.identity_id.c_str(), s.max_abs,
                     s.pass ? "pass" : "FAIL");
    return report.overall_pass ? kExitPass : kExitVerifyFail;
}

int run_eval(const EvalArgs& e) {
    cplx z, tau_c, zeta;
    try {
        z = parse_complex(e.z);
        tau_c = parse_complex(e.tau);
        zeta = parse_complex(e.zeta);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "ellitri: " << ex.what() << "\n";
        return kExitUsage;
    }
    cplx value;
    if (e.fn == "f") {
        value = f_eval(StripPoint(z, HalfPlanePoint(tau_c)));
    } else if (e.fn == "f_deriv") {
        value = f_deriv({e.n, e.m}, StripPoint(z, HalfPlanePoint(tau_c)));
    } else if (e.fn == "theta1") {
        value = theta1(z, HalfPlanePoint(tau_c), e.dz, e.dtau);
    } else if (e.fn == "eisenstein") {
        value = eisenstein(e.k, HalfPlanePoint(tau_c), e.m);
    } else if (e.fn == "eta") {
        value = dedekind_eta(HalfPlanePoint(tau_c));
    } else if (e.fn == "li3") {
        value = polylog(e.order, z);
    } else if (e.fn == "elliptic_li3") {
        value = elliptic_li3_direct(zeta, HalfPlanePoint(tau_c));
    } else {
        std::cerr << "ellitri: unknown function `" << e.fn << "`\n";
        return kExitUsage;
    }
    std::printf("%s %s\n", format_double(value.real()).c_str(),
                format_double(value.imag()).c_str());
    std::printf("{\"fn\": \"%s\", \"im\": %s, \"re\": %s}\n", e.fn.c_str(),
                format_double(value.imag()).c_str(), format_double(value.real()).c_str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic trilogarithm evaluator and identity verifier"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one function at one point");
    eval_cmd->add_option("fn", eval_args.fn,
                         "one of: f f_deriv theta1 eisenstein eta li3 elliptic_li3")
        ->required();
    eval_cmd->add_option("--z", eval_args.z, "argument z (complex literal, e.g. 0.3+0.1i)");
    eval_cmd->add_option("--tau", eval_args.tau, "modular parameter (Im > 0)");
    eval_cmd->add_option("--zeta", eval_args.zeta, "argument of elliptic_li3");
    eval_cmd->add_option("--n", eval_args.n, "z-derivative order (f_deriv)");
    eval_cmd->add_option("--m", eval_args.m, "tau-derivative order (f_deriv, eisenstein)");
    eval_cmd->add_option("--dz", eval_args.dz, "theta1 z-derivative order (0..3)");
    eval_cmd->add_option("--dtau", eval_args.dtau, "theta1 tau-derivative order (0..1)");
    eval_cmd->add_option("--k", eval_args.k, "Eisenstein weight (2, 4 or 6)");
    eval_cmd->add_option("--order", eval_args.order, "polylogarithm order (li3)");

    CommonArgs verify_args;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the full identity suite");
    add_common(verify_cmd, verify_args);

    CommonArgs wdvv_args;
    std::string builtin_name, system_path;
    CLI::App* wdvv_cmd = app.add_subcommand("wdvv", "vee-system and WDVV checks");
    add_common(wdvv_cmd, wdvv_args);
    wdvv_cmd->add_option("--builtin", builtin_name,
                         "built-in system (a1-dual, a1-weight3, a2-roots-unit-weights, "
                         "a2-full-roots-unit-weights, a1xa1)");
    wdvv_cmd->add_option("--system", system_path, "vee-system file");

    CommonArgs dunkl_args;
    double trig_T = 20.0;
    CLI::App* dunkl_cmd = app.add_subcommand("dunkl", "Dunkl-type operator checks");
    add_common(dunkl_cmd, dunkl_args);
    dunkl_cmd->add_option("--trig-limit-T", trig_T, "Im(tau) for the trigonometric limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        std::cerr << "ellitri: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_args);
        if (verify_cmd->parsed())
            return emit_report(verify_all(to_config(verify_args, "verify")), verify_args);
        if (wdvv_cmd->parsed()) {
            if (builtin_name.empty() == system_path.empty()) {
                std::cerr << "ellitri: wdvv needs exactly one of --builtin or --system\n";
                return kExitUsage;
            }
            VeeSystem sys;
            std::string name;
            if (!builtin_name.empty()) {
                sys = builtin_system(builtin_name);
                name = builtin_name;
            } else {
                sys = load_vee_system(system_path);
                name = system_path;
            }
            return emit_report(wdvv_report(sys, name, to_config(wdvv_args, "wdvv")), wdvv_args);
        }
        if (dunkl_cmd->parsed())
            return emit_report(dunkl_report(to_config(dunkl_args, "dunkl"), trig_T), dunkl_args);
    } catch (const parse_error& e) {
        std::cerr << "ellitri: " << e.what() << "\n";
        return kExitUsage;
    } catch (const domain_error& e) {
        std::cerr << "ellitri: " << e.what() << "\n";
        return kExitDomain;
    } catch (const convergence_error& e) {
        std::cerr << "ellitri: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "ellitri: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::runtime_error& e) {
        std::cerr << "ellitri: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
