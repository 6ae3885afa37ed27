#ifndef ELLITRI_REPORT_HPP
#define ELLITRI_REPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ellitri/core.hpp"

namespace ellitri {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Everything a run needs, echoed verbatim into the report.
struct RunConfig {
    std::string command = "verify";
    std::uint64_t seed = 1;
    int samples = 100;
    double tol = 1e-8;
    double tau_min_im = 0.8;
    double tau_max_im = 2.0;
    double pole_margin = 0.05;
    SeriesPolicy policy;
    int threads = 0;  // 0 = auto

    void validate() const {
        if (!(tol > 0.0)) throw domain_error("RunConfig: tol must be positive");
        if (samples < 0) throw domain_error("RunConfig: samples must be >= 0");
        if (!(tau_min_im >= 0.5))
            throw domain_error("RunConfig: tau_min_im below the series-convergence floor 0.5");
        if (!(tau_max_im >= tau_min_im)) throw domain_error("RunConfig: empty tau range");
        if (!(pole_margin > 0.0)) throw domain_error("RunConfig: pole_margin must be positive");
        policy.validate();
    }
};

// Aggregate statistics for one identity over the sampled points.
struct IdentityStats {
    std::string identity_id;
    int samples_used = 0;
    long resamples = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double p99_abs = 0.0;
    bool pass = false;
};

// Raw per-sample magnitudes, kept for the CSV writer.
struct SampleLog {
    std::string identity_id;
    std::vector<double> abs_residuals;
};

struct ResidualReport {
    std::string tool_version = kToolVersion;
    RunConfig config;
    std::vector<IdentityStats> identities;
    std::vector<SampleLog> sample_logs;
    // Free-form scalar facts (h_vee, verdicts, ...) for wdvv/dunkl reports.
    std::vector<std::pair<std::string, std::string>> notes;
    bool overall_pass = true;

    void add(IdentityStats s, std::vector<double> samples_abs);
    void finalize();  // sorts records, recomputes overall_pass
};

// Reduce raw magnitudes to stats against tol.
IdentityStats summarize(const std::string& id, const std::vector<double>& abs_residuals,
                        double tol, long resamples = 0);

// Deterministic serialization: keys sorted, floats as %.16e (17 significant
// digits, scientific).  Byte-identical output for identical inputs.
std::string to_json(const ResidualReport& report);

// One row per (identity, sample).
std::string to_csv(const ResidualReport& report);

std::string format_double(double v);

}  // namespace ellitri

#endif
