#include "ellitri/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ellitri {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

cplx parse_complex(const std::string& text) {
    const char* s = text.c_str();
    char* end = nullptr;
    auto bad = [&text] { throw std::invalid_argument("bad complex literal: " + text); };
    if (text.empty()) bad();
    double first = std::strtod(s, &end);
    if (end == s) bad();
    if (*end == '\0') return cplx(first, 0.0);
    if (*end == 'i' && *(end + 1) == '\0') return cplx(0.0, first);
    if (*end != '+' && *end != '-') bad();
    const char* s2 = end;
    double second = std::strtod(s2, &end);
    if (end == s2 || *end != 'i' || *(end + 1) != '\0') bad();
    return cplx(first, second);
}

IdentityStats summarize(const std::string& id, const std::vector<double>& abs_residuals,
                        double tol, long resamples) {
    IdentityStats s;
    s.identity_id = id;
    s.samples_used = static_cast<int>(abs_residuals.size());
    s.resamples = resamples;
    if (!abs_residuals.empty()) {
        double sum = 0.0;
        for (double v : abs_residuals) {
            s.max_abs = std::max(s.max_abs, v);
            sum += v;
        }
        s.mean_abs = sum / static_cast<double>(abs_residuals.size());
        std::vector<double> sorted = abs_residuals;
        std::sort(sorted.begin(), sorted.end());
        std::size_t idx = static_cast<std::size_t>(
            std::ceil(0.99 * static_cast<double>(sorted.size())));
        s.p99_abs = sorted[std::min(idx == 0 ? 0 : idx - 1, sorted.size() - 1)];
        s.pass = s.max_abs < tol;
    }
    return s;
}

void ResidualReport::add(IdentityStats s, std::vector<double> samples_abs) {
    sample_logs.push_back(SampleLog{s.identity_id, std::move(samples_abs)});
    identities.push_back(std::move(s));
}

void ResidualReport::finalize() {
    auto by_id = [](const auto& a, const auto& b) { return a.identity_id < b.identity_id; };
    std::sort(identities.begin(), identities.end(), by_id);
    std::sort(sample_logs.begin(), sample_logs.end(), by_id);
    std::sort(notes.begin(), notes.end());
    overall_pass = true;
    for (const auto& s : identities)
        if (!s.pass) overall_pass = false;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string to_json(const ResidualReport& report) {
    std::string j = "{\n";
    const RunConfig& c = report.config;
    j += "  \"config\": {\n";
    j += "    \"command\": \"" + json_escape(c.command) + "\",\n";
    j += "    \"eps\": " + format_double(c.policy.eps) + ",\n";
    j += "    \"max_terms\": " + std::to_string(c.policy.max_terms) + ",\n";
    j += "    \"pole_margin\": " + format_double(c.pole_margin) + ",\n";
    j += "    \"samples\": " + std::to_string(c.samples) + ",\n";
    j += "    \"seed\": " + std::to_string(c.seed) + ",\n";
    j += "    \"tau_max_im\": " + format_double(c.tau_max_im) + ",\n";
    j += "    \"tau_min_im\": " + format_double(c.tau_min_im) + ",\n";
    j += "    \"threads\": " + std::to_string(c.threads) + ",\n";
    j += "    \"tol\": " + format_double(c.tol) + "\n";
    j += "  },\n";
    j += "  \"identities\": [\n";
    for (std::size_t i = 0; i < report.identities.size(); ++i) {
        const IdentityStats& s = report.identities[i];
        j += "    {\"identity_id\": \"" + json_escape(s.identity_id) + "\", ";
        j += "\"max_abs\": " + format_double(s.max_abs) + ", ";
        j += "\"mean_abs\": " + format_double(s.mean_abs) + ", ";
        j += "\"p99_abs\": " + format_double(s.p99_abs) + ", ";
        j += "\"pass\": " + std::string(s.pass ? "true" : "false") + ", ";
        j += "\"resamples\": " + std::to_string(s.resamples) + ", ";
        j += "\"samples_used\": " + std::to_string(s.samples_used) + "}";
        j += (i + 1 < report.identities.size()) ? ",\n" : "\n";
    }
    j += "  ],\n";
    j += "  \"notes\": {";
    for (std::size_t i = 0; i < report.notes.size(); ++i) {
        j += "\"" + json_escape(report.notes[i].first) + "\": \"" +
             json_escape(report.notes[i].second) + "\"";
        if (i + 1 < report.notes.size()) j += ", ";
    }
    j += "},\n";
    j += "  \"overall_pass\": " + std::string(report.overall_pass ? "true" : "false") + ",\n";
    j += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
    j += "  \"tool_version\": \"" + json_escape(report.tool_version) + "\"\n";
    j += "}\n";
    return j;
}

std::string to_csv(const ResidualReport& report) {
    std::string out = "identity_id,sample_index,abs_residual\n";
    for (const SampleLog& log : report.sample_logs)
        for (std::size_t i = 0; i < log.abs_residuals.size(); ++i)
            out += log.identity_id + "," + std::to_string(i) + "," +
                   format_double(log.abs_residuals[i]) + "\n";
    return out;
}

}  // namespace ellitri
