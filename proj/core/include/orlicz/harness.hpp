#ifndef ORLICZ_HARNESS_HPP
#define ORLICZ_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

/// One test-bank entry: a named sampler to be evaluated on the run grid.
struct BankCase {
    std::string id;
    std::function<double(const Point&)> sample;
};

/// Deterministic test banks.  Known names: "smooth" (Gaussians), "indicators"
/// (nested dyadic cube indicators), "cusps" (truncated power singularities),
/// "oscillatory", "symbols" (log spikes, smoothed steps), "symbols-negative",
/// and "random" / "random:<seed>" (dyadic-rational noise fields).  Throws
/// std::invalid_argument for unknown names.
std::vector<BankCase> builtin_testbank(const std::string& name);

/// Suite-run configuration.  Exponent bookkeeping: when p and q are both
/// given, alpha/n must equal 1/p - 1/q to 1e-12, and r must lie in
/// (alpha/n, 1/p].
struct SuiteConfig {
    nlohmann::json phi_spec;            // serialized Phi
    double p = 2.0;
    double q = 0.0;                     // 0 means "not given"
    double r = 0.5;
    double alpha = 0.0;
    int n = 1;                          // grid dimension
    double box_lo = -1.0, box_hi = 1.0;
    int base_resolution = 64;
    int levels = 3;                     // refinement doublings, >= 3 for trends
    std::vector<std::string> families{"dyadic"};
    std::vector<std::string> suites;    // empty = all required suites
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 1234;

    double tol(const std::string& key, double fallback) const;
    nlohmann::json to_json() const;
    static SuiteConfig from_json(const nlohmann::json& j);
};

/// All suites a complete run must cover; a selection that skips one is
/// reported as a coverage failure.
const std::vector<std::string>& required_suites();

struct CaseLevel {
    int resolution = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct CaseResult {
    std::string suite;
    std::string case_id;
    std::vector<CaseLevel> levels;
    double trend = 0.0;                 // relative spread of the ratio across levels
    std::string verdict;                // pass | fail | inconclusive
    std::string note;

    nlohmann::json to_json() const;
    static CaseResult from_json(const nlohmann::json& j);
};

struct SuiteReport {
    std::vector<CaseResult> cases;
    std::map<std::string, double> constants;
    std::vector<std::string> uncovered;
    std::string config_hash;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;       // excluded from determinism comparisons

    bool any_fail() const;
    bool any_inconclusive() const;
    /// 0 all pass, 1 any fail, 2 any inconclusive and none failing.
    int exit_code() const;

    nlohmann::json to_json() const;
    static SuiteReport from_json(const nlohmann::json& j);
};

/// Runs the selected suites over the built-in banks.  Checker precondition
/// failures abort the affected suite with a diagnostic case, never the run.
SuiteReport run_suite(const SuiteConfig& config);

/// Serializes a report to a file; format is "json", "csv" or "markdown".
void emit_report(const SuiteReport& report, const std::string& format,
                 const std::string& path);

/// Reads back a csv emitted by emit_report; numeric fields round-trip to
/// full precision.
SuiteReport report_from_csv(const std::string& path);

} // namespace orlicz

#endif
