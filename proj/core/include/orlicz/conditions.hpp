#ifndef ORLICZ_CONDITIONS_HPP
#define ORLICZ_CONDITIONS_HPP

#include <map>
#include <string>

#include <json.hpp>

#include "orlicz/phi.hpp"

namespace orlicz {

enum class Verdict { Pass, Fail, Inconclusive };

std::string verdict_name(Verdict v);

/// Verdict plus estimated constants for a structural condition check.
/// Constants are reported only on pass; failures carry witness points.
struct ConditionReport {
    std::string condition;
    Verdict verdict = Verdict::Inconclusive;
    std::map<std::string, double> constants;
    nlohmann::json witnesses = nlohmann::json::array();
    nlohmann::json sampling_plan;

    bool passed() const { return verdict == Verdict::Pass; }
    nlohmann::json to_json() const;
};

/// Sampling plan shared by the checkers.  Verdicts are trend-based: pass
/// requires the estimate to be stable (drift below drift_tol) across one
/// refinement step; estimates that keep growing under range extension fail.
struct CheckOptions {
    int x_samples = 48;     // sample points per axis over the domain
    int t_samples = 96;     // log-spaced t samples per level
    int levels = 3;         // refinement levels (>= 2)
    double drift_tol = 0.10;
    double beta_threshold = 1e-3;
    double diverge_factor = 2.0;
    double range_extension = 10.0; // t-range growth per level for aInc/aDec/equivalence
    LogGrid tgrid{};
};

/// (aInc)_p: t -> phi(x,t)/t^p is L-almost increasing; reports L-hat.
ConditionReport check_aInc(const Phi& phi, double p, const CheckOptions& opt = {});
/// (aDec)_q: t -> phi(x,t)/t^q is L-almost decreasing; reports L-hat.
ConditionReport check_aDec(const Phi& phi, double q, const CheckOptions& opt = {});
/// (A0): beta <= phi^{-1}(x,1) <= 1/beta uniformly; reports beta-hat.
ConditionReport check_A0(const Phi& phi, const CheckOptions& opt = {});
/// (A1): inverse comparability over small cubes for t in [1, 1/|Q|].
ConditionReport check_A1(const Phi& phi, const CheckOptions& opt = {});
/// (A2): decay to a limit function at infinity, witnessed by a shell-sampled
/// phi_infinity and an h(x) envelope on the small-value range.
ConditionReport check_A2(const Phi& phi, const CheckOptions& opt = {});
/// Smallest L-hat with psi(x,t/L) <= phi(x,t) <= psi(x,Lt) on samples.
ConditionReport equivalence_constant(const Phi& phi, const Phi& psi,
                                     const CheckOptions& opt = {});

} // namespace orlicz

#endif
