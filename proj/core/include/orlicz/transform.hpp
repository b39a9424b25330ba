#ifndef ORLICZ_TRANSFORM_HPP
#define ORLICZ_TRANSFORM_HPP

#include "orlicz/conditions.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

/// Result of the regularization pipeline.  The output is normalized so that
/// value(x,1) = 1 exactly; for t >= 1 it is 2 phi_2(x,t) - 1 and below 1 it
/// follows the shell-sampled limit function of phi_2.
struct RegularizeResult {
    PhiPtr phi;
    /// Set when the shell estimates of the limit function did not converge.
    bool limit_inconclusive = false;
    /// Drift across the last three shells on the small-value range.
    double shell_drift = 0.0;
};

/// Three-step regularization: rescale the argument by the unit inverse, take
/// the max with 2t-1, then splice the limit function below t = 1.  Requires
/// the unit-normalization condition; throws std::invalid_argument with the
/// checker evidence otherwise.
RegularizeResult regularize(PhiPtr phi, const CheckOptions& opt = {});

/// Target function psi with psi^{-1}(x,t) = t^{-alpha/n} phi^{-1}(x,t).
/// Requires almost-decrease at exponent 1/r for a caller-supplied
/// r in (alpha/n, +inf); refuses (std::invalid_argument) when the check
/// fails, and throws std::runtime_error when the constructed inverse is not
/// non-decreasing on the sampling grid.
PhiPtr target_psi(PhiPtr phi, double alpha, int n, double r,
                  const CheckOptions& opt = {});

/// Sharpness probe: inverts lambda(x,t) = t phi(x,t)^{-alpha/n} and returns
/// phi composed with that inverse.  Equivalent to target_psi for admissible
/// parameters; preconditions as target_psi plus monotonicity of lambda.
PhiPtr sharp_alpha(PhiPtr phi, double alpha, int n, double r,
                   const CheckOptions& opt = {});

/// phi_s(x,t) = phi(x, t^{1/s}); s > 0.
PhiPtr power_scale(PhiPtr phi, double s);

} // namespace orlicz

#endif
