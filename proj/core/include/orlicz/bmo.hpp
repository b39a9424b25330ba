#ifndef ORLICZ_BMO_HPP
#define ORLICZ_BMO_HPP

#include <map>
#include <utility>

#include <json.hpp>

#include "orlicz/conditions.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

/// Mean-oscillation seminorm report: the sup over the family, the cube
/// attaining it, and the per-side profile.
struct BMOReport {
    double seminorm = 0.0;
    Cube witness_cube{};
    std::map<int, double> per_scale; // cube side -> max oscillation at that side
    double l1_condition_value = 0.0;
    double detector_value = 0.0;

    nlohmann::json to_json() const;
};

/// sup over family cubes of the mean deviation from the cube average.
BMOReport bmo_seminorm(const GridFunction& b, const CubeFamily& family);

/// Pointwise positive and negative parts (b = b_plus - b_minus, both >= 0).
std::pair<GridFunction, GridFunction> parts(const GridFunction& b);

/// sup over family cubes Q of the mean of |b - M_Q b| over Q, where M_Q is
/// the maximal operator restricted to family subcubes of Q.
double l1_maximal_condition(const GridFunction& b, const CubeFamily& family);

/// sup over family cubes of
/// ||(b - |Q|^{-alpha/n} M_{alpha,Q} b) chi_Q||_eta / ||chi_Q||_eta.
/// eta must pass the maximal-boundedness checker set (unit normalization,
/// local continuity, decay, almost-increase past 1); refused otherwise.
double detector_fractional(const GridFunction& b, PhiPtr eta, double alpha,
                           const CubeFamily& family, const CheckOptions& opt = {});

/// As detector_fractional with alpha = 0 (plain restricted maximal).
double detector_plain(const GridFunction& b, PhiPtr psi, const CubeFamily& family,
                      const CheckOptions& opt = {});

} // namespace orlicz

#endif
