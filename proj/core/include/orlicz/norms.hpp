#ifndef ORLICZ_NORMS_HPP
#define ORLICZ_NORMS_HPP

#include <array>
#include <vector>

#include <json.hpp>

#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

namespace orlicz {

/// Result of a Luxemburg-norm bisection.
struct NormResult {
    double value = 0.0;
    int iterations = 0;
    std::array<double, 2> bracket{0.0, 0.0};
    double modular_at_value = 0.0;

    nlohmann::json to_json() const;
};

/// Modular: sum of phi(x_i, |f_i|) times cell volume, saturating to the
/// extended-real cap.
ExtReal modular(const Phi& phi, const GridFunction& f);

/// inf{ lambda > 0 : modular(f / lambda) <= 1 } by bisection on lambda to
/// the given relative tolerance; 0 for f identically zero.  Throws
/// std::runtime_error with bracket diagnostics when the bisection cannot
/// close within max_iter iterations.
NormResult luxemburg_norm(const Phi& phi, const GridFunction& f, double rel_tol = 1e-10,
                          int max_iter = 200);

/// Norm of the indicator of a grid cube.  For x-independent phi this is
/// 1 / phi^{-1}(1/|Q|) directly; otherwise a Luxemburg bisection.
double cube_char_norm(const Phi& phi, const Grid& grid, const Cube& q);

/// Measure-scaling estimate 1 / avg_Q phi^{-1}(x, 1/|Q|) by midpoint
/// quadrature over the cube's cells.
double measure_scaling_value(const Phi& phi, const Grid& grid, const Cube& q);

/// Integral pairing of two functions on the same grid.
double pairing(const GridFunction& f, const GridFunction& g);

/// Lower bound for the associate norm: max over dictionary entries g,
/// normalized to unit conjugate norm, of |pairing(f, g)|.
double associate_lower_bound(const GridFunction& f, PhiPtr phi,
                             const std::vector<GridFunction>& dictionary);

} // namespace orlicz

#endif
