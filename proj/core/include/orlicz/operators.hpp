#ifndef ORLICZ_OPERATORS_HPP
#define ORLICZ_OPERATORS_HPP

#include <optional>
#include <vector>

#include "orlicz/grid.hpp"

namespace orlicz {

/// Operator result plus optional per-point witness cubes (for maximal-type
/// operators) and wall-clock timing.
struct OperatorOutput {
    GridFunction result;
    std::optional<std::vector<Cube>> witness;
    double elapsed_seconds = 0.0;
};

/// Hardy-Littlewood maximal function: per point, max of cube averages of |f|
/// over family cubes containing the point.  The centered variant restricts
/// to odd-sided cubes whose center cell is the point.
OperatorOutput hl_maximal(const GridFunction& f, const CubeFamily& family,
                          bool centered = false, bool record_witness = false);

/// Fractional maximal function: weight |Q|^{alpha/n - 1} times the cube sum.
/// alpha = 0 reproduces hl_maximal bit-for-bit (same code path).
OperatorOutput fractional_maximal(const GridFunction& f, double alpha,
                                  const CubeFamily& family, bool centered = false,
                                  bool record_witness = false);

/// Sharp maximal function: sup over cubes of the mean oscillation of f.
OperatorOutput sharp_maximal(const GridFunction& f, const CubeFamily& family,
                             bool record_witness = false);

/// Maximal commutator: sup over Q containing x of
/// |Q|^{alpha/n - 1} * integral over Q of |b(x) - b(y)| |f(y)| dy.
OperatorOutput maximal_commutator(const GridFunction& b, const GridFunction& f,
                                  double alpha, const CubeFamily& family);

/// Commutator of the fractional maximal operator:
/// [M_alpha, b] f = M_alpha(bf) - b * M_alpha(f); signed output.
OperatorOutput fm_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                             const CubeFamily& family);

/// Riesz potential: discrete convolution with |x - y|^{alpha - n}; the
/// self-cell weight is the oversampled cell average of the kernel.  Refuses
/// more than 2^26 point pairs unless override_cap is set.
OperatorOutput riesz_potential(const GridFunction& f, double alpha,
                               bool override_cap = false);

/// [I_alpha, b] f = I_alpha(bf) - b * I_alpha(f); signed output.
OperatorOutput riesz_commutator(const GridFunction& b, const GridFunction& f, double alpha,
                                bool override_cap = false);

/// I_{b,alpha} f: convolution against |b(x) - b(y)| |x - y|^{alpha - n}.
OperatorOutput riesz_abs_commutator(const GridFunction& b, const GridFunction& f,
                                    double alpha, bool override_cap = false);

/// Restricted fractional maximal M_{alpha,Q0}: sup over family subcubes of
/// q0 containing the point (singleton cells always included); zero outside
/// q0.
GridFunction restricted_maximal(const GridFunction& f, double alpha,
                                const CubeFamily& family, const Cube& q0);

} // namespace orlicz

#endif
