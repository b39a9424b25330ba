#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlicz {

nlohmann::json NormResult::to_json() const {
    return {{"value", value},
            {"iterations", iterations},
            {"bracket", {bracket[0], bracket[1]}},
            {"modular_at_value", modular_at_value}};
}

ExtReal modular(const Phi& phi, const GridFunction& f) {
    const Grid& g = f.grid();
    double cellvol = g.cell_volume();
    double sum = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
        double v = phi.eval(g.cell_center(i), std::abs(f[i]));
        if (ext_is_inf(v)) return ExtReal::inf();
        sum += v;
        if (sum * cellvol >= ExtReal::kCap) return ExtReal::inf();
    }
    return ExtReal(ext_saturate(sum * cellvol));
}

namespace {

// modular of f / lambda, with infinity meaning "lambda too small"
double scaled_modular(const Phi& phi, const GridFunction& f, double lambda) {
    const Grid& g = f.grid();
    double cellvol = g.cell_volume();
    double sum = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
        double v = phi.eval(g.cell_center(i), std::abs(f[i]) / lambda);
        if (ext_is_inf(v)) return ExtReal::kCap;
        sum += v;
        if (sum * cellvol >= ExtReal::kCap) return ExtReal::kCap;
    }
    return sum * cellvol;
}

} // namespace

NormResult luxemburg_norm(const Phi& phi, const GridFunction& f, double rel_tol,
                          int max_iter) {
    NormResult res;
    double peak = f.max_abs();
    if (peak == 0.0) return res;

    // expand/contract by doubling until the unit modular is straddled
    double hi = peak;
    int iters = 0;
    while (scaled_modular(phi, f, hi) > 1.0) {
        hi *= 2.0;
        if (++iters > 1100)
            throw std::runtime_error("luxemburg_norm: no upper bracket below overflow");
    }
    double lo = hi;
    while (scaled_modular(phi, f, lo / 2.0) <= 1.0) {
        lo /= 2.0;
        if (++iters > 2200)
            throw std::runtime_error("luxemburg_norm: modular stays below 1 as lambda -> 0");
    }
    lo /= 2.0;

    int it = 0;
    while (hi - lo > rel_tol * hi) {
        if (++it > max_iter) {
            res.bracket = {lo, hi};
            throw std::runtime_error("luxemburg_norm: bisection failed to close, bracket [" +
                                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        double mid = 0.5 * (lo + hi);
        (scaled_modular(phi, f, mid) <= 1.0 ? hi : lo) = mid;
    }
    res.value = hi;
    res.iterations = it;
    res.bracket = {lo, hi};
    res.modular_at_value = scaled_modular(phi, f, hi);
    return res;
}

double cube_char_norm(const Phi& phi, const Grid& grid, const Cube& q) {
    double vol = cube_volume(grid, q);
    if (!phi.x_dependent()) {
        Point probe = grid.cell_center(grid.flat(q.anchor));
        double inv = phi.inverse(probe, 1.0 / vol);
        return inv > 0.0 ? 1.0 / inv : 0.0;
    }
    GridFunction chi(grid, [&](const Point& p) {
        return q.contains_cell(grid.cell_of(p), grid.dim()) ? 1.0 : 0.0;
    });
    return luxemburg_norm(phi, chi).value;
}

double measure_scaling_value(const Phi& phi, const Grid& grid, const Cube& q) {
    double vol = cube_volume(grid, q);
    double sum = 0.0;
    std::int64_t count = 0;
    const int dim = grid.dim();
    for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y) {
        for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x) {
            sum += phi.inverse(grid.cell_center(grid.flat({x, y})), 1.0 / vol);
            ++count;
        }
    }
    double avg = sum / static_cast<double>(count);
    return avg > 0.0 ? 1.0 / avg : 0.0;
}

double pairing(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("pairing: functions live on different grids");
    double s = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.grid().cell_volume();
}

double associate_lower_bound(const GridFunction& f, PhiPtr phi,
                             const std::vector<GridFunction>& dictionary) {
    auto conj = Phi::conjugate(std::move(phi));
    double best = 0.0;
    for (const GridFunction& g : dictionary) {
        double gn = luxemburg_norm(*conj, g).value;
        if (gn <= 0.0) continue;
        best = std::max(best, std::abs(pairing(f, g)) / gn);
    }
    return best;
}

} // namespace orlicz
