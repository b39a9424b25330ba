#include "orlicz/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orlicz/norms.hpp"
#include "orlicz/operators.hpp"

namespace orlicz {

nlohmann::json BMOReport::to_json() const {
    nlohmann::json scales = nlohmann::json::array();
    for (const auto& [side, v] : per_scale)
        scales.push_back({{"side", side}, {"oscillation", v}});
    return {{"seminorm", seminorm},
            {"witness_cube",
             {{"anchor", {witness_cube.anchor[0], witness_cube.anchor[1]}},
              {"side", witness_cube.side}}},
            {"per_scale", scales},
            {"l1_condition_value", l1_condition_value},
            {"detector_value", detector_value}};
}

namespace {

double mean_oscillation(const GridFunction& b, const Accumulator& acc, const Cube& q) {
    const Grid& g = b.grid();
    const int dim = g.dim();
    double cells = acc.cell_count(q);
    double mean = acc.cube_sum(q) / cells;
    double s = 0.0;
    for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
        for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
            s += std::abs(b[g.flat({x, y})] - mean);
    return s / cells;
}

// M_{alpha,Q} b evaluated on the cells of q0 (shared accumulator, values
// indexed row-major within q0)
std::vector<double> restricted_values(const GridFunction& b, const Accumulator& acc,
                                      double alpha, const CubeFamily& family,
                                      const Cube& q0) {
    const Grid& g = b.grid();
    const int dim = g.dim();
    const int rows = dim == 2 ? q0.side : 1;
    std::vector<double> out(static_cast<std::size_t>(rows) * q0.side, 0.0);
    auto local = [&](int x, int y) -> double& {
        return out[static_cast<std::size_t>(y - q0.anchor[1]) * q0.side + (x - q0.anchor[0])];
    };
    for (const Cube& q : family.subcubes_of(q0)) {
        double v = std::pow(cube_volume(g, q), alpha / dim - 1.0) * g.cell_volume() *
                   acc.cube_abs_sum(q);
        for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
                local(x, dim == 2 ? y : q0.anchor[1]) = std::max(local(x, dim == 2 ? y : q0.anchor[1]), v);
    }
    return out;
}

double detector_value(const GridFunction& b, PhiPtr eta, double alpha,
                      const CubeFamily& family) {
    const Grid& g = b.grid();
    const int dim = g.dim();
    Accumulator acc(b);
    double sup = 0.0;
    for (const Cube& q : family.enumerate()) {
        double qa = std::pow(cube_volume(g, q), alpha / dim);
        auto mq = restricted_values(b, acc, alpha, family, q);
        std::vector<double> dev(g.cell_count(), 0.0);
        std::size_t k = 0;
        for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x, ++k)
                dev[g.flat({x, y})] = b[g.flat({x, y})] - mq[k] / qa;
        double num = luxemburg_norm(*eta, GridFunction(g, std::move(dev))).value;
        double den = cube_char_norm(*eta, g, q);
        if (den > 0.0) sup = std::max(sup, num / den);
    }
    return sup;
}

void require_detector_eta(const Phi& eta, const CheckOptions& opt) {
    auto fail = [](const ConditionReport& rep) {
        throw std::invalid_argument("detector: weight function fails a required check: " +
                                    rep.to_json().dump());
    };
    auto a0 = check_A0(eta, opt);
    if (a0.verdict == Verdict::Fail) fail(a0);
    auto a1 = check_A1(eta, opt);
    if (a1.verdict == Verdict::Fail) fail(a1);
    auto a2 = check_A2(eta, opt);
    if (a2.verdict == Verdict::Fail) fail(a2);
    double p = std::max(1.0, eta.growth_lower());
    auto inc = check_aInc(eta, p, opt);
    if (inc.verdict == Verdict::Fail) fail(inc);
}

} // namespace

BMOReport bmo_seminorm(const GridFunction& b, const CubeFamily& family) {
    BMOReport rep;
    Accumulator acc(b);
    for (const Cube& q : family.enumerate()) {
        double osc = mean_oscillation(b, acc, q);
        auto [it, fresh] = rep.per_scale.try_emplace(q.side, osc);
        if (!fresh) it->second = std::max(it->second, osc);
        if (osc > rep.seminorm) {
            rep.seminorm = osc;
            rep.witness_cube = q;
        }
    }
    return rep;
}

std::pair<GridFunction, GridFunction> parts(const GridFunction& b) {
    const Grid& g = b.grid();
    std::vector<double> plus(g.cell_count()), minus(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        plus[i] = std::max(b[i], 0.0);
        minus[i] = -std::min(b[i], 0.0);
    }
    return {GridFunction(g, std::move(plus)), GridFunction(g, std::move(minus))};
}

double l1_maximal_condition(const GridFunction& b, const CubeFamily& family) {
    const Grid& g = b.grid();
    const int dim = g.dim();
    Accumulator acc(b);
    double sup = 0.0;
    for (const Cube& q : family.enumerate()) {
        auto mq = restricted_values(b, acc, 0.0, family, q);
        double s = 0.0;
        std::size_t k = 0;
        for (int y = q.anchor[1]; y < q.anchor[1] + (dim == 2 ? q.side : 1); ++y)
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x, ++k)
                s += std::abs(b[g.flat({x, y})] - mq[k]);
        sup = std::max(sup, s / acc.cell_count(q));
    }
    return sup;
}

double detector_fractional(const GridFunction& b, PhiPtr eta, double alpha,
                           const CubeFamily& family, const CheckOptions& opt) {
    if (!(alpha >= 0.0) || alpha >= b.grid().dim())
        throw std::invalid_argument("detector_fractional: alpha must lie in [0, n)");
    require_detector_eta(*eta, opt);
    return detector_value(b, std::move(eta), alpha, family);
}

double detector_plain(const GridFunction& b, PhiPtr psi, const CubeFamily& family,
                      const CheckOptions& opt) {
    require_detector_eta(*psi, opt);
    return detector_value(b, std::move(psi), 0.0, family);
}

} // namespace orlicz
