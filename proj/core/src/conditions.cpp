#include "orlicz/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlicz {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

nlohmann::json ConditionReport::to_json() const {
    nlohmann::json j;
    j["condition"] = condition;
    j["verdict"] = verdict_name(verdict);
    j["constants"] = constants;
    j["witnesses"] = witnesses;
    j["sampling_plan"] = sampling_plan;
    return j;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHugeConstant = 1e10; // estimates beyond this count as divergent

std::vector<Point> sample_points(const Box& box, int per_axis) {
    std::vector<Point> pts;
    if (box.dim == 1) {
        pts.reserve(per_axis);
        for (int i = 0; i < per_axis; ++i) {
            double x = box.lo[0] + (box.hi[0] - box.lo[0]) * (i + 0.5) / per_axis;
            pts.push_back(Point::d1(x));
        }
    } else {
        int m = std::max(2, static_cast<int>(std::lround(std::sqrt(per_axis))));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
                pts.push_back(Point::d2(box.lo[0] + (box.hi[0] - box.lo[0]) * (i + 0.5) / m,
                                        box.lo[1] + (box.hi[1] - box.lo[1]) * (j + 0.5) / m));
    }
    return pts;
}

nlohmann::json point_json(const Point& p) {
    if (p.dim == 1) return {p.c[0]};
    return {p.c[0], p.c[1]};
}

// Trend verdict for a per-level sequence of non-negative estimates that
// should stabilize when the condition holds.
struct Trend {
    Verdict verdict;
    double final_value;
};

Trend judge(const std::vector<double>& per_level, const CheckOptions& opt) {
    double last = per_level.back();
    if (!std::isfinite(last) || last > kHugeConstant) return {Verdict::Fail, last};
    double prev = per_level[per_level.size() - 2];
    double drift = std::abs(last - prev) / std::max(last, 1e-300);
    if (drift < opt.drift_tol) return {Verdict::Pass, last};
    bool diverging = true;
    for (std::size_t i = 1; i < per_level.size(); ++i)
        diverging = diverging && per_level[i] >= opt.diverge_factor * per_level[i - 1];
    return {diverging ? Verdict::Fail : Verdict::Inconclusive, last};
}

struct MonotoneEstimate {
    double L = 1.0;
    Point wx;
    double ws = 0.0, wt = 0.0;
};

// sup over x and s < t of ratio(x, s, t), where ratio compares phi(x,.)/t^p
// along the level's t-grid in one forward scan.
MonotoneEstimate almost_monotone_sup(const Phi& phi, double p, bool increasing,
                                     const std::vector<Point>& xs, const LogGrid& tg) {
    MonotoneEstimate best;
    auto ts = tg.points();
    for (const Point& x : xs) {
        double extreme = increasing ? 0.0 : kInf; // running max (inc) / min (dec) of r
        double extreme_t = 0.0;
        for (double t : ts) {
            double v = phi.eval(x, t);
            double r = ext_is_inf(v) ? kInf : v / std::pow(t, p);
            double ratio, s_at;
            if (increasing) {
                // r(s) <= L r(t) for s < t
                ratio = extreme > 0.0 ? extreme / r : 0.0;
                s_at = extreme_t;
                if (r > extreme) { extreme = r; extreme_t = t; }
            } else {
                // r(t) <= L r(s) for s < t
                ratio = extreme < kInf ? r / extreme : 0.0;
                s_at = extreme_t;
                if (r < extreme) { extreme = r; extreme_t = t; }
            }
            if (std::isnan(ratio)) ratio = 1.0; // inf/inf plateau
            if (ratio > best.L) best = {ratio, x, s_at, t};
        }
    }
    return best;
}

ConditionReport check_almost_monotone(const Phi& phi, double p, bool increasing,
                                      const CheckOptions& opt) {
    ConditionReport rep;
    rep.condition = increasing ? "aInc" : "aDec";
    if (p < 1.0) throw std::invalid_argument("check_aInc/aDec: exponent must be >= 1");
    std::vector<double> per_level;
    MonotoneEstimate last;
    LogGrid tg = opt.tgrid;
    tg.n = opt.t_samples;
    int xs_count = opt.x_samples;
    for (int lvl = 0; lvl < std::max(2, opt.levels); ++lvl) {
        auto xs = sample_points(phi.domain(), xs_count);
        last = almost_monotone_sup(phi, p, increasing, xs, tg);
        per_level.push_back(last.L);
        tg = tg.extended(opt.range_extension);
        tg.n = tg.n * 3 / 2;
        xs_count += xs_count / 2;
    }
    auto [verdict, value] = judge(per_level, opt);
    rep.verdict = verdict;
    rep.sampling_plan = {{"levels", per_level}, {"exponent", p}};
    if (verdict == Verdict::Pass) {
        rep.constants[increasing ? "Lp" : "Lq"] = value;
    } else if (verdict == Verdict::Fail) {
        rep.witnesses.push_back({{"x", point_json(last.wx)}, {"s", last.ws}, {"t", last.wt},
                                 {"ratio", last.L}});
    }
    return rep;
}

} // namespace

ConditionReport check_aInc(const Phi& phi, double p, const CheckOptions& opt) {
    return check_almost_monotone(phi, p, true, opt);
}

ConditionReport check_aDec(const Phi& phi, double q, const CheckOptions& opt) {
    return check_almost_monotone(phi, q, false, opt);
}

ConditionReport check_A0(const Phi& phi, const CheckOptions& opt) {
    ConditionReport rep;
    rep.condition = "A0";
    std::vector<double> per_level;
    Point worst = Point::d1(0);
    int xs_count = opt.x_samples;
    for (int lvl = 0; lvl < std::max(2, opt.levels); ++lvl) {
        double beta = kInf;
        for (const Point& x : sample_points(phi.domain(), xs_count)) {
            double inv = phi.inverse(x, 1.0);
            double b = inv <= 0.0 ? 0.0 : std::min(inv, 1.0 / inv);
            if (b < beta) { beta = b; worst = x; }
        }
        per_level.push_back(beta);
        xs_count *= 2;
    }
    double beta = per_level.back();
    double drift = std::abs(beta - per_level[per_level.size() - 2]) / std::max(beta, 1e-300);
    rep.sampling_plan = {{"levels", per_level}, {"threshold", opt.beta_threshold}};
    if (beta < opt.beta_threshold) {
        rep.verdict = Verdict::Fail;
        rep.witnesses.push_back({{"x", point_json(worst)}, {"beta", beta}});
    } else if (drift < opt.drift_tol) {
        rep.verdict = Verdict::Pass;
        rep.constants["beta"] = beta;
    } else {
        rep.verdict = Verdict::Inconclusive;
    }
    return rep;
}

ConditionReport check_A1(const Phi& phi, const CheckOptions& opt) {
    ConditionReport rep;
    rep.condition = "A1";
    const Box& box = phi.domain();
    // admissible cubes have measure <= 1
    double max_side = std::min(1.0, box.hi[0] - box.lo[0]);
    if (box.dim == 2) max_side = std::min(max_side, box.hi[1] - box.lo[1]);

    if (!phi.x_dependent()) {
        rep.verdict = Verdict::Pass;
        rep.constants["beta"] = 1.0;
        rep.sampling_plan = {{"note", "x-independent"}};
        return rep;
    }

    const int depth = 24; // cube scales max_side / 2^k
    const int t_count = std::max(8, opt.t_samples / 4);

    // worst inverse-comparability ratio over cubes of one scale; candidate
    // cube centers are a coarse lattice plus a zoom patch around the worst
    // spot found one scale up, so coefficient jumps stay straddled as the
    // cubes shrink below the lattice spacing
    auto scale_beta = [&](double side, const std::vector<Point>& centers, Point& worst_center,
                          nlohmann::json& witness) {
        double volume = box.dim == 1 ? side : side * side;
        double beta = 1.0;
        for (const Point& c : centers) {
            std::vector<Point> corners;
            if (box.dim == 1) {
                corners = {Point::d1(c.c[0] - side / 2), Point::d1(c.c[0]),
                           Point::d1(c.c[0] + side / 2)};
            } else {
                for (double dx : {-side / 2, 0.0, side / 2})
                    for (double dy : {-side / 2, 0.0, side / 2})
                        corners.push_back(Point::d2(c.c[0] + dx, c.c[1] + dy));
            }
            std::erase_if(corners, [&](const Point& p) { return !box.contains(p); });
            if (corners.size() < 2) continue;
            for (int it = 0; it < t_count; ++it) {
                double t = std::exp(std::log(1.0 / volume) * it / std::max(1, t_count - 1));
                double lo = kInf, hi = 0.0;
                Point wlo = corners[0], whi = corners[0];
                for (const Point& p : corners) {
                    double inv = phi.inverse(p, t);
                    if (inv < lo) { lo = inv; wlo = p; }
                    if (inv > hi) { hi = inv; whi = p; }
                }
                double ratio = hi > 0.0 ? lo / hi : 1.0;
                if (ratio < beta) {
                    beta = ratio;
                    worst_center = c;
                    witness = {{"x", point_json(whi)}, {"y", point_json(wlo)}, {"t", t},
                               {"cube_side", side}, {"ratio", ratio}};
                }
            }
        }
        return beta;
    };

    auto lattice = sample_points(box, opt.x_samples);
    std::vector<double> betas;
    nlohmann::json witness;
    Point zoom = lattice.front();
    bool have_zoom = false;
    for (int k = 0; k < depth; ++k) {
        double side = max_side / std::pow(2.0, k);
        std::vector<Point> centers = lattice;
        if (have_zoom) {
            // patch of centers with spacing side around the previous worst spot
            double span = 2.0 * side;
            int m = 9;
            if (box.dim == 1) {
                for (int i = 0; i < m; ++i) {
                    Point p = Point::d1(zoom.c[0] - span + 2 * span * i / (m - 1));
                    if (box.contains(p)) centers.push_back(p);
                }
            } else {
                for (int j = 0; j < m; ++j)
                    for (int i = 0; i < m; ++i) {
                        Point p = Point::d2(zoom.c[0] - span + 2 * span * i / (m - 1),
                                            zoom.c[1] - span + 2 * span * j / (m - 1));
                        if (box.contains(p)) centers.push_back(p);
                    }
            }
        }
        Point worst = centers.front();
        nlohmann::json w;
        betas.push_back(scale_beta(side, centers, worst, w));
        if (!w.is_null()) { zoom = worst; have_zoom = true; witness = w; }
    }

    double beta = *std::min_element(betas.begin(), betas.end());
    // geometric decay of beta across the finest scales means no uniform
    // constant exists
    double decay = 1.0;
    int tail = 8;
    for (int k = depth - tail; k < depth; ++k)
        decay *= betas[k] / std::max(betas[k - 1], 1e-300);
    decay = std::pow(decay, 1.0 / tail);
    double drift = std::abs(betas[depth - 1] - betas[depth - 5]) /
                   std::max(betas[depth - 1], 1e-300);

    rep.sampling_plan = {{"scale_betas", betas}, {"threshold", opt.beta_threshold},
                         {"tail_decay", decay}};
    if (beta < opt.beta_threshold || decay < 0.97) {
        rep.verdict = Verdict::Fail;
        rep.witnesses.push_back(witness);
    } else if (drift < opt.drift_tol) {
        rep.verdict = Verdict::Pass;
        rep.constants["beta"] = beta;
    } else {
        rep.verdict = Verdict::Inconclusive;
    }
    return rep;
}

ConditionReport check_A2(const Phi& phi, const CheckOptions& opt) {
    ConditionReport rep;
    rep.condition = "A2";
    const Box& box = phi.domain();
    const double s_cap = 1.0; // small-value range [0, s]

    if (!phi.x_dependent()) {
        rep.verdict = Verdict::Pass;
        rep.constants["beta"] = 1.0;
        rep.constants["h_sup"] = 0.0;
        rep.sampling_plan = {{"note", "x-independent: phi_infinity = phi, h = 0"}};
        return rep;
    }

    // geometric shells |x| = R0 * 2^k up to the domain edge
    double edge = 0.0;
    for (int a = 0; a < box.dim; ++a)
        edge = std::max(edge, std::max(std::abs(box.lo[a]), std::abs(box.hi[a])));
    double r0 = edge / 256.0;
    std::vector<double> radii;
    for (double r = r0; r <= edge * 1.0000001; r *= 2.0) radii.push_back(r);
    if (radii.size() < 4) {
        rep.verdict = Verdict::Inconclusive;
        rep.sampling_plan = {{"note", "domain too small for shell sampling"}};
        return rep;
    }

    auto shell_points = [&](double r) {
        std::vector<Point> pts;
        if (box.dim == 1) {
            for (double s : {-r, r}) {
                Point p = Point::d1(s);
                if (box.contains(p)) pts.push_back(p);
            }
        } else {
            for (int k = 0; k < 8; ++k) {
                double a = 2.0 * M_PI * k / 8.0;
                Point p = Point::d2(r * std::cos(a), r * std::sin(a));
                if (box.contains(p)) pts.push_back(p);
            }
        }
        return pts;
    };

    LogGrid tg = opt.tgrid;
    tg.n = opt.t_samples;
    auto ts = tg.points();

    // phi_infinity candidate: per-shell max over directions, outermost shell wins
    std::vector<std::vector<double>> shell_vals;
    for (double r : radii) {
        auto pts = shell_points(r);
        std::vector<double> vals(ts.size(), 0.0);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            double m = 0.0;
            for (const Point& p : pts) m = std::max(m, phi.eval(p, ts[i]));
            vals[i] = m;
        }
        shell_vals.push_back(std::move(vals));
    }
    const auto& phi_inf = shell_vals.back();

    // shell convergence on the small-value range
    double shell_drift = 0.0;
    for (std::size_t k = shell_vals.size() - 3; k + 1 < shell_vals.size(); ++k) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (phi_inf[i] > s_cap) continue;
            double a = shell_vals[k][i], b = shell_vals[k + 1][i];
            shell_drift = std::max(shell_drift, std::abs(a - b) / std::max(b, 1e-12));
        }
    }

    // h(x) envelope for a dyadic beta ladder; keep the beta with smallest
    // outer-shell envelope
    auto h_at = [&](const Point& x, double beta) {
        double h = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            double t = ts[i];
            if (phi_inf[i] <= s_cap) {
                double lhs = phi.eval(x, beta * t);
                if (!ext_is_inf(lhs)) h = std::max(h, lhs - phi_inf[i]);
            }
            double pv = phi.eval(x, t);
            if (pv <= s_cap) {
                // phi_inf at beta*t, interpolated on the sampled grid
                double target = beta * t;
                std::size_t j = 0;
                while (j + 1 < ts.size() && ts[j + 1] <= target) ++j;
                double fv = phi_inf[j];
                h = std::max(h, fv - pv);
            }
        }
        return h;
    };

    double best_beta = 1.0, best_tail = kInf;
    bool tail_decreasing = false;
    std::vector<double> best_profile;
    for (double beta = 1.0; beta >= 1.0 / 1024.0; beta /= 2.0) {
        std::vector<double> profile;
        for (double r : radii) {
            double h = 0.0;
            for (const Point& p : shell_points(r)) h = std::max(h, h_at(p, beta));
            profile.push_back(h);
        }
        std::size_t m = profile.size();
        bool dec = profile[m - 1] <= profile[m - 2] * 1.05 + 1e-12 &&
                   profile[m - 2] <= profile[m - 3] * 1.05 + 1e-12;
        if (profile.back() < best_tail) {
            best_tail = profile.back();
            best_beta = beta;
            tail_decreasing = dec;
            best_profile = profile;
        }
        if (dec && profile.back() < 1e-9) break; // already a clean envelope
    }

    rep.sampling_plan = {{"shell_radii", radii}, {"shell_drift", shell_drift},
                         {"s_cap", s_cap}};
    rep.constants.clear();
    nlohmann::json evidence = {{"beta", best_beta}, {"h_shell_profile", best_profile}};
    if (shell_drift < opt.drift_tol && tail_decreasing) {
        rep.verdict = Verdict::Pass;
        rep.constants["beta"] = best_beta;
        rep.constants["h_sup"] = best_profile.empty() ? 0.0 :
            *std::max_element(best_profile.begin(), best_profile.end());
        rep.witnesses.push_back(evidence);
    } else if (!tail_decreasing && shell_drift >= opt.drift_tol) {
        rep.verdict = Verdict::Fail;
        rep.witnesses.push_back(evidence);
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.witnesses.push_back(evidence);
    }
    return rep;
}

ConditionReport equivalence_constant(const Phi& phi, const Phi& psi, const CheckOptions& opt) {
    ConditionReport rep;
    rep.condition = "equivalence";

    auto feasible = [&](double L, const std::vector<Point>& xs, const std::vector<double>& ts) {
        for (const Point& x : xs) {
            for (double t : ts) {
                double a = psi.eval(x, t / L), b = phi.eval(x, t), c = psi.eval(x, L * t);
                bool lo_ok = ext_is_inf(b) || a <= b * (1.0 + 1e-12) ||
                             (ext_is_inf(a) && ext_is_inf(b));
                bool hi_ok = ext_is_inf(c) || b <= c * (1.0 + 1e-12);
                if (ext_is_inf(a) && !ext_is_inf(b)) lo_ok = false;
                if (ext_is_inf(b) && !ext_is_inf(c)) hi_ok = false;
                if (!lo_ok || !hi_ok) return false;
            }
        }
        return true;
    };

    std::vector<double> per_level;
    LogGrid tg = opt.tgrid;
    tg.n = opt.t_samples;
    for (int lvl = 0; lvl < std::max(2, opt.levels); ++lvl) {
        auto xs = sample_points(phi.domain(), opt.x_samples);
        auto ts = tg.points();
        double lo = 1.0, hi = 1.0;
        if (feasible(1.0, xs, ts)) {
            per_level.push_back(1.0);
        } else {
            while (hi < kHugeConstant && !feasible(hi, xs, ts)) hi *= 2.0;
            if (hi >= kHugeConstant) {
                per_level.push_back(kInf);
            } else {
                lo = hi / 2.0;
                for (int it = 0; it < 60; ++it) {
                    double mid = std::sqrt(lo * hi);
                    if (feasible(mid, xs, ts))
                        hi = mid;
                    else
                        lo = mid;
                }
                per_level.push_back(hi);
            }
        }
        tg = tg.extended(opt.range_extension);
    }
    auto [verdict, value] = judge(per_level, opt);
    rep.verdict = verdict;
    rep.sampling_plan = {{"levels", per_level}};
    if (verdict == Verdict::Pass) rep.constants["L"] = value;
    return rep;
}

} // namespace orlicz
