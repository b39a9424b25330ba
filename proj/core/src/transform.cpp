#include "orlicz/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orlicz {

namespace {

nlohmann::json box_json(const Box& b) {
    nlohmann::json j;
    j["dim"] = b.dim;
    for (int a = 0; a < b.dim; ++a) {
        j["lo"].push_back(b.lo[a]);
        j["hi"].push_back(b.hi[a]);
    }
    return j;
}

std::vector<Point> shell_points(const Box& box, double r) {
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
}

// phi_2(x,t) = max(phi(x, t * phi^{-1}(x,1)), 2t - 1)
double phi2_value(const Phi& phi, const Point& x, double t) {
    double unit = phi.inverse(x, 1.0);
    double v = phi.eval(x, t * unit);
    return std::max(v, 2.0 * t - 1.0);
}

class RegularizedPhi final : public Phi {
public:
    RegularizedPhi(PhiPtr parent, std::vector<double> lts, std::vector<double> lvals,
                   bool inconclusive, double drift)
        : Phi(parent->domain()), parent_(std::move(parent)), lts_(std::move(lts)),
          lvals_(std::move(lvals)), inconclusive_(inconclusive), drift_(drift) {}

    double value_raw(const Point& x, double t) const override {
        if (t == 1.0) return 1.0;
        if (t >= 1.0) return ext_saturate(2.0 * phi2_value(*parent_, x, t) - 1.0);
        if (!parent_->x_dependent() || lts_.empty()) return phi2_value(*parent_, x, t);
        return limit_at(t);
    }

    bool x_dependent() const override { return parent_->x_dependent(); }
    bool convex() const override { return false; } // splice is only equivalent to convex
    std::string family() const override { return "regularized"; }
    double growth_lower() const override { return parent_->growth_lower(); }
    double growth_upper() const override { return std::max(1.0, parent_->growth_upper()); }
    bool limit_inconclusive() const { return inconclusive_; }
    double shell_drift() const { return drift_; }

    nlohmann::json to_json() const override {
        nlohmann::json j = {{"family", "derived"},
                            {"kind", "regularized"},
                            {"parent", parent_->to_json()},
                            {"domain", box_json(domain_)}};
        j["params"]["limit_inconclusive"] = inconclusive_;
        j["params"]["shell_drift"] = drift_;
        j["parent_hash"] = Phi::hash(*parent_);
        return j;
    }

private:
    // log-log interpolation on the limit-function table, power-law tails
    double limit_at(double t) const {
        const auto& ts = lts_;
        const auto& vs = lvals_;
        if (t <= 0.0) return 0.0;
        auto interp = [&](std::size_t i, double tt) {
            double lt0 = std::log(ts[i]), lt1 = std::log(ts[i + 1]);
            double lv0 = std::log(std::max(vs[i], 1e-300));
            double lv1 = std::log(std::max(vs[i + 1], 1e-300));
            double w = (std::log(tt) - lt0) / (lt1 - lt0);
            return std::exp(lv0 + w * (lv1 - lv0));
        };
        if (t <= ts.front()) {
            double slope = std::log(std::max(vs[1], 1e-300) / std::max(vs[0], 1e-300)) /
                           std::log(ts[1] / ts[0]);
            return vs[0] * std::pow(t / ts[0], slope);
        }
        if (t >= ts.back()) return vs.back();
        std::size_t lo = 0, hi = ts.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            (ts[mid] <= t ? lo : hi) = mid;
        }
        return interp(lo, t);
    }

    PhiPtr parent_;
    std::vector<double> lts_, lvals_;
    bool inconclusive_;
    double drift_;
};

class TargetPsiPhi final : public Phi {
public:
    TargetPsiPhi(PhiPtr parent, double alpha, int n, double r)
        : Phi(parent->domain()), parent_(std::move(parent)), alpha_(alpha), n_(n), r_(r) {}

    // psi(x,u) = inf{ t : t^{-alpha/n} phi^{-1}(x,t) >= u }
    double value_raw(const Point& x, double u) const override {
        if (u == 0.0) return 0.0;
        auto g = [&](double t) { return inverse_formula(x, t); };
        return generalized_inverse(g, u);
    }

    double inverse(const Point& x, double t) const override {
        if (t < 0.0) throw std::invalid_argument("inverse: t must be >= 0");
        return inverse_formula(x, t);
    }

    bool x_dependent() const override { return parent_->x_dependent(); }
    bool convex() const override { return false; }
    std::string family() const override { return "target_psi"; }
    double growth_lower() const override { return shifted(parent_->growth_lower()); }
    double growth_upper() const override { return shifted(parent_->growth_upper()); }

    nlohmann::json to_json() const override {
        nlohmann::json j = {{"family", "derived"},
                            {"kind", "target_psi"},
                            {"params", {{"alpha", alpha_}, {"n", n_}, {"r", r_}}},
                            {"parent", parent_->to_json()},
                            {"domain", box_json(domain_)}};
        j["parent_hash"] = Phi::hash(*parent_);
        return j;
    }

private:
    double inverse_formula(const Point& x, double t) const {
        if (t == 0.0) return 0.0;
        return std::pow(t, -alpha_ / n_) * parent_->inverse(x, t);
    }
    double shifted(double p) const {
        double inv = 1.0 / p - alpha_ / n_;
        return inv > 1e-9 ? 1.0 / inv : 1e9;
    }
    PhiPtr parent_;
    double alpha_;
    int n_;
    double r_;
};

class SharpAlphaPhi final : public Phi {
public:
    SharpAlphaPhi(PhiPtr parent, double alpha, int n, double r)
        : Phi(parent->domain()), parent_(std::move(parent)), alpha_(alpha), n_(n), r_(r) {}

    // phi_sharp(x,t) = phi(x, lambda^{-1}(x,t)), lambda(x,t) = t phi(x,t)^{-alpha/n}
    double value_raw(const Point& x, double t) const override {
        if (t == 0.0) return 0.0;
        auto lam = [&](double u) { return lambda(x, u); };
        double u = generalized_inverse(lam, t);
        return parent_->eval(x, u);
    }

    // lambda composed with phi^{-1} collapses to the target-psi formula
    double inverse(const Point& x, double t) const override {
        if (t < 0.0) throw std::invalid_argument("inverse: t must be >= 0");
        if (t == 0.0) return 0.0;
        return lambda(x, parent_->inverse(x, t));
    }

    bool x_dependent() const override { return parent_->x_dependent(); }
    bool convex() const override { return false; }
    std::string family() const override { return "sharp_alpha"; }
    double growth_lower() const override { return shifted(parent_->growth_lower()); }
    double growth_upper() const override { return shifted(parent_->growth_upper()); }

    nlohmann::json to_json() const override {
        nlohmann::json j = {{"family", "derived"},
                            {"kind", "sharp_alpha"},
                            {"params", {{"alpha", alpha_}, {"n", n_}, {"r", r_}}},
                            {"parent", parent_->to_json()},
                            {"domain", box_json(domain_)}};
        j["parent_hash"] = Phi::hash(*parent_);
        return j;
    }

private:
    double lambda(const Point& x, double u) const {
        if (u == 0.0) return 0.0;
        double v = parent_->eval(x, u);
        if (v <= 0.0) return 0.0;
        if (ext_is_inf(v)) return 0.0; // past the blow-up lambda is not usable
        return u * std::pow(v, -alpha_ / n_);
    }
    double shifted(double p) const {
        double inv = 1.0 / p - alpha_ / n_;
        return inv > 1e-9 ? 1.0 / inv : 1e9;
    }
    PhiPtr parent_;
    double alpha_;
    int n_;
    double r_;
};

void require_fractional_setting(const Phi& phi, double alpha, int n, double r,
                                const CheckOptions& opt, const char* what) {
    if (!(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument(std::string(what) + ": alpha must lie in (0, n)");
    if (!(r > alpha / n))
        throw std::invalid_argument(std::string(what) + ": r must exceed alpha/n");
    auto rep = check_aDec(phi, 1.0 / r, opt);
    if (rep.verdict == Verdict::Fail)
        throw std::invalid_argument(std::string(what) +
                                    ": almost-decrease check at 1/r failed: " +
                                    rep.to_json().dump());
}

// the constructed inverse must be non-decreasing in t on the sampling grid
void verify_monotone_inverse(const Phi& psi, const CheckOptions& opt, const char* what) {
    LogGrid tg = opt.tgrid;
    tg.n = opt.t_samples;
    const Box& box = psi.domain();
    std::vector<Point> xs;
    if (box.dim == 1) {
        for (int i = 0; i < 5; ++i)
            xs.push_back(Point::d1(box.lo[0] + (box.hi[0] - box.lo[0]) * (i + 0.5) / 5));
    } else {
        for (int i = 0; i < 5; ++i)
            xs.push_back(Point::d2(box.lo[0] + (box.hi[0] - box.lo[0]) * (i + 0.5) / 5,
                                   box.lo[1] + (box.hi[1] - box.lo[1]) * (i + 0.5) / 5));
    }
    for (const Point& x : xs) {
        double prev = 0.0;
        for (double t : tg.points()) {
            double v = psi.inverse(x, t);
            if (v < prev * (1.0 - 1e-9))
                throw std::runtime_error(std::string(what) +
                                         ": constructed inverse is not non-decreasing "
                                         "(r too small for this family)");
            prev = std::max(prev, v);
        }
    }
}

} // namespace

RegularizeResult regularize(PhiPtr phi, const CheckOptions& opt) {
    auto a0 = check_A0(*phi, opt);
    if (a0.verdict == Verdict::Fail)
        throw std::invalid_argument("regularize: unit-normalization check failed: " +
                                    a0.to_json().dump());

    std::vector<double> lts, lvals;
    bool inconclusive = false;
    double drift = 0.0;
    if (phi->x_dependent()) {
        const Box& box = phi->domain();
        double edge = 0.0;
        for (int a = 0; a < box.dim; ++a)
            edge = std::max(edge, std::max(std::abs(box.lo[a]), std::abs(box.hi[a])));
        std::vector<double> radii;
        for (double r = edge / 256.0; r <= edge * 1.0000001; r *= 2.0) radii.push_back(r);

        LogGrid tg{1e-8, 1.0, 1024};
        lts = tg.points();
        std::vector<std::vector<double>> shells;
        for (double r : radii) {
            auto pts = shell_points(box, r);
            std::vector<double> vals(lts.size(), 0.0);
            for (std::size_t i = 0; i < lts.size(); ++i) {
                double m = 0.0;
                for (const Point& p : pts) m = std::max(m, phi2_value(*phi, p, lts[i]));
                vals[i] = m;
            }
            shells.push_back(std::move(vals));
        }
        lvals = shells.back();
        if (shells.size() >= 3) {
            for (std::size_t k = shells.size() - 3; k + 1 < shells.size(); ++k)
                for (std::size_t i = 0; i < lts.size(); ++i)
                    drift = std::max(drift, std::abs(shells[k][i] - shells[k + 1][i]) /
                                                std::max(shells[k + 1][i], 1e-12));
            inconclusive = drift > opt.drift_tol;
        } else {
            inconclusive = true;
        }
    }

    auto out = std::make_shared<RegularizedPhi>(std::move(phi), std::move(lts),
                                                std::move(lvals), inconclusive, drift);
    return RegularizeResult{out, inconclusive, drift};
}

PhiPtr target_psi(PhiPtr phi, double alpha, int n, double r, const CheckOptions& opt) {
    require_fractional_setting(*phi, alpha, n, r, opt, "target_psi");
    auto psi = std::make_shared<TargetPsiPhi>(std::move(phi), alpha, n, r);
    verify_monotone_inverse(*psi, opt, "target_psi");
    return psi;
}

PhiPtr sharp_alpha(PhiPtr phi, double alpha, int n, double r, const CheckOptions& opt) {
    require_fractional_setting(*phi, alpha, n, r, opt, "sharp_alpha");
    auto sharp = std::make_shared<SharpAlphaPhi>(std::move(phi), alpha, n, r);
    verify_monotone_inverse(*sharp, opt, "sharp_alpha");
    return sharp;
}

PhiPtr power_scale(PhiPtr phi, double s) { return Phi::power_scaled(std::move(phi), s); }

} // namespace orlicz
