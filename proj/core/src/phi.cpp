#include "orlicz/phi.hpp"

#include "orlicz/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace orlicz {

double LogGrid::t(int i) const {
    if (n < 2) throw std::invalid_argument("LogGrid: n must be >= 2");
    double lg = std::log(tmin) + (std::log(tmax) - std::log(tmin)) * i / (n - 1);
    return std::exp(lg);
}

std::vector<double> LogGrid::points() const {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = t(i);
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient
// ---------------------------------------------------------------------------

Coefficient Coefficient::constant(double c) {
    Coefficient k;
    k.kind_ = Kind::Constant;
    k.a_ = c;
    return k;
}
Coefficient Coefficient::log_decay(double c_inf, double amplitude) {
    Coefficient k;
    k.kind_ = Kind::LogDecay;
    k.a_ = c_inf;
    k.b_ = amplitude;
    return k;
}
Coefficient Coefficient::power_decay(double c_inf, double amplitude, double m) {
    Coefficient k;
    k.kind_ = Kind::PowerDecay;
    k.a_ = c_inf;
    k.b_ = amplitude;
    k.c_ = m;
    return k;
}
Coefficient Coefficient::step(double left, double right) {
    Coefficient k;
    k.kind_ = Kind::Step;
    k.a_ = left;
    k.b_ = right;
    return k;
}
Coefficient Coefficient::sine(double c0, double amplitude, double omega) {
    Coefficient k;
    k.kind_ = Kind::Sine;
    k.a_ = c0;
    k.b_ = amplitude;
    k.c_ = omega;
    return k;
}
Coefficient Coefficient::samples(const Grid& grid, std::vector<double> values) {
    Coefficient k;
    k.kind_ = Kind::Samples;
    k.table_ = std::make_shared<GridFunction>(grid, std::move(values));
    return k;
}

double Coefficient::operator()(const Point& x) const {
    switch (kind_) {
    case Kind::Constant: return a_;
    case Kind::LogDecay: return a_ + b_ / std::log(std::exp(1.0) + x.norm());
    case Kind::PowerDecay: return a_ + b_ * std::pow(1.0 + x.norm(), -c_);
    case Kind::Step: return x.c[0] <= 0.0 ? a_ : b_;
    case Kind::Sine: return a_ + b_ * std::sin(c_ * x.norm());
    case Kind::Samples: {
        auto cell = table_->grid().cell_of(x);
        return (*table_)[table_->grid().flat(cell)];
    }
    }
    return a_;
}

std::pair<double, double> Coefficient::bounds(const Box& domain) const {
    switch (kind_) {
    case Kind::Constant: return {a_, a_};
    case Kind::Step: return {std::min(a_, b_), std::max(a_, b_)};
    case Kind::Sine: return {a_ - std::abs(b_), a_ + std::abs(b_)};
    default: break;
    }
    // sample along the diagonal of the box
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    const int samples = 512;
    for (int i = 0; i <= samples; ++i) {
        Point p;
        p.dim = domain.dim;
        for (int a = 0; a < domain.dim; ++a)
            p.c[a] = domain.lo[a] + (domain.hi[a] - domain.lo[a]) * i / samples;
        double v = (*this)(p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

nlohmann::json Coefficient::to_json() const {
    nlohmann::json j;
    switch (kind_) {
    case Kind::Constant:
        j = {{"kind", "closed_form"}, {"form", "constant"}, {"c", a_}};
        break;
    case Kind::LogDecay:
        j = {{"kind", "closed_form"}, {"form", "log_decay"}, {"c_inf", a_}, {"amplitude", b_}};
        break;
    case Kind::PowerDecay:
        j = {{"kind", "closed_form"}, {"form", "power_decay"}, {"c_inf", a_},
             {"amplitude", b_}, {"m", c_}};
        break;
    case Kind::Step:
        j = {{"kind", "closed_form"}, {"form", "step"}, {"left", a_}, {"right", b_}};
        break;
    case Kind::Sine:
        j = {{"kind", "closed_form"}, {"form", "sine"}, {"c0", a_}, {"amplitude", b_},
             {"omega", c_}};
        break;
    case Kind::Samples: {
        j["kind"] = "samples";
        const Grid& g = table_->grid();
        j["data"]["box"] = {{"dim", g.dim()},
                            {"lo", {g.box().lo[0], g.box().lo[1]}},
                            {"hi", {g.box().hi[0], g.box().hi[1]}}};
        j["data"]["resolution"] = {g.res(0), g.res(1)};
        j["data"]["values"] = table_->values();
        break;
    }
    }
    return j;
}

Coefficient Coefficient::from_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "samples") {
        const auto& d = j.at("data");
        Box box;
        box.dim = d.at("box").at("dim").get<int>();
        box.lo = {d.at("box").at("lo").at(0).get<double>(), d.at("box").at("lo").at(1).get<double>()};
        box.hi = {d.at("box").at("hi").at(0).get<double>(), d.at("box").at("hi").at(1).get<double>()};
        std::array<int, 2> res{d.at("resolution").at(0).get<int>(),
                               d.at("resolution").at(1).get<int>()};
        Grid g(box, res);
        return samples(g, d.at("values").get<std::vector<double>>());
    }
    std::string form = j.at("form").get<std::string>();
    if (form == "constant") return constant(j.at("c").get<double>());
    if (form == "log_decay")
        return log_decay(j.at("c_inf").get<double>(), j.at("amplitude").get<double>());
    if (form == "power_decay")
        return power_decay(j.at("c_inf").get<double>(), j.at("amplitude").get<double>(),
                           j.at("m").get<double>());
    if (form == "step") return step(j.at("left").get<double>(), j.at("right").get<double>());
    if (form == "sine")
        return sine(j.at("c0").get<double>(), j.at("amplitude").get<double>(),
                    j.at("omega").get<double>());
    throw std::invalid_argument("Coefficient: unknown form " + form);
}

// ---------------------------------------------------------------------------
// Phi base
// ---------------------------------------------------------------------------

double Phi::eval(const Point& x, double t) const {
    if (!domain_.contains(x)) throw std::domain_error("Phi: point outside domain");
    if (std::isnan(t) || t < 0.0) throw std::invalid_argument("Phi: t must be >= 0");
    if (t == 0.0) return 0.0;
    return ext_saturate(value_raw(x, t));
}

double generalized_inverse(const std::function<double(double)>& g, double t) {
    if (t <= 0.0) return 0.0;
    // bracket: hi with g(hi) >= t
    double hi = 1.0;
    int guard = 0;
    while (g(hi) < t) {
        hi *= 2.0;
        if (++guard > 1100) return ExtReal::kCap; // never reaches t
    }
    double lo = hi * 0.5;
    guard = 0;
    while (lo > 0.0 && g(lo) >= t) {
        hi = lo;
        lo *= 0.5;
        if (++guard > 1100) return 0.0; // inf is at (or below) zero
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) >= t)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double Phi::inverse(const Point& x, double t) const {
    if (!domain_.contains(x)) throw std::domain_error("Phi: point outside domain");
    if (std::isnan(t) || t < 0.0) throw std::invalid_argument("Phi: t must be >= 0");
    return generalized_inverse([&](double tau) { return eval(x, tau); }, t);
}

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

Box box_from_json(const nlohmann::json& j) {
    Box b;
    b.dim = j.at("dim").get<int>();
    for (int a = 0; a < b.dim; ++a) {
        b.lo[a] = j.at("lo").at(a).get<double>();
        b.hi[a] = j.at("hi").at(a).get<double>();
    }
    return b;
}

// ---- parametric families ----

class PowerPhi final : public Phi {
public:
    PowerPhi(double p, const Box& d, double scale) : Phi(d), p_(p), scale_(scale) {
        if (p < 1.0) throw std::invalid_argument("power: p must be >= 1");
        if (scale <= 0.0) throw std::invalid_argument("power: scale must be > 0");
    }
    double value_raw(const Point&, double t) const override {
        return scale_ * std::pow(t, p_);
    }
    double inverse(const Point& x, double t) const override {
        if (!domain_.contains(x)) throw std::domain_error("Phi: point outside domain");
        if (std::isnan(t) || t < 0.0) throw std::invalid_argument("Phi: t must be >= 0");
        return std::pow(t / scale_, 1.0 / p_);
    }
    bool x_dependent() const override { return false; }
    bool convex() const override { return true; }
    std::string family() const override { return "power"; }
    double growth_lower() const override { return p_; }
    double growth_upper() const override { return p_; }
    nlohmann::json to_json() const override {
        return {{"family", "power"}, {"params", {{"p", p_}, {"scale", scale_}}},
                {"domain", box_json(domain_)}};
    }

private:
    double p_, scale_;
};

class OrliczLogPhi final : public Phi {
public:
    OrliczLogPhi(double p, const Box& d) : Phi(d), p_(p) {
        if (p < 1.0) throw std::invalid_argument("orlicz_log: p must be >= 1");
    }
    double value_raw(const Point&, double t) const override {
        return std::pow(t, p_) * std::log(std::exp(1.0) + t);
    }
    bool x_dependent() const override { return false; }
    bool convex() const override { return true; }
    std::string family() const override { return "orlicz_log"; }
    double growth_lower() const override { return p_; }
    double growth_upper() const override { return p_ + 1.0; }
    nlohmann::json to_json() const override {
        return {{"family", "orlicz_log"}, {"params", {{"p", p_}}},
                {"domain", box_json(domain_)}};
    }

private:
    double p_;
};

class VariableExponentPhi final : public Phi {
public:
    VariableExponentPhi(Coefficient p, const Box& d) : Phi(d), p_(std::move(p)) {
        auto [lo, hi] = p_.bounds(d);
        if (lo < 1.0) throw std::invalid_argument("variable_exponent: p(x) must be >= 1");
        plo_ = lo;
        phi_ = hi;
    }
    double value_raw(const Point& x, double t) const override {
        return std::pow(t, p_(x));
    }
    double inverse(const Point& x, double t) const override {
        if (!domain_.contains(x)) throw std::domain_error("Phi: point outside domain");
        if (std::isnan(t) || t < 0.0) throw std::invalid_argument("Phi: t must be >= 0");
        return std::pow(t, 1.0 / p_(x));
    }
    bool x_dependent() const override { return !p_.is_constant(); }
    bool convex() const override { return true; }
    std::string family() const override { return "variable_exponent"; }
    double growth_lower() const override { return plo_; }
    double growth_upper() const override { return phi_; }
    nlohmann::json to_json() const override {
        return {{"family", "variable_exponent"}, {"coeff", p_.to_json()},
                {"domain", box_json(domain_)}};
    }

private:
    Coefficient p_;
    double plo_ = 1.0, phi_ = 1.0;
};

class DoublePhasePhi final : public Phi {
public:
    DoublePhasePhi(double p, double q, Coefficient a, const Box& d)
        : Phi(d), p_(p), q_(q), a_(std::move(a)) {
        if (p < 1.0 || q < p) throw std::invalid_argument("double_phase: need 1 <= p <= q");
        auto [lo, hi] = a_.bounds(d);
        if (lo < 0.0) throw std::invalid_argument("double_phase: a(x) must be >= 0");
    }
    double value_raw(const Point& x, double t) const override {
        double a = a_(x);
        double v = std::pow(t, p_);
        if (a > 0.0) v += a * std::pow(t, q_);
        return v;
    }
    double inverse(const Point& x, double t) const override {
        if (!domain_.contains(x)) throw std::domain_error("Phi: point outside domain");
        if (std::isnan(t) || t < 0.0) throw std::invalid_argument("Phi: t must be >= 0");
        if (t == 0.0) return 0.0;
        double a = a_(x);
        if (a == 0.0 || ext_is_inf(t)) return std::pow(t, 1.0 / p_);
        // Newton from above on the convex increasing v -> v^p + a v^q
        double v = std::min(std::pow(t, 1.0 / p_), std::pow(t / a, 1.0 / q_));
        for (int it = 0; it < 100; ++it) {
            double vp = std::pow(v, p_), vq = std::pow(v, q_);
            double f = vp + a * vq - t;
            double df = p_ * vp / v + a * q_ * vq / v;
            double step = f / df;
            double vn = v - step;
            if (!(vn > 0.0)) vn = v * 0.5;
            if (std::abs(vn - v) <= 1e-16 * v) { v = vn; break; }
            v = vn;
        }
        return v;
    }
    bool x_dependent() const override { return !a_.is_constant(); }
    bool convex() const override { return true; }
    std::string family() const override { return "double_phase"; }
    double growth_lower() const override { return p_; }
    double growth_upper() const override { return q_; }
    nlohmann::json to_json() const override {
        return {{"family", "double_phase"}, {"params", {{"p", p_}, {"q", q_}}},
                {"coeff", a_.to_json()}, {"domain", box_json(domain_)}};
    }

private:
    double p_, q_;
    Coefficient a_;
};

class TabulatedPhi final : public Phi {
public:
    TabulatedPhi(const Box& d, std::vector<double> ts, std::vector<double> vs)
        : Phi(d), ts_(std::move(ts)), vs_(std::move(vs)) {
        if (ts_.size() != vs_.size() || ts_.size() < 2)
            throw std::invalid_argument("tabulated: need matching t/value tables, size >= 2");
        for (std::size_t i = 0; i < ts_.size(); ++i) {
            if (ts_[i] <= 0.0) throw std::invalid_argument("tabulated: t nodes must be > 0");
            if (i > 0 && ts_[i] <= ts_[i - 1])
                throw std::invalid_argument("tabulated: t nodes must be increasing");
            if (vs_[i] < 0.0) throw std::invalid_argument("tabulated: values must be >= 0");
            if (i > 0 && vs_[i] < vs_[i - 1])
                throw std::runtime_error("tabulated: non-monotone value table");
            vs_[i] = ext_saturate(vs_[i]);
        }
        // end slopes in log-log coordinates, for power-law extrapolation
        lo_slope_ = end_slope(true);
        hi_slope_ = end_slope(false);
    }

    double value_raw(const Point&, double t) const override {
        if (t <= ts_.front()) {
            if (vs_.front() == 0.0) return 0.0;
            if (ext_is_inf(vs_.front())) return ExtReal::kCap;
            return vs_.front() * std::pow(t / ts_.front(), lo_slope_);
        }
        if (t >= ts_.back()) {
            if (ext_is_inf(vs_.back())) return ExtReal::kCap;
            return ext_saturate(vs_.back() * std::pow(t / ts_.back(), hi_slope_));
        }
        auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
        std::size_t i = static_cast<std::size_t>(it - ts_.begin());
        double tl = ts_[i - 1], tr = ts_[i], vl = vs_[i - 1], vr = vs_[i];
        if (ext_is_inf(vl)) return ExtReal::kCap;
        if (ext_is_inf(vr)) return vl; // left-continuous below the blow-up node
        if (vl == 0.0) return vr * (t - tl) / (tr - tl);
        double w = std::log(t / tl) / std::log(tr / tl);
        return std::exp((1.0 - w) * std::log(vl) + w * std::log(vr));
    }

    bool x_dependent() const override { return false; }
    bool convex() const override { return false; }
    std::string family() const override { return "tabulated"; }
    double growth_lower() const override { return std::max(1.0, lo_slope_); }
    double growth_upper() const override { return std::max(1.0, hi_slope_); }
    nlohmann::json to_json() const override {
        return {{"family", "tabulated"}, {"params", {{"t", ts_}, {"value", vs_}}},
                {"domain", box_json(domain_)}};
    }

private:
    double end_slope(bool front) const {
        // first (or last) pair of finite positive values
        if (front) {
            for (std::size_t i = 1; i < ts_.size(); ++i)
                if (vs_[i - 1] > 0.0 && !ext_is_inf(vs_[i]))
                    return std::log(vs_[i] / vs_[i - 1]) / std::log(ts_[i] / ts_[i - 1]);
        } else {
            for (std::size_t i = ts_.size() - 1; i >= 1; --i)
                if (vs_[i - 1] > 0.0 && !ext_is_inf(vs_[i]))
                    return std::log(vs_[i] / vs_[i - 1]) / std::log(ts_[i] / ts_[i - 1]);
        }
        return 1.0;
    }

    std::vector<double> ts_, vs_;
    double lo_slope_ = 1.0, hi_slope_ = 1.0;
};

// ---- derived families ----

class ConjugatePhi final : public Phi {
public:
    ConjugatePhi(PhiPtr parent, LogGrid grid)
        : Phi(parent->domain()), parent_(std::move(parent)), sgrid_(grid) {
        spts_ = sgrid_.points();
    }

    double value_raw(const Point& x, double t) const override {
        auto g = [&](int i) {
            double phi = parent_->eval(x, spts_[i]);
            if (ext_is_inf(phi)) return -std::numeric_limits<double>::infinity();
            return spts_[i] * t - phi;
        };
        const int n = static_cast<int>(spts_.size());
        int best;
        if (parent_->convex()) {
            int lo = 0, hi = n - 1;
            while (hi - lo > 2) {
                int m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
                if (g(m1) < g(m2))
                    lo = m1 + 1;
                else
                    hi = m2;
            }
            best = lo;
            for (int i = lo + 1; i <= hi; ++i)
                if (g(i) > g(best)) best = i;
        } else {
            best = 0;
            for (int i = 1; i < n; ++i)
                if (g(i) > g(best)) best = i;
        }
        if (best == n - 1 && g(n - 1) > g(n - 2))
            return ExtReal::kCap; // sup escapes the grid
        double value = std::max(0.0, g(best));
        // continuous refinement around the grid argmax (golden section)
        double a = best > 0 ? spts_[best - 1] : spts_[0] * 1e-12;
        double b = spts_[std::min(n - 1, best + 1)];
        auto gc = [&](double s) {
            double phi = parent_->eval(x, s);
            if (ext_is_inf(phi)) return -std::numeric_limits<double>::infinity();
            return s * t - phi;
        };
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - invphi * (b - a), d = a + invphi * (b - a);
        double gcv = gc(c), gdv = gc(d);
        for (int it = 0; it < 80 && (b - a) > 1e-14 * b; ++it) {
            if (gcv > gdv) {
                b = d; d = c; gdv = gcv;
                c = b - invphi * (b - a); gcv = gc(c);
            } else {
                a = c; c = d; gcv = gdv;
                d = a + invphi * (b - a); gdv = gc(d);
            }
        }
        value = std::max({value, gcv, gdv});
        return ext_saturate(std::max(0.0, value));
    }

    bool x_dependent() const override { return parent_->x_dependent(); }
    bool convex() const override { return true; } // conjugates are always convex
    std::string family() const override { return "conjugate"; }
    double growth_lower() const override { return conj_exp(parent_->growth_upper()); }
    double growth_upper() const override { return conj_exp(parent_->growth_lower()); }
    nlohmann::json to_json() const override {
        nlohmann::json j = {{"family", "derived"},
                            {"kind", "conjugate"},
                            {"parent", parent_->to_json()},
                            {"domain", box_json(domain_)}};
        j["parent_hash"] = Phi::hash(*parent_);
        return j;
    }

private:
    static double conj_exp(double p) {
        if (p <= 1.0 + 1e-12) return 1e6; // near-linear growth conjugates to a steep wall
        return p / (p - 1.0);
    }
    PhiPtr parent_;
    LogGrid sgrid_;
    std::vector<double> spts_;
};

class MaxCombinedPhi final : public Phi {
public:
    MaxCombinedPhi(PhiPtr a, PhiPtr b) : Phi(a->domain()), a_(std::move(a)), b_(std::move(b)) {}
    double value_raw(const Point& x, double t) const override {
        return std::max(a_->eval(x, t), b_->eval(x, t));
    }
    bool x_dependent() const override { return a_->x_dependent() || b_->x_dependent(); }
    bool convex() const override { return a_->convex() && b_->convex(); }
    std::string family() const override { return "max_combined"; }
    double growth_lower() const override {
        return std::min(a_->growth_lower(), b_->growth_lower());
    }
    double growth_upper() const override {
        return std::max(a_->growth_upper(), b_->growth_upper());
    }
    nlohmann::json to_json() const override {
        nlohmann::json j = {{"family", "derived"},
                            {"kind", "max_combined"},
                            {"parents", {a_->to_json(), b_->to_json()}},
                            {"domain", box_json(domain_)}};
        j["parent_hash"] = Phi::hash(*a_) + ":" + Phi::hash(*b_);
        return j;
    }

private:
    PhiPtr a_, b_;
};

class PowerScaledPhi final : public Phi {
public:
    PowerScaledPhi(PhiPtr parent, double s) : Phi(parent->domain()), parent_(std::move(parent)), s_(s) {
        if (!(s > 0.0)) throw std::invalid_argument("power_scaled: s must be > 0");
    }
    double value_raw(const Point& x, double t) const override {
        return parent_->eval(x, std::pow(t, 1.0 / s_));
    }
    double inverse(const Point& x, double t) const override {
        return std::pow(parent_->inverse(x, t), s_);
    }
    bool x_dependent() const override { return parent_->x_dependent(); }
    bool convex() const override { return s_ <= 1.0 && parent_->convex(); }
    std::string family() const override { return "power_scaled"; }
    double growth_lower() const override { return parent_->growth_lower() / s_; }
    double growth_upper() const override { return parent_->growth_upper() / s_; }
    nlohmann::json to_json() const override {
        nlohmann::json j = {{"family", "derived"},
                            {"kind", "power_scaled"},
                            {"params", {{"s", s_}}},
                            {"parent", parent_->to_json()},
                            {"domain", box_json(domain_)}};
        j["parent_hash"] = Phi::hash(*parent_);
        return j;
    }

private:
    PhiPtr parent_;
    double s_;
};

} // namespace

PhiPtr Phi::power(double p, const Box& domain, double scale) {
    return std::make_shared<PowerPhi>(p, domain, scale);
}
PhiPtr Phi::orlicz_log(double p, const Box& domain) {
    return std::make_shared<OrliczLogPhi>(p, domain);
}
PhiPtr Phi::variable_exponent(Coefficient p, const Box& domain) {
    return std::make_shared<VariableExponentPhi>(std::move(p), domain);
}
PhiPtr Phi::double_phase(double p, double q, Coefficient a, const Box& domain) {
    return std::make_shared<DoublePhasePhi>(p, q, std::move(a), domain);
}
PhiPtr Phi::tabulated(const Box& domain, std::vector<double> ts, std::vector<double> values) {
    return std::make_shared<TabulatedPhi>(domain, std::move(ts), std::move(values));
}
PhiPtr Phi::conjugate(PhiPtr parent, LogGrid sgrid) {
    return std::make_shared<ConjugatePhi>(std::move(parent), sgrid);
}
PhiPtr Phi::max_combined(PhiPtr a, PhiPtr b) {
    return std::make_shared<MaxCombinedPhi>(std::move(a), std::move(b));
}
PhiPtr Phi::power_scaled(PhiPtr parent, double s) {
    return std::make_shared<PowerScaledPhi>(std::move(parent), s);
}

PhiPtr Phi::from_json(const nlohmann::json& j) {
    std::string fam = j.at("family").get<std::string>();
    if (fam == "derived") {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "max_combined") {
            const auto& ps = j.at("parents");
            return max_combined(from_json(ps.at(0)), from_json(ps.at(1)));
        }
        PhiPtr parent = from_json(j.at("parent"));
        if (kind == "conjugate") return conjugate(std::move(parent));
        if (kind == "power_scaled")
            return power_scaled(std::move(parent), j.at("params").at("s").get<double>());
        if (kind == "regularized") return regularize(std::move(parent)).phi;
        if (kind == "target_psi" || kind == "sharp_alpha") {
            const auto& p = j.at("params");
            double alpha = p.at("alpha").get<double>();
            int n = p.at("n").get<int>();
            double r = p.at("r").get<double>();
            return kind == "target_psi" ? target_psi(std::move(parent), alpha, n, r)
                                        : sharp_alpha(std::move(parent), alpha, n, r);
        }
        throw std::invalid_argument("Phi::from_json: unknown derived kind " + kind);
    }
    Box d = box_from_json(j.at("domain"));
    if (fam == "power") {
        const auto& p = j.at("params");
        return power(p.at("p").get<double>(), d, p.value("scale", 1.0));
    }
    if (fam == "orlicz_log") return orlicz_log(j.at("params").at("p").get<double>(), d);
    if (fam == "variable_exponent")
        return variable_exponent(Coefficient::from_json(j.at("coeff")), d);
    if (fam == "double_phase") {
        const auto& p = j.at("params");
        return double_phase(p.at("p").get<double>(), p.at("q").get<double>(),
                            Coefficient::from_json(j.at("coeff")), d);
    }
    if (fam == "tabulated") {
        const auto& p = j.at("params");
        return tabulated(d, p.at("t").get<std::vector<double>>(),
                         p.at("value").get<std::vector<double>>());
    }
    throw std::invalid_argument("Phi::from_json: unknown family " + fam);
}

std::string Phi::hash(const Phi& phi) {
    std::string s = phi.to_json().dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace orlicz
