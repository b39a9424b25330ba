#ifndef ORLICZ_PHI_HPP
#define ORLICZ_PHI_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/ext_real.hpp"
#include "orlicz/grid.hpp"

namespace orlicz {

/// Default log-spaced evaluation grid for tabulations, discrete conjugation
/// and condition sampling.
struct LogGrid {
    double tmin = 1e-6;
    double tmax = 1e6;
    int n = 4096;

    double t(int i) const;
    std::vector<double> points() const;
    LogGrid refined(int factor = 2) const { return LogGrid{tmin, tmax, n * factor}; }
    LogGrid extended(double factor = 100.0) const {
        return LogGrid{tmin / factor, tmax * factor, n};
    }
};

/// x-dependent coefficient of a generalized Phi-function (p(x), a(x), ...).
class Coefficient {
public:
    enum class Kind { Constant, LogDecay, PowerDecay, Step, Sine, Samples };

    static Coefficient constant(double c);
    /// c_inf + A / log(e + |x|); the log-Hoelder modulus of continuity.
    static Coefficient log_decay(double c_inf, double amplitude);
    /// c_inf + A (1 + |x|)^{-m}; m > 0 decays, m < 0 grows.
    static Coefficient power_decay(double c_inf, double amplitude, double m);
    /// left for x_1 <= 0, right for x_1 > 0.
    static Coefficient step(double left, double right);
    /// c0 + A sin(omega |x|); has no limit at infinity when A != 0.
    static Coefficient sine(double c0, double amplitude, double omega);
    static Coefficient samples(const Grid& grid, std::vector<double> values);

    double operator()(const Point& x) const;
    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::Constant; }
    /// Conservative value bounds, sampled for the Samples kind.
    std::pair<double, double> bounds(const Box& domain) const;

    nlohmann::json to_json() const;
    static Coefficient from_json(const nlohmann::json& j);

private:
    Coefficient() = default;
    Kind kind_ = Kind::Constant;
    double a_ = 0.0, b_ = 0.0, c_ = 0.0;
    std::shared_ptr<const GridFunction> table_;
};

class Phi;
using PhiPtr = std::shared_ptr<const Phi>;

/// A generalized Phi-function phi(x, t).  Immutable; evaluation, generalized
/// inversion and discrete conjugation are pure and thread-safe.
class Phi {
public:
    virtual ~Phi() = default;

    /// phi(x, t) as a saturated extended real (>= ExtReal::kCap means +inf).
    /// Throws std::domain_error when x is outside the domain and
    /// std::invalid_argument for t < 0.
    double eval(const Point& x, double t) const;
    ExtReal eval_ext(const Point& x, double t) const { return ExtReal(eval(x, t)); }

    /// Generalized inverse inf{tau : phi(x,tau) >= t}.
    virtual double inverse(const Point& x, double t) const;

    const Box& domain() const { return domain_; }
    virtual bool x_dependent() const = 0;
    /// True when t -> phi(x,t) is convex for this family.
    virtual bool convex() const = 0;
    virtual std::string family() const = 0;

    /// Recorded growth exponents: phi behaves no worse than t^lower near 0
    /// and t^upper at infinity.  Used for tail extrapolation only.
    virtual double growth_lower() const = 0;
    virtual double growth_upper() const = 0;

    virtual nlohmann::json to_json() const = 0;

    // ---- built-in families ----
    static PhiPtr power(double p, const Box& domain, double scale = 1.0);
    static PhiPtr orlicz_log(double p, const Box& domain);
    static PhiPtr variable_exponent(Coefficient p, const Box& domain);
    static PhiPtr double_phase(double p, double q, Coefficient a, const Box& domain);
    static PhiPtr tabulated(const Box& domain, std::vector<double> ts,
                            std::vector<double> values);

    // ---- derived families ----
    /// Discrete Legendre conjugate phi*(x,t) = sup_s (st - phi(x,s)), the sup
    /// taken over the s-grid with continuous refinement around the argmax;
    /// reports +inf when the sup escapes past the grid's right endpoint.
    static PhiPtr conjugate(PhiPtr parent, LogGrid sgrid = {});
    static PhiPtr max_combined(PhiPtr a, PhiPtr b);
    static PhiPtr power_scaled(PhiPtr parent, double s);

    static PhiPtr from_json(const nlohmann::json& j);
    /// FNV-1a hash of the canonical JSON form, for provenance records.
    static std::string hash(const Phi& phi);

protected:
    explicit Phi(const Box& domain) : domain_(domain) {}
    /// Family evaluation; x validated, t >= 0. Must return a saturated value.
    virtual double value_raw(const Point& x, double t) const = 0;

    Box domain_;
};

/// Bracketed bisection for the generalized inverse of a monotone extended
/// real function.  Returns the smallest located tau with g(tau) >= t.
double generalized_inverse(const std::function<double(double)>& g, double t);

} // namespace orlicz

#endif
