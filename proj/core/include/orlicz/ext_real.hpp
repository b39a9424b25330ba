#ifndef ORLICZ_EXT_REAL_HPP
#define ORLICZ_EXT_REAL_HPP

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace orlicz {

/// Non-negative extended real value.  Values at or above the saturation
/// cap compare equal to infinity; 0 * inf is defined as 0.
class ExtReal {
public:
    static constexpr double kCap = 1e300;

    constexpr ExtReal() : v_(0.0) {}
    ExtReal(double v) : v_(v) {
        if (std::isnan(v) || v < 0.0)
            throw std::invalid_argument("ExtReal: value must be a non-negative real");
        if (v_ > kCap) v_ = kCap;
    }

    static ExtReal inf() { ExtReal e; e.v_ = kCap; return e; }

    bool infinite() const { return v_ >= kCap; }

    /// Plain double; +inf when saturated.
    double value() const {
        return infinite() ? std::numeric_limits<double>::infinity() : v_;
    }
    /// Saturated representation (finite, <= kCap).
    double raw() const { return v_; }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if (a.infinite() || b.infinite()) return inf();
        return ExtReal(a.v_ + b.v_);
    }
    friend ExtReal operator*(double c, ExtReal a) {
        if (std::isnan(c) || c < 0.0)
            throw std::invalid_argument("ExtReal: scale must be non-negative");
        if (c == 0.0) return ExtReal();  // 0 * inf = 0
        if (a.infinite()) return inf();
        return ExtReal(c * a.v_);
    }

    friend bool operator==(ExtReal a, ExtReal b) {
        if (a.infinite() && b.infinite()) return true;
        return a.v_ == b.v_;
    }
    friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
        if (a == b) return std::partial_ordering::equivalent;
        return a.v_ <=> b.v_;
    }

private:
    double v_;
};

/// Saturating helpers for raw-double code paths.
inline bool ext_is_inf(double v) { return v >= ExtReal::kCap || std::isinf(v); }
inline double ext_saturate(double v) { return v >= ExtReal::kCap ? ExtReal::kCap : v; }

} // namespace orlicz

#endif
