#include <doctest.h>

#include <cmath>

#include "orlicz/transform.hpp"

using namespace orlicz;

namespace {
const Box dom = Box::interval(-1.0, 1.0);
const Point x0 = Point::d1(0.25);
} // namespace

TEST_CASE("regularizing t^2 reproduces the spliced closed form") {
    auto reg = regularize(Phi::power(2.0, dom));
    CHECK_FALSE(reg.limit_inconclusive);
    CHECK(reg.phi->eval(x0, 1.0) == 1.0);
    CHECK(reg.phi->eval(x0, 2.0) == doctest::Approx(7.0));
    // below 1 the limit of max(t^2, 2t-1) is t^2 itself
    CHECK(reg.phi->eval(x0, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("regularized output is unit-normalized at sampled points") {
    auto phi = Phi::variable_exponent(Coefficient::log_decay(2.0, 1.0), dom);
    auto reg = regularize(phi);
    for (double x : {-0.8, -0.1, 0.0, 0.3, 0.9}) {
        CHECK(reg.phi->eval(Point::d1(x), 1.0) == 1.0);
        CHECK(reg.phi->inverse(Point::d1(x), 1.0) == doctest::Approx(1.0).epsilon(1e-8));
    }
    CHECK(check_A0(*reg.phi).passed());
}

TEST_CASE("regularization preserves almost-increase") {
    auto phi = Phi::double_phase(2.0, 3.0, Coefficient::constant(0.5), dom);
    REQUIRE(check_aInc(*phi, 2.0).passed());
    auto reg = regularize(phi);
    CHECK(check_aInc(*reg.phi, 2.0).passed());
}

TEST_CASE("regularize refuses degenerate normalization") {
    auto grow = Coefficient::power_decay(1.0, 1.0, -6.0);
    auto bad = Phi::double_phase(2.0, 4.0, grow, Box::interval(-1e4, 1e4));
    CHECK_THROWS_AS(regularize(bad), std::invalid_argument);
}

TEST_CASE("target function has the shifted power exponent") {
    // 1/q = 1/p - alpha/n with p = 2, alpha/n = 1/4 gives q = 4
    auto psi = target_psi(Phi::power(2.0, dom), 0.25, 1, 0.5);
    double e = std::log(psi->inverse(x0, 100.0) / psi->inverse(x0, 1.0)) / std::log(100.0);
    CHECK(e == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(psi->eval(x0, 2.0) == doctest::Approx(16.0).epsilon(1e-7));
    CHECK(psi->eval(x0, psi->inverse(x0, 7.0)) == doctest::Approx(7.0).epsilon(1e-7));
}

TEST_CASE("target construction refuses r at or below alpha/n") {
    CHECK_THROWS_AS(target_psi(Phi::power(2.0, dom), 0.25, 1, 0.2), std::invalid_argument);
    // r admissible in form but the decrease check fails at 1/r
    CHECK_THROWS_AS(target_psi(Phi::power(2.0, dom), 0.6, 1, 0.7), std::invalid_argument);
}

TEST_CASE("sharpness probe is equivalent to the target function") {
    auto phi = Phi::power(2.0, dom);
    auto psi = target_psi(phi, 0.25, 1, 0.5);
    auto sharp = sharp_alpha(phi, 0.25, 1, 0.5);
    auto rep = equivalence_constant(*sharp, *psi);
    CHECK(rep.verdict != Verdict::Fail);
    if (rep.passed()) CHECK(rep.constants.at("L") <= 4.0);

    auto dp = Phi::double_phase(2.0, 3.0, Coefficient::power_decay(0.5, 0.5, 1.0), dom);
    auto psi2 = target_psi(dp, 0.2, 1, 1.0 / 3.0);
    auto sharp2 = sharp_alpha(dp, 0.2, 1, 1.0 / 3.0);
    auto rep2 = equivalence_constant(*sharp2, *psi2);
    CHECK(rep2.verdict != Verdict::Fail);
}

TEST_CASE("target inverse matches the defining residual on the grid") {
    auto dp = Phi::double_phase(2.0, 3.0, Coefficient::power_decay(0.5, 0.5, 1.0), dom);
    auto psi = target_psi(dp, 0.2, 1, 1.0 / 3.0);
    for (double t = 1e-3; t < 1e3; t *= 4.7) {
        double lhs = dp->inverse(x0, t);
        double rhs = std::pow(t, 0.2) * psi->inverse(x0, t);
        CHECK(rhs == doctest::Approx(lhs).epsilon(1e-6));
    }
}

TEST_CASE("power scaling composes to the identity") {
    auto phi = Phi::orlicz_log(2.0, dom);
    auto back = power_scale(power_scale(phi, 1.7), 1.0 / 1.7);
    for (double t : {0.01, 0.5, 1.0, 42.0}) {
        CHECK(back->eval(x0, t) == doctest::Approx(phi->eval(x0, t)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(power_scale(phi, 0.0), std::invalid_argument);
}

TEST_CASE("derived specs record their provenance") {
    auto phi = Phi::power(2.0, dom);
    auto psi = target_psi(phi, 0.25, 1, 0.5);
    auto j = psi->to_json();
    CHECK(j.at("kind") == "target_psi");
    CHECK(j.at("parent_hash") == Phi::hash(*phi));
    CHECK(j.at("params").at("alpha") == doctest::Approx(0.25));
}

TEST_CASE("derived specs rebuild from their JSON form") {
    auto phi = Phi::power(2.0, dom);
    for (PhiPtr derived : {target_psi(phi, 0.25, 1, 0.5), sharp_alpha(phi, 0.25, 1, 0.5),
                           regularize(Phi::power(2.0, dom, 0.3)).phi}) {
        auto back = Phi::from_json(derived->to_json());
        CHECK(back->family() == derived->family());
        for (double t : {0.1, 1.0, 7.0})
            CHECK(back->eval(x0, t) == doctest::Approx(derived->eval(x0, t)).epsilon(1e-12));
    }
}
