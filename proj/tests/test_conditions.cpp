#include <doctest.h>

#include "orlicz/conditions.hpp"

using namespace orlicz;

namespace {
const Box dom = Box::interval(-1.0, 1.0);
const Box wide = Box::interval(-1e4, 1e4);
} // namespace

TEST_CASE("power function is almost monotone at its own exponent") {
    auto phi = Phi::power(2.5, dom);
    auto inc = check_aInc(*phi, 2.5);
    auto dec = check_aDec(*phi, 2.5);
    CHECK(inc.passed());
    CHECK(inc.constants.at("Lp") == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(dec.passed());
    // at a much larger lower exponent the ratio blows up
    CHECK(check_aInc(*phi, 4.5).verdict == Verdict::Fail);
    CHECK(check_aDec(*phi, 1.0).verdict == Verdict::Fail);
}

TEST_CASE("logarithmic perturbation shifts the decrease exponent") {
    auto phi = Phi::orlicz_log(2.0, dom);
    CHECK(check_aInc(*phi, 2.0).passed());
    CHECK(check_aDec(*phi, 3.0).passed());
    CHECK_FALSE(check_aDec(*phi, 2.0).passed());
}

TEST_CASE("unit normalization holds for pure powers and fails for blowing scales") {
    auto phi = Phi::power(2.0, wide);
    auto rep = check_A0(*phi);
    CHECK(rep.passed());
    CHECK(rep.constants.at("beta") == doctest::Approx(1.0));

    // t^2 + a(x) t^4 with a growing like |x|^6: inverse at 1 collapses
    auto grow = Coefficient::power_decay(1.0, 1.0, -6.0);
    auto bad = Phi::double_phase(2.0, 4.0, grow, wide);
    CHECK(check_A0(*bad).verdict == Verdict::Fail);
}

TEST_CASE("local continuity condition separates log decay from a jump") {
    auto good = Phi::variable_exponent(Coefficient::log_decay(2.0, 1.0), dom);
    CHECK(check_A1(*good).passed());

    auto jump = Phi::variable_exponent(Coefficient::step(2.0, 4.0), dom);
    CHECK(check_A1(*jump).verdict == Verdict::Fail);
}

TEST_CASE("decay condition separates a limit at infinity from oscillation") {
    auto good = Phi::variable_exponent(Coefficient::log_decay(2.0, 1.0), wide);
    CHECK(check_A2(*good).verdict != Verdict::Fail);

    auto osc = Phi::variable_exponent(Coefficient::sine(2.0, 1.0, 1.0), wide);
    CHECK(check_A2(*osc).verdict != Verdict::Pass);
}

TEST_CASE("equivalence constant is 1 on identical functions") {
    auto phi = Phi::orlicz_log(2.0, dom);
    auto rep = equivalence_constant(*phi, *phi);
    CHECK(rep.passed());
    CHECK(rep.constants.at("L") == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("equivalence constant covers a bounded scale change") {
    auto phi = Phi::power(2.0, dom);
    auto psi = Phi::power(2.0, dom, 3.0);
    auto rep = equivalence_constant(*phi, *psi);
    CHECK(rep.passed());
    CHECK(rep.constants.at("L") >= 1.0);
    CHECK(rep.constants.at("L") <= 4.0);
}

TEST_CASE("reports serialize with verdicts and constants") {
    auto phi = Phi::power(2.0, dom);
    auto rep = check_aInc(*phi, 2.0);
    auto j = rep.to_json();
    CHECK(j.at("condition") == "aInc");
    CHECK(j.at("verdict") == "pass");
    CHECK(j.at("constants").contains("Lp"));
}
