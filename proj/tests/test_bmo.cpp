#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "orlicz/bmo.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/operators.hpp"

using namespace orlicz;

namespace {

// dyadic-rational samples so sums and means over power-of-two cell counts
// are exact in double
GridFunction dyadic_bank(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> k(-1024, 1024);
    std::vector<double> v(g.cell_count());
    for (auto& x : v) x = k(rng) / 1024.0;
    return GridFunction(g, std::move(v));
}

double direct_oscillation(const GridFunction& b, const Cube& q) {
    const Grid& g = b.grid();
    double sum = 0.0;
    std::int64_t n = 0;
    for (std::int64_t i = 0; i < g.cell_count(); ++i)
        if (q.contains_cell(g.unflat(i), g.dim())) {
            sum += b[i];
            ++n;
        }
    double mean = sum / n;
    double s = 0.0;
    for (std::int64_t i = 0; i < g.cell_count(); ++i)
        if (q.contains_cell(g.unflat(i), g.dim())) s += std::abs(b[i] - mean);
    return s / n;
}

} // namespace

TEST_CASE("constant functions have zero oscillation seminorm") {
    Grid g(Box::interval(0.0, 1.0), 64);
    GridFunction b(g, std::vector<double>(64, 3.7));
    auto fam = CubeFamily::dyadic(g, 5);
    auto rep = bmo_seminorm(b, fam);
    CHECK(rep.seminorm == 0.0);
    for (const auto& [side, v] : rep.per_scale) CHECK(v == 0.0);
}

TEST_CASE("half-interval indicator on [-1,1] has seminorm exactly one half") {
    Grid g(Box::interval(-1.0, 1.0), 64);
    GridFunction b(g, [](const Point& p) { return p.c[0] >= 0.0 ? 1.0 : 0.0; });
    auto fam = CubeFamily::all_subcubes(g);
    auto rep = bmo_seminorm(b, fam);
    CHECK(rep.seminorm == 0.5);
    // any cube straddling the jump symmetrically attains it
    CHECK(direct_oscillation(b, rep.witness_cube) == 0.5);
}

TEST_CASE("seminorm scales exactly and ignores additive constants") {
    Grid g(Box::square(0.0, 1.0), 16);
    GridFunction b = dyadic_bank(g, 11);
    auto fam = CubeFamily::dyadic(g, 4);
    double base = bmo_seminorm(b, fam).seminorm;
    CHECK(base > 0.0);

    std::vector<double> scaled(g.cell_count()), shifted(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        scaled[i] = -3.0 * b[i];
        shifted[i] = b[i] + 7.0;
    }
    CHECK(bmo_seminorm(GridFunction(g, std::move(scaled)), fam).seminorm == 3.0 * base);
    CHECK(bmo_seminorm(GridFunction(g, std::move(shifted)), fam).seminorm == base);
}

TEST_CASE("witness cube attains the seminorm and per-scale entries bound it") {
    Grid g(Box::interval(0.0, 2.0), 48);
    GridFunction b(g, [](const Point& p) { return std::sin(7.0 * p.c[0]) + 0.2 * p.c[0]; });
    auto fam = CubeFamily::sliding(g, {0, 2, 5, 11});
    auto rep = bmo_seminorm(b, fam);
    CHECK(rep.seminorm == doctest::Approx(direct_oscillation(b, rep.witness_cube)).epsilon(1e-14));
    double scale_max = 0.0;
    for (const auto& [side, v] : rep.per_scale) {
        CHECK(v <= rep.seminorm);
        scale_max = std::max(scale_max, v);
    }
    CHECK(scale_max == rep.seminorm);
}

TEST_CASE("mean oscillation is within twice the best constant approximation") {
    Grid g(Box::interval(0.0, 1.0), 32);
    GridFunction b = dyadic_bank(g, 5);
    auto fam = CubeFamily::dyadic(g, 3);
    Accumulator acc(b);
    for (const Cube& q : fam.enumerate()) {
        double osc = direct_oscillation(b, q);
        // avg |b - mean| <= 2 avg |b - c| for every constant c
        for (double c : {-0.8, -0.1, 0.0, 0.3, 0.9}) {
            double dev = 0.0;
            for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
                dev += std::abs(b[x] - c);
            dev /= q.side;
            CHECK(osc <= 2.0 * dev * (1.0 + 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("smooth functions lose oscillation at fine scales") {
    Grid g(Box::interval(0.0, 1.0), 128);
    GridFunction b(g, [](const Point& p) { return p.c[0] * p.c[0]; });
    auto rep = bmo_seminorm(b, CubeFamily::dyadic(g, 6));
    REQUIRE(rep.per_scale.count(128) == 1);
    REQUIRE(rep.per_scale.count(4) == 1);
    CHECK(rep.per_scale.at(4) < 0.1 * rep.per_scale.at(128));
}

TEST_CASE("positive and negative parts reproduce |b| - b = 2 b_minus exactly") {
    Grid g(Box::square(-1.0, 1.0), 12);
    GridFunction b = dyadic_bank(g, 3);
    auto [bp, bm] = parts(b);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        CHECK(bp[i] >= 0.0);
        CHECK(bm[i] >= 0.0);
        CHECK(bp[i] - bm[i] == b[i]);
        CHECK(std::abs(b[i]) - b[i] == 2.0 * bm[i]);
    }
}

TEST_CASE("restricted-maximal deviation condition vanishes for nonnegative constants") {
    Grid g(Box::interval(0.0, 1.0), 32);
    GridFunction b(g, std::vector<double>(32, 2.25));
    CHECK(l1_maximal_condition(b, CubeFamily::dyadic(g, 4)) == 0.0);
}

TEST_CASE("restricted-maximal deviation matches an oracle built from restricted_maximal") {
    Grid g(Box::interval(-1.0, 1.0), 24);
    GridFunction raw = dyadic_bank(g, 9);
    // nonnegative b so the restricted maximal dominates b pointwise
    std::vector<double> v(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) v[i] = std::abs(raw[i]);
    GridFunction b(g, std::move(v));
    auto fam = CubeFamily::all_subcubes(g);
    double expect = 0.0;
    for (const Cube& q : fam.enumerate()) {
        GridFunction mq = restricted_maximal(b, 0.0, fam, q);
        double s = 0.0;
        for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x) {
            CHECK(mq[x] >= b[x]); // singleton cells are in the family
            s += std::abs(b[x] - mq[x]);
        }
        expect = std::max(expect, s / q.side);
    }
    CHECK(l1_maximal_condition(b, fam) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("deviation from the restricted maximal is dominated by the maximal commutator") {
    Grid g(Box::interval(0.0, 1.0), 20);
    GridFunction raw = dyadic_bank(g, 21);
    std::vector<double> v(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) v[i] = std::abs(raw[i]);
    GridFunction b(g, std::move(v));
    auto fam = CubeFamily::all_subcubes(g);
    GridFunction ones(g, std::vector<double>(g.cell_count(), 1.0));
    GridFunction mb = maximal_commutator(b, ones, 0.0, fam).result;
    for (const Cube& q : fam.enumerate()) {
        GridFunction mq = restricted_maximal(b, 0.0, fam, q);
        for (int x = q.anchor[0]; x < q.anchor[0] + q.side; ++x)
            CHECK(std::abs(b[x] - mq[x]) <= mb[x] + 1e-12);
    }
}

TEST_CASE("fractional detector scales linearly for nonnegative symbols") {
    Grid g(Box::interval(0.0, 1.0), 32);
    GridFunction raw = dyadic_bank(g, 7);
    std::vector<double> v(g.cell_count()), v2(g.cell_count());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        v[i] = std::abs(raw[i]);
        v2[i] = 2.0 * v[i];
    }
    auto eta = Phi::power(2.0, Box::interval(0.0, 1.0));
    auto fam = CubeFamily::dyadic(g, 4);
    double d1 = detector_fractional(GridFunction(g, std::move(v)), eta, 0.5, fam);
    double d2 = detector_fractional(GridFunction(g, std::move(v2)), eta, 0.5, fam);
    CHECK(d1 > 0.0);
    CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(1e-8));
}

TEST_CASE("plain detector agrees with the fractional detector at alpha zero") {
    Grid g(Box::interval(0.0, 1.0), 16);
    GridFunction b(g, [](const Point& p) { return std::abs(std::sin(9.0 * p.c[0])); });
    auto eta = Phi::power(2.0, Box::interval(0.0, 1.0));
    auto fam = CubeFamily::dyadic(g, 3);
    CHECK(detector_plain(b, eta, fam) ==
          doctest::Approx(detector_fractional(b, eta, 0.0, fam)).epsilon(1e-12));
}

TEST_CASE("detector refuses weight functions without unit normalization") {
    Grid g(Box::interval(-1.0, 1.0), 16);
    GridFunction b(g, std::vector<double>(16, 1.0));
    auto fam = CubeFamily::dyadic(g, 2);
    // coefficient collapsing at large |x| breaks unit normalization
    auto bad = Phi::double_phase(2.0, 3.0, Coefficient::power_decay(1.0, 1.0, -6.0),
                                 Box::interval(-1e4, 1e4));
    CHECK_THROWS_AS(detector_plain(b, bad, fam), std::invalid_argument);
    auto eta = Phi::power(2.0, Box::interval(-1.0, 1.0));
    CHECK_THROWS_AS(detector_fractional(b, eta, 1.5, fam), std::invalid_argument);
}

TEST_CASE("report serializes the seminorm, witness and scale profile") {
    Grid g(Box::interval(0.0, 1.0), 16);
    GridFunction b(g, [](const Point& p) { return p.c[0]; });
    auto rep = bmo_seminorm(b, CubeFamily::dyadic(g, 3));
    auto j = rep.to_json();
    CHECK(j["seminorm"].get<double>() == rep.seminorm);
    CHECK(j["witness_cube"]["side"].get<int>() == rep.witness_cube.side);
    CHECK(j["per_scale"].size() == rep.per_scale.size());
    CHECK(j.contains("l1_condition_value"));
    CHECK(j.contains("detector_value"));
}
