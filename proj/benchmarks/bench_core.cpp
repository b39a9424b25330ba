#include <benchmark/benchmark.h>

#include <cmath>

#include "orlicz/grid.hpp"
#include "orlicz/phi.hpp"

using namespace orlicz;

static void BM_AccumulatorBuild(benchmark::State& state) {
    Grid g(Box::square(0.0, 1.0), static_cast<int>(state.range(0)));
    GridFunction f(g, [](const Point& p) { return std::sin(7 * p.c[0]) * p.c[1]; });
    for (auto _ : state) {
        Accumulator acc(f);
        benchmark::DoNotOptimize(acc.cube_sum(Cube{{0, 0}, static_cast<int>(state.range(0))}));
    }
}
BENCHMARK(BM_AccumulatorBuild)->Arg(64)->Arg(256)->Arg(1024);

static void BM_CubeSums(benchmark::State& state) {
    Grid g(Box::square(0.0, 1.0), 256);
    GridFunction f(g, [](const Point& p) { return std::cos(3 * p.c[0] + p.c[1]); });
    Accumulator acc(f);
    auto cubes = CubeFamily::dyadic(g, 6).enumerate();
    for (auto _ : state) {
        double s = 0.0;
        for (const Cube& q : cubes) s += acc.cube_abs_sum(q);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_CubeSums);

static void BM_PhiInverse(benchmark::State& state) {
    auto phi = Phi::double_phase(2.0, 4.0, Coefficient::power_decay(0.5, 1.0, 2.0),
                                 Box::interval(-1.0, 1.0));
    Point x = Point::d1(0.3);
    double t = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi->inverse(x, t));
        t = t < 1e3 ? t * 1.7 : 1e-3;
    }
}
BENCHMARK(BM_PhiInverse);

static void BM_ConjugateEval(benchmark::State& state) {
    auto phi = Phi::orlicz_log(2.0, Box::interval(-1.0, 1.0));
    auto star = Phi::conjugate(phi);
    Point x = Point::d1(0.1);
    double t = 1e-2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(star->eval(x, t));
        t = t < 1e2 ? t * 1.3 : 1e-2;
    }
}
BENCHMARK(BM_ConjugateEval);

BENCHMARK_MAIN();
