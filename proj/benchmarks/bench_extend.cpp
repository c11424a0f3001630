#include <benchmark/benchmark.h>

#include "barytree/barycentric.hpp"
#include "barytree/planar_balance.hpp"
#include "barytree/rng.hpp"

using namespace barytree;

namespace {

RationalMap sample_map(int d) {
    Rng rng(977 + d);
    std::vector<Complex> P(d + 1), Q(d + 1);
    for (int i = 0; i <= d; i++) {
        P[i] = Complex(rng.normal(), rng.normal());
        Q[i] = Complex(rng.normal(), rng.normal());
    }
    return RationalMap(P, Q, 1e-8);
}

void BM_extend(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    const int order = static_cast<int>(state.range(1));
    RationalMap f = sample_map(degree);
    QuadratureRule rule = make_quadrature(order);
    BallPoint x(0.3, -0.2, 0.4);
    for (auto _ : state) {
        ExtensionResult r = extend(f, x, rule);
        benchmark::DoNotOptimize(r.residual);
    }
}
BENCHMARK(BM_extend)->Args({2, 30})->Args({4, 30})->Args({4, 60});

void BM_derivative(benchmark::State& state) {
    RationalMap f = sample_map(static_cast<int>(state.range(0)));
    QuadratureRule rule = make_quadrature(30);
    BallPoint x(0.1, 0.5, -0.2);
    for (auto _ : state) {
        DerivativeMatrix d = derivative(f, x, rule);
        benchmark::DoNotOptimize(d.m);
    }
}
BENCHMARK(BM_derivative)->Arg(2)->Arg(5);

void BM_pushforward(benchmark::State& state) {
    RationalMap f = sample_map(3);
    QuadratureRule rule = make_quadrature(static_cast<int>(state.range(0)));
    BallPoint x(0.3, 0.0, 0.0);
    for (auto _ : state) {
        WeightedSpherePoints m = pushforward(f, x, rule);
        benchmark::DoNotOptimize(m.atoms.size());
    }
}
BENCHMARK(BM_pushforward)->Arg(30)->Arg(60);

void BM_delta_exact(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(delta_exact(2.0));
}
BENCHMARK(BM_delta_exact);

void BM_find_cycles(benchmark::State& state) {
    RationalMap f = sample_map(3);
    for (auto _ : state) {
        auto cycles = find_cycles(f, 2);
        benchmark::DoNotOptimize(cycles.size());
    }
}
BENCHMARK(BM_find_cycles);

} // namespace

BENCHMARK_MAIN();
