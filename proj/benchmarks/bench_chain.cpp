#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "horolab/chain.hpp"
#include "horolab/engine.hpp"

using namespace horolab;

namespace {

Domain square_polygon() {
    return Domain::convex_polygon(
        {{1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}});
}

// one full interval solve at a fixed pitch (no refinement ladder)
void BM_ChainSolve(benchmark::State& state) {
    const double h = 0.16 / static_cast<double>(state.range(0));
    const auto e = DistanceEngine::make(square_polygon(), ChainParams{h, h * 0.9, 1e300});
    const Point z(Complex(0, 0)), w(Complex(0.5, 0));
    for (auto _ : state) benchmark::DoNotOptimize(e.distance_interval(z, w));
    state.SetLabel("pitch " + std::to_string(h));
}

void BM_ChainShortestPath(benchmark::State& state) {
    const auto e = DistanceEngine::make(square_polygon(), ChainParams{0.04, 0.036, 1e300});
    const Point z(Complex(-0.7, -0.6)), w(Complex(0.8, 0.5));
    for (auto _ : state) benchmark::DoNotOptimize(chain_shortest_path(e, z, w));
}

void BM_PolygonInfinitesimal(benchmark::State& state) {
    const auto e = DistanceEngine::make(square_polygon());
    const Point v(Complex(1, 0));
    std::vector<Point> at;
    for (int i = -8; i <= 8; ++i)
        at.emplace_back(Complex(0.1 * i, 0.05 * i));
    size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(e.infinitesimal(at[i++ % at.size()], v));
}

}  // namespace

BENCHMARK(BM_ChainSolve)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(BM_ChainShortestPath);
BENCHMARK(BM_PolygonInfinitesimal);

BENCHMARK_MAIN();
