#include <benchmark/benchmark.h>

#include <complex>

#include "horolab/horofunction.hpp"
#include "horolab/probes.hpp"

using namespace horolab;

namespace {

void BM_EstimateRadial(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::disk());
    const auto seq = approach_sequence(e.domain(),
                                       BoundaryTarget::at(Point(Complex(1, 0))),
                                       ApproachStyle::radial(),
                                       static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_horofunction(e, Point(Complex(0, 0)), seq));
}

void BM_EstimateBidisc(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::polydisc(2));
    const auto seq = approach_sequence(
        e.domain(), BoundaryTarget::at(Point(Complex(1, 0), Complex(1, 0))),
        ApproachStyle::skew(1, 2), 40);
    const Point pole(Complex(0, 0), Complex(0, 0));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_horofunction(e, pole, seq));
}

void BM_ValueAt(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::disk());
    const auto seq = approach_sequence(e.domain(),
                                       BoundaryTarget::at(Point(Complex(1, 0))),
                                       ApproachStyle::radial(), 40);
    const auto est = estimate_horofunction(e, Point(Complex(0, 0)), seq);
    const auto probes = probe_grid(e.domain());
    size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(est.value_at(probes[i++ % probes.size()]));
}

void BM_HoroballContains(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::disk());
    const auto seq = approach_sequence(e.domain(),
                                       BoundaryTarget::at(Point(Complex(1, 0))),
                                       ApproachStyle::radial(), 40);
    const auto est = estimate_horofunction(e, Point(Complex(0, 0)), seq);
    const auto probes = probe_grid(e.domain(), 512);
    size_t i = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(horoball_contains(est, probes[i++ % probes.size()], 1.0));
}

}  // namespace

BENCHMARK(BM_EstimateRadial)->Arg(20)->Arg(40)->Arg(60);
BENCHMARK(BM_EstimateBidisc);
BENCHMARK(BM_ValueAt);
BENCHMARK(BM_HoroballContains);

BENCHMARK_MAIN();
