#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "horolab/engine.hpp"

using namespace horolab;

namespace {

std::vector<std::pair<Point, Point>> disk_pairs(int count, double rmax) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&] {
        const double r = rmax * std::sqrt(u(rng));
        return Point(std::polar(r, 6.283185307179586 * u(rng)));
    };
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) pairs.emplace_back(draw(), draw());
    return pairs;
}

void run_pairs(benchmark::State& state, const DistanceEngine& e,
               const std::vector<std::pair<Point, Point>>& pairs) {
    size_t i = 0;
    for (auto _ : state) {
        const auto& [z, w] = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(e.distance(z, w));
    }
}

void BM_DiskDistance(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::disk());
    run_pairs(state, e, disk_pairs(256, 0.95));
}

void BM_HalfPlaneDistance(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::half_plane());
    std::vector<std::pair<Point, Point>> pairs;
    for (const auto& [z, w] : disk_pairs(256, 0.95))
        pairs.emplace_back(Point(Complex(z[0].real(), z[0].imag() + 1.5)),
                           Point(Complex(w[0].real(), w[0].imag() + 1.5)));
    run_pairs(state, e, pairs);
}

void BM_StripLongRange(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::strip(0.0, 1.0));
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < 256; ++i)
        pairs.emplace_back(Point(Complex(0.0, 0.5)),
                           Point(Complex(static_cast<double>(i), 0.25)));
    run_pairs(state, e, pairs);
}

void BM_BidiscDistance(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::polydisc(2));
    const auto a = disk_pairs(256, 0.95), b = disk_pairs(256, 0.9);
    std::vector<std::pair<Point, Point>> pairs;
    for (size_t i = 0; i < a.size(); ++i)
        pairs.emplace_back(Point(a[i].first[0], b[i].first[0]),
                           Point(a[i].second[0], b[i].second[0]));
    run_pairs(state, e, pairs);
}

void BM_BallDistance(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::ball(2));
    const auto a = disk_pairs(256, 0.6), b = disk_pairs(256, 0.6);
    std::vector<std::pair<Point, Point>> pairs;
    for (size_t i = 0; i < a.size(); ++i)
        pairs.emplace_back(Point(a[i].first[0], b[i].first[0]),
                           Point(a[i].second[0], b[i].second[0]));
    run_pairs(state, e, pairs);
}

// Newton inversion of the square chart dominates this one
void BM_SquareDistance(benchmark::State& state) {
    const auto e = DistanceEngine::make(Domain::conformal_square(2.0));
    run_pairs(state, e, disk_pairs(256, 0.9));
}

}  // namespace

BENCHMARK(BM_DiskDistance);
BENCHMARK(BM_HalfPlaneDistance);
BENCHMARK(BM_StripLongRange);
BENCHMARK(BM_BidiscDistance);
BENCHMARK(BM_BallDistance);
BENCHMARK(BM_SquareDistance);

BENCHMARK_MAIN();
