// Microbenchmarks for the Monte Carlo hot paths: tree enumeration,
// characteristic functions and density queries.
#include <benchmark/benchmark.h>

#include "ssm/bernoulli.hpp"
#include "ssm/ifs.hpp"
#include "ssm/perturbation.hpp"
#include "ssm/realization.hpp"
#include "ssm/regularity.hpp"
#include "ssm/spectral.hpp"

namespace {

const ssm::SelfSimilarIFS& bench_ifs() {
    static const ssm::SelfSimilarIFS ifs{{0.45, 0.45, 0.45}, {0.0, 1.0, 3.0}};
    return ifs;
}
const ssm::BernoulliMeasure& bench_measure() {
    static const ssm::BernoulliMeasure mu{{1.0 / 3, 1.0 / 3, 1.0 / 3}};
    return mu;
}
const ssm::Perturbation& bench_dist() {
    static const ssm::Perturbation dist = ssm::Perturbation::spline(3, 0.1);
    return dist;
}

ssm::AtomicApproximation bench_cloud(std::size_t depth) {
    return ssm::atomic_approximation(bench_ifs(), bench_measure(), bench_dist(), {7}, depth);
}

void BM_AtomicApproximation(benchmark::State& state) {
    const std::size_t depth = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto cloud = bench_cloud(depth);
        benchmark::DoNotOptimize(cloud.atoms.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(std::pow(3.0, double(state.range(0)))));
}
BENCHMARK(BM_AtomicApproximation)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EmpiricalCharacteristic(benchmark::State& state) {
    auto cloud = bench_cloud(static_cast<std::size_t>(state.range(0)));
    double xi = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssm::empirical_characteristic(cloud, xi));
        xi += 0.1;  // avoid caching effects on a fixed frequency
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.atoms.size()));
}
BENCHMARK(BM_EmpiricalCharacteristic)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_MeanCharacteristicEqualRatios(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ssm::mean_characteristic(bench_ifs(), bench_measure(), bench_dist(), 20.0));
    }
}
BENCHMARK(BM_MeanCharacteristicEqualRatios);

void BM_MeanCharacteristicGeneralRatios(benchmark::State& state) {
    const ssm::SelfSimilarIFS ifs{{0.45, 0.4, 0.5}, {0.0, 1.0, 3.0}};
    const ssm::BernoulliMeasure mu = ssm::BernoulliMeasure::natural(ifs);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssm::mean_characteristic(ifs, mu, bench_dist(), 20.0));
    }
}
BENCHMARK(BM_MeanCharacteristicGeneralRatios);

void BM_PairCharacteristic(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ssm::pair_characteristic(bench_ifs(), bench_measure(), bench_dist(), 5.0, -5.0));
    }
}
BENCHMARK(BM_PairCharacteristic);

void BM_BallDensityGrid(benchmark::State& state) {
    auto cloud = bench_cloud(10);
    ssm::SortedAtoms sorted(cloud);
    const double r = 4.0 * cloud.tail_radius;
    auto grid = ssm::uniform_grid(sorted.min_position(), sorted.max_position(), 512);
    for (auto _ : state) {
        double acc = 0.0;
        for (double x : grid) acc += sorted.ball_density(x, r);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_BallDensityGrid)->Unit(benchmark::kMillisecond);

void BM_SmoothedDensityGrid(benchmark::State& state) {
    auto cloud = bench_cloud(10);
    ssm::SortedAtoms sorted(cloud);
    auto grid = ssm::uniform_grid(sorted.min_position(), sorted.max_position(), 128);
    for (auto _ : state) {
        double acc = 0.0;
        for (double x : grid) acc += sorted.smoothed_density(x, 0.05);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_SmoothedDensityGrid)->Unit(benchmark::kMillisecond);

void BM_TruncatedInverseDensity(benchmark::State& state) {
    auto cloud = bench_cloud(10);
    double x = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssm::truncated_inverse_density(cloud, x, 200.0));
        x += 1e-3;
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.atoms.size()));
}
BENCHMARK(BM_TruncatedInverseDensity)->Unit(benchmark::kMillisecond);

void BM_AttractorCover(benchmark::State& state) {
    const std::size_t depth = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto cover = ssm::attractor_cover(bench_ifs(), bench_dist(), {7}, depth);
        benchmark::DoNotOptimize(cover.data());
    }
}
BENCHMARK(BM_AttractorCover)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
