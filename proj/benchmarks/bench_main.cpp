#include <benchmark/benchmark.h>

#include <random>

#include "trajanon/aggregate.hpp"
#include "trajanon/anonymity.hpp"
#include "trajanon/distance.hpp"
#include "trajanon/synth.hpp"

using namespace trajanon;

namespace {

Dataset make_dataset(std::size_t users, std::size_t days) {
    PopulationSpec spec;
    spec.n_users = users;
    spec.days = days;
    spec.seed = 1;
    return generate(spec);
}

void BM_FingerprintDistance(benchmark::State& state) {
    Dataset d = make_dataset(2, state.range(0));
    const DistanceParams p{};
    for (auto _ : state)
        benchmark::DoNotOptimize(fingerprint_distance(d.users[0], d.users[1], p).delta);
}
BENCHMARK(BM_FingerprintDistance)->Arg(7)->Arg(14)->Arg(28);

void BM_Anonymizability(benchmark::State& state) {
    Dataset d = make_dataset(state.range(0), 7);
    const DistanceParams p{};
    for (auto _ : state)
        benchmark::DoNotOptimize(anonymizability(d, 2, p).per_user.size());
}
BENCHMARK(BM_Anonymizability)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_AnonymizabilityNoPruning(benchmark::State& state) {
    Dataset d = make_dataset(state.range(0), 7);
    const DistanceParams p{};
    for (auto _ : state)
        benchmark::DoNotOptimize(anonymizability(d, 2, p, false).per_user.size());
}
BENCHMARK(BM_AnonymizabilityNoPruning)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Aggregate(benchmark::State& state) {
    Dataset d = make_dataset(200, 14);
    for (auto _ : state)
        benchmark::DoNotOptimize(aggregate(d, 1000, 60).users.size());
}
BENCHMARK(BM_Aggregate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
