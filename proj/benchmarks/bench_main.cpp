// Microbenchmarks for the hot paths: variation operators, local search,
// clique repair and full generations.

#include <benchmark/benchmark.h>

#include "elena/baselines.hpp"
#include "elena/engine.hpp"
#include "elena/operators.hpp"
#include "elena/problems.hpp"

namespace {

using namespace elena;

void BM_TwoOptImprove(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const TspInstance instance = random_tsp(n, 7);
    TourLengthObjective objective(instance);
    SolverConfig config;
    RandomStream rng = split_stream(1, {});
    const Genome start = new_genome(n, RepresentationKind::Permutation, EpigeneticTags{}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_opt_improve(start, objective, config));
    }
}
BENCHMARK(BM_TwoOptImprove)->Arg(25)->Arg(50)->Arg(100);

void BM_OrderCrossover(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SolverConfig config;
    RandomStream rng = split_stream(2, {});
    const Genome a = new_genome(n, RepresentationKind::Permutation, EpigeneticTags{}, rng);
    const Genome b = new_genome(n, RepresentationKind::Permutation, EpigeneticTags{}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(order_crossover(a, b, rng, config));
    }
}
BENCHMARK(BM_OrderCrossover)->Arg(50)->Arg(200);

void BM_Mutate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    SolverConfig config;
    RandomStream rng = split_stream(3, {});
    const Genome g = new_genome(n, RepresentationKind::Permutation, EpigeneticTags{}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mutate(g, 1.0, rng, config));
    }
}
BENCHMARK(BM_Mutate)->Arg(50)->Arg(200);

void BM_CliqueImprove(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const McpInstance graph = random_mcp(n, 0.5, 11);
    SolverConfig config;
    RandomStream rng = split_stream(4, {});
    Genome seed = new_genome(n, RepresentationKind::VertexSet, EpigeneticTags{}, rng);
    for (int i = 0; i < 5; ++i) {
        seed = mcp_mutate(graph, std::move(seed), rng, config);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(clique_improve(graph, seed, config));
    }
}
BENCHMARK(BM_CliqueImprove)->Arg(50)->Arg(100)->Arg(200);

void BM_VrpObjective(benchmark::State& state) {
    const VrpInstance instance = random_vrp(VrpGeneratorSpec{31, 5, 100, 1, 24}, 5);
    VrpRouteObjective objective(instance);
    RandomStream rng = split_stream(5, {});
    std::vector<int> perm(31);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    for (auto _ : state) {
        benchmark::DoNotOptimize(objective.value(perm));
    }
}
BENCHMARK(BM_VrpObjective);

void BM_EvolveGeneration(benchmark::State& state) {
    const TspInstance instance = random_tsp(50, 13);
    TspBinding binding(instance);
    SolverConfig config;
    config.population_size = 15;
    config.initial_mutation_rate = 0.2;
    config.max_generations = 10;
    config.patience = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(binding, config));
    }
}
BENCHMARK(BM_EvolveGeneration)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
