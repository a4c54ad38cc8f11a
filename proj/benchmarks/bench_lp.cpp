#include <benchmark/benchmark.h>

#include <random>

#include "crewcg/branch_bound.hpp"
#include "crewcg/simplex.hpp"

using namespace crewcg;

namespace {

SetCoverInstance random_instance(unsigned seed, int flights, int columns) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> cost(0.5, 10.0);
    std::bernoulli_distribution member(0.1);
    SetCoverInstance inst;
    inst.num_flights = flights;
    for (int j = 0; j < columns; ++j) {
        Column c;
        for (int f = 0; f < flights; ++f) {
            if (member(rng)) c.flights.push_back(f);
        }
        if (c.flights.empty()) c.flights.push_back(static_cast<int>(rng() % flights));
        c.cost = cost(rng);
        inst.columns.push_back(std::move(c));
    }
    for (int f : inst.uncovered_flights()) inst.columns.push_back({{f}, cost(rng), false});
    return inst;
}

}  // namespace

static void BM_SolveLp(benchmark::State& state) {
    const auto inst = random_instance(7, static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_lp(inst));
    }
}
BENCHMARK(BM_SolveLp)->Args({40, 400})->Args({120, 1000})->Args({120, 3000})
    ->Unit(benchmark::kMillisecond);

static void BM_SolveIp(benchmark::State& state) {
    const auto inst = random_instance(11, static_cast<int>(state.range(0)),
                                      static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_ip(inst, 500));
    }
}
BENCHMARK(BM_SolveIp)->Args({40, 200})->Args({80, 400})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
