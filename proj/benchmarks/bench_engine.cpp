#include <benchmark/benchmark.h>

#include "crewcg/netgen.hpp"
#include "crewcg/pairing_engine.hpp"

using namespace crewcg;

namespace {

FlightNetwork network_of(int flights_per_day, int days) {
    NetGenConfig config;
    config.flights_per_day = flights_per_day;
    config.num_days = days;
    config.seed = 3;
    return generate_network(config, LegalityRules{});
}

}  // namespace

static void BM_ConnectionUniverse(benchmark::State& state) {
    const LegalityRules rules;
    const FlightNetwork net = network_of(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(connection_universe(net, rules));
    }
}
BENCHMARK(BM_ConnectionUniverse)->Arg(60)->Arg(120);

static void BM_EnumeratePairings(benchmark::State& state) {
    const LegalityRules rules;
    const CostRules cost;
    const FlightNetwork net = network_of(static_cast<int>(state.range(0)), 2);
    const ConnectionUniverse universe = connection_universe(net, rules);
    std::vector<int> all(static_cast<std::size_t>(net.size()));
    for (int f = 0; f < net.size(); ++f) all[static_cast<std::size_t>(f)] = f;
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_pairings(net, rules, cost, universe, all));
    }
}
BENCHMARK(BM_EnumeratePairings)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
