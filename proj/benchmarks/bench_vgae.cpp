#include <benchmark/benchmark.h>

#include <random>

#include "crewcg/graph_features.hpp"
#include "crewcg/vgae.hpp"

using namespace crewcg;

namespace {

GlobalAdjacency random_graph(int n, unsigned seed) {
    std::mt19937 rng(seed);
    GlobalAdjacency g{Eigen::MatrixXd::Zero(n, n), 1};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng() % 10 == 0) g.values(i, j) = 1.0;
        }
    }
    return g;
}

}  // namespace

static void BM_TrainEpochs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GlobalAdjacency g = random_graph(n, 5);
    const FeatureMatrix f{Eigen::MatrixXd::Identity(n, n), n, 0};
    VgaeConfig config;
    config.epochs = static_cast<int>(state.range(1));
    config.early_stop_roc = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train(config, g, f));
    }
}
BENCHMARK(BM_TrainEpochs)->Args({60, 10})->Args({120, 10})->Args({120, 100})
    ->Unit(benchmark::kMillisecond);

static void BM_PredictNegatives(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GlobalAdjacency g = random_graph(n, 7);
    const FeatureMatrix f{Eigen::MatrixXd::Identity(n, n), n, 0};
    VgaeConfig config;
    config.epochs = 3;
    config.early_stop_roc = 1.0;
    const VgaeModel model = train(config, g, f);
    const auto domain = upper_triangle_domain(n);
    const auto [pos, neg] = partition_edges(g, domain);
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_negatives(model, neg));
    }
}
BENCHMARK(BM_PredictNegatives)->Arg(120)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
