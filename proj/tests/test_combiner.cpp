#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "crewcg/combiner.hpp"
#include "helpers.hpp"

using namespace crewcg;

namespace {

const LegalityRules kRules;
const CostRules kCost;

struct Fixture {
    FlightNetwork network;
    ConnectionUniverse universe;
    DualVector duals;

    explicit Fixture(unsigned seed = 2, int flights = 24)
        : network(crewcg::testing::random_small_network(seed, flights)) {
        universe = connection_universe(network, kRules);
        duals.values.assign(static_cast<std::size_t>(network.size()), 0.0);
    }

    PricingContext context() const {
        PricingContext ctx;
        ctx.network = &network;
        ctx.rules = &kRules;
        ctx.cost = &kCost;
        ctx.universe = &universe;
        return ctx;
    }
};

PredictionSet distinct_pair_predictions(int num_pairs, int num_flights) {
    PredictionSet preds;
    double score = 0.99;
    for (int k = 0; 2 * k + 1 < num_flights && k < num_pairs; ++k) {
        preds.pairs.push_back({2 * k, 2 * k + 1, score});
        score -= 0.01;
    }
    return preds;
}

}  // namespace

TEST_CASE("combine walks the ranked prefix and fills the remainder randomly") {
    // param1 = 10, roc = 0.9: learnt budget 9, so the fifth pair overshoots
    // and gets trimmed; one random flight completes the subset.
    const Fixture fx(3, 24);
    const PredictionSet preds = distinct_pair_predictions(12, fx.network.size());
    const CombineOutcome out =
        combine(preds, 0.9, fx.context(), fx.duals, CombinerConfig{10, 7});
    CHECK(out.learnt_count == 9);
    CHECK(out.random_count == 1);
    CHECK(out.flight_subset.size() == 10);
    CHECK(out.used_pairs.size() == 5);

    // The learnt flights are endpoints of the consumed prefix, and all
    // endpoints of the first four pairs survived the trim.
    std::set<int> prefix_endpoints;
    for (int k = 0; k < 5; ++k) {
        prefix_endpoints.insert(preds.pairs[static_cast<std::size_t>(k)].i);
        prefix_endpoints.insert(preds.pairs[static_cast<std::size_t>(k)].j);
    }
    for (int f : out.learnt_flights) CHECK(prefix_endpoints.count(f) == 1);
    for (int k = 0; k < 4; ++k) {
        CHECK(std::find(out.learnt_flights.begin(), out.learnt_flights.end(),
                        preds.pairs[static_cast<std::size_t>(k)].i) != out.learnt_flights.end());
        CHECK(std::find(out.learnt_flights.begin(), out.learnt_flights.end(),
                        preds.pairs[static_cast<std::size_t>(k)].j) != out.learnt_flights.end());
    }
}

TEST_CASE("combine: zero roc means a fully random subset") {
    const Fixture fx(4, 24);
    const PredictionSet preds = distinct_pair_predictions(12, fx.network.size());
    const CombineOutcome out = combine(preds, 0.0, fx.context(), fx.duals, CombinerConfig{8, 3});
    CHECK(out.learnt_count == 0);
    CHECK(out.random_count == 8);
    CHECK(out.flight_subset.size() == 8);
}

TEST_CASE("combine: empty predictions fall back to random fill") {
    const Fixture fx(5, 24);
    const CombineOutcome out =
        combine(PredictionSet{}, 0.95, fx.context(), fx.duals, CombinerConfig{8, 3});
    CHECK(out.learnt_count == 0);
    CHECK(out.random_count == 8);
    CHECK(out.flight_subset.size() == 8);
    CHECK(out.used_pairs.empty());
}

TEST_CASE("combine validates param1 and roc") {
    const Fixture fx(6, 24);
    CHECK_THROWS_AS(combine(PredictionSet{}, 0.5, fx.context(), fx.duals, CombinerConfig{12, 1}),
                    std::invalid_argument);  // 12 >= 24/2
    CHECK_THROWS_AS(combine(PredictionSet{}, 0.5, fx.context(), fx.duals, CombinerConfig{0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(combine(PredictionSet{}, 1.5, fx.context(), fx.duals, CombinerConfig{8, 1}),
                    std::invalid_argument);
}

TEST_CASE("combine is deterministic for a fixed seed and varies across seeds") {
    const Fixture fx(7, 24);
    const PredictionSet preds = distinct_pair_predictions(4, fx.network.size());
    const CombineOutcome a = combine(preds, 0.5, fx.context(), fx.duals, CombinerConfig{10, 11});
    const CombineOutcome b = combine(preds, 0.5, fx.context(), fx.duals, CombinerConfig{10, 11});
    CHECK(a.flight_subset == b.flight_subset);
    CHECK(a.learnt_flights == b.learnt_flights);
    CHECK(a.random_flights == b.random_flights);

    bool any_differs = false;
    for (unsigned seed = 12; seed < 18; ++seed) {
        const CombineOutcome c = combine(preds, 0.5, fx.context(), fx.duals, CombinerConfig{10, seed});
        if (c.flight_subset != a.flight_subset) any_differs = true;
    }
    CHECK(any_differs);
}

TEST_CASE("combine contract holds under randomized invocations") {
    const Fixture fx(8, 30);
    std::mt19937 rng(100);
    std::uniform_real_distribution<double> roc_pick(0.0, 1.0);
    std::uniform_real_distribution<double> score_pick(0.0, 1.0);
    std::uniform_int_distribution<int> id_pick(0, fx.network.size() - 1);
    std::uniform_int_distribution<int> param_pick(1, 14);

    for (int trial = 0; trial < 200; ++trial) {
        PredictionSet preds;
        const int num_pairs = static_cast<int>(rng() % 40);
        for (int k = 0; k < num_pairs; ++k) {
            int i = id_pick(rng);
            int j = id_pick(rng);
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            preds.pairs.push_back({i, j, score_pick(rng)});
        }
        const double roc = roc_pick(rng);
        const CombinerConfig config{param_pick(rng), static_cast<unsigned>(trial)};
        const CombineOutcome out = combine(preds, roc, fx.context(), fx.duals, config);

        CHECK(static_cast<int>(out.flight_subset.size()) == config.param1);
        CHECK(out.learnt_count <=
              static_cast<int>(std::floor(config.param1 * roc)));
        CHECK(out.learnt_count + out.random_count == config.param1);
        const std::set<int> unique(out.flight_subset.begin(), out.flight_subset.end());
        CHECK(unique.size() == out.flight_subset.size());
        for (int f : out.flight_subset) {
            CHECK(f >= 0);
            CHECK(f < fx.network.size());
        }

        // Prefix property: learnt flights are endpoints of the consumed
        // ranked prefix, and every endpoint of the prefix except possibly
        // the trimmed tail of the last pair is learnt.
        std::vector<ScoredPair> ranked = preds.pairs;
        std::stable_sort(ranked.begin(), ranked.end(), [](const ScoredPair& a, const ScoredPair& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        });
        std::set<int> prefix;
        for (std::size_t k = 0; k < out.used_pairs.size(); ++k) {
            CHECK(std::make_pair(ranked[k].i, ranked[k].j) == out.used_pairs[k]);
            prefix.insert(ranked[k].i);
            prefix.insert(ranked[k].j);
        }
        for (int f : out.learnt_flights) CHECK(prefix.count(f) == 1);
    }
}
