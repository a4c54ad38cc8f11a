#include "crewcg/combiner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace crewcg {

CombineOutcome combine(const PredictionSet& predictions, double roc, const PricingContext& context,
                       const DualVector& duals, const CombinerConfig& config) {
    const FlightNetwork& network = *context.network;
    const int num_flights = network.size();
    if (num_flights == 0) throw std::invalid_argument("combine: empty flight set");
    if (config.param1 <= 0 || 2 * config.param1 >= num_flights) {
        throw std::invalid_argument("combine: param1 must satisfy 0 < param1 < |F|/2");
    }
    if (roc < 0.0 || roc > 1.0) throw std::invalid_argument("combine: roc outside [0, 1]");

    std::vector<ScoredPair> ranked = predictions.pairs;
    std::sort(ranked.begin(), ranked.end(), [](const ScoredPair& a, const ScoredPair& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    const int learnt_budget = static_cast<int>(std::floor(static_cast<double>(config.param1) * roc));

    CombineOutcome outcome;
    std::unordered_set<int> chosen;
    std::vector<int> insertion_order;
    auto add_flight = [&](int f) {
        if (f < 0 || f >= num_flights) {
            throw std::invalid_argument("combine: prediction references unknown flight");
        }
        if (chosen.insert(f).second) insertion_order.push_back(f);
    };

    // Walk the ranked pairs while the pre-add size stays within the budget;
    // a final pair may overshoot by a flight or two, trimmed below.
    for (const ScoredPair& pair : ranked) {
        if (static_cast<int>(insertion_order.size()) > learnt_budget) break;
        if (learnt_budget == 0) break;
        outcome.used_pairs.emplace_back(pair.i, pair.j);
        add_flight(pair.i);
        add_flight(pair.j);
    }
    while (static_cast<int>(insertion_order.size()) > learnt_budget) {
        chosen.erase(insertion_order.back());
        insertion_order.pop_back();
    }
    outcome.learnt_flights = insertion_order;
    outcome.learnt_count = static_cast<int>(insertion_order.size());

    // gamma flights uniformly without replacement from the rest.
    const int gamma = config.param1 - outcome.learnt_count;
    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(num_flights));
    for (int f = 0; f < num_flights; ++f) {
        if (chosen.count(f) == 0) others.push_back(f);
    }
    std::mt19937 rng(config.seed);
    std::shuffle(others.begin(), others.end(), rng);
    outcome.random_flights.assign(others.begin(), others.begin() + gamma);
    outcome.random_count = gamma;

    outcome.flight_subset = insertion_order;
    outcome.flight_subset.insert(outcome.flight_subset.end(), outcome.random_flights.begin(),
                                 outcome.random_flights.end());
    std::sort(outcome.flight_subset.begin(), outcome.flight_subset.end());

    PricingRequest request;
    request.flight_subset = outcome.flight_subset;
    request.duals = duals;
    request.max_columns = context.max_columns;
    request.reduced_cost_tolerance = context.reduced_cost_tolerance;
    outcome.pairings = price(*context.network, *context.rules, *context.cost, *context.universe,
                             request, context.limits);
    return outcome;
}

}  // namespace crewcg
