#pragma once

#include <vector>

#include "crewcg/flight_network.hpp"
#include "crewcg/pairing_engine.hpp"
#include "crewcg/vgae.hpp"

namespace crewcg {

struct CombinerConfig {
    int param1 = 40;   // size of the pricing flight subset; must be < |F|/2
    unsigned seed = 1;
};

/// Everything pricing needs besides the flight subset.
struct PricingContext {
    const FlightNetwork* network = nullptr;
    const LegalityRules* rules = nullptr;
    const CostRules* cost = nullptr;
    const ConnectionUniverse* universe = nullptr;
    int max_columns = 200;
    double reduced_cost_tolerance = -1e-6;
    EnumLimits limits = {};
};

struct CombineOutcome {
    std::vector<int> flight_subset;  // sorted; size == param1
    int learnt_count = 0;            // <= floor(param1 * roc)
    int random_count = 0;            // param1 - learnt_count
    std::vector<Pairing> pairings;   // negative-reduced-cost columns over the subset

    // Audit trail of the selection.
    std::vector<std::pair<int, int>> used_pairs;  // ranked prefix consumed
    std::vector<int> learnt_flights;              // in insertion order, post-trim
    std::vector<int> random_flights;
};

/// Ranked negative-pair predictions to a pricing subset: endpoint flights of
/// the top pairs up to floor(param1 * roc) flights (overshoot trimmed from
/// the most recent additions), the remainder drawn uniformly at random from
/// the other flights, then pricing over the assembled subset.
CombineOutcome combine(const PredictionSet& predictions, double roc, const PricingContext& context,
                       const DualVector& duals, const CombinerConfig& config);

}  // namespace crewcg
