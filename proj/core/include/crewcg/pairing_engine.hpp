#pragma once

#include <cstdint>
#include <vector>

#include "crewcg/flight_network.hpp"
#include "crewcg/pairing.hpp"
#include "crewcg/set_cover.hpp"

namespace crewcg {

/// Caps for enumeration. Defaults are effectively unbounded; the orchestrator
/// passes a budget when enumerating over the whole network.
struct EnumLimits {
    std::uint64_t max_expansions = UINT64_MAX;  // DFS steps
    std::size_t max_results = SIZE_MAX;
    bool* truncated = nullptr;  // set to true when a cap was hit
};

/// Pricing subproblem input: the flight subset the search is restricted to,
/// the dual vector of the current RMP, and the column budget.
struct PricingRequest {
    std::vector<int> flight_subset;
    DualVector duals;
    int max_columns = 200;
    double reduced_cost_tolerance = -1e-6;
};

/// All legal duties whose flights lie in `flight_subset`, in lexicographic
/// flight-sequence order.
std::vector<Duty> enumerate_duties(const FlightNetwork& network, const LegalityRules& rules,
                                   const ConnectionUniverse& universe,
                                   const std::vector<int>& flight_subset, EnumLimits limits = {});

/// All legal pairings over the subset (every base in the network considered),
/// costs populated, in lexicographic flight-sequence order.
std::vector<Pairing> enumerate_pairings(const FlightNetwork& network, const LegalityRules& rules,
                                        const CostRules& cost, const ConnectionUniverse& universe,
                                        const std::vector<int>& flight_subset, EnumLimits limits = {});

/// c'_p = c_p - sum of duals over covered flights. Throws when a covered
/// flight has no dual.
double reduced_cost(const Pairing& pairing, const DualVector& duals);

/// Enumerates the subset and returns up to max_columns pairings with reduced
/// cost below the tolerance, sorted by (reduced cost, flight sequence).
std::vector<Pairing> price(const FlightNetwork& network, const LegalityRules& rules,
                           const CostRules& cost, const ConnectionUniverse& universe,
                           const PricingRequest& request, EnumLimits limits = {});

}  // namespace crewcg
