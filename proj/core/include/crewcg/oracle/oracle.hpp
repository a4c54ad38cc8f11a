#pragma once

#include <string>
#include <utility>
#include <vector>

#include "crewcg/flight_network.hpp"
#include "crewcg/set_cover.hpp"

namespace crewcg::oracle {

/// Optimal LP value of the covering instance by exhaustive enumeration of the
/// basic feasible solutions of [A -I] z = 1, z >= 0. Exponential in the
/// number of rows; meant for instances with at most ~8 flights.
double lp_vertex_enumeration(const SetCoverInstance& instance);

/// Optimal IP value by exhaustive subset search over the columns (include /
/// exclude recursion with cost and coverage pruning; at most 64 flights).
/// Fills `best` with the chosen column indices when non-null.
double ip_subset_search(const SetCoverInstance& instance, std::vector<int>* best = nullptr);

/// Rule-by-rule legality verdict for a flattened flight-id sequence, written
/// independently of the Pairing/Duty machinery: duties are split wherever the
/// gap classifies as an overnight rest. Fills `duty_split` with the duty
/// boundaries when legal and requested.
bool legal_pairing_sequence(const FlightNetwork& network, const LegalityRules& rules,
                            const std::vector<int>& sequence,
                            std::vector<std::string>* violations = nullptr,
                            std::vector<std::vector<int>>* duty_split = nullptr);

/// Cost of a legal sequence by per-term accumulation over its duty split.
double pairing_cost_by_terms(const FlightNetwork& network, const LegalityRules& rules,
                             const CostRules& cost, const std::vector<std::vector<int>>& duty_split);

/// Every legal pairing over the subset as a flight-id sequence, found by
/// filtering all 2^k - 1 nonempty id-ordered subsequences. Sorted.
std::vector<std::vector<int>> enumerate_pairing_sequences(const FlightNetwork& network,
                                                          const LegalityRules& rules,
                                                          const std::vector<int>& flight_subset);

/// Every legal duty over the subset by filtering all ordered subsequences of
/// length <= duty_max_flights. Sorted.
std::vector<std::vector<int>> enumerate_duty_sequences(const FlightNetwork& network,
                                                       const LegalityRules& rules,
                                                       const std::vector<int>& flight_subset);

/// Literal double loop over all flight pairs.
std::vector<std::pair<int, int>> connection_pairs_bruteforce(const FlightNetwork& network,
                                                             const LegalityRules& rules);

/// AUC by O(pos x neg) pairwise comparison, ties counting one half.
double auc_pairwise(const std::vector<double>& positive_scores,
                    const std::vector<double>& negative_scores);

}  // namespace crewcg::oracle
