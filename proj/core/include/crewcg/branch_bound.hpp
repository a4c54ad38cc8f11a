#pragma once

#include <vector>

#include "crewcg/set_cover.hpp"

namespace crewcg {

struct IpResult {
    std::vector<int> selected;  // column indices of the best cover found
    double cost = 0.0;
    bool proven = false;  // false when the node budget ran out first
    long nodes = 0;
};

/// Best-first branch-and-bound over binary column choices: LP bound per node,
/// branching on the most fractional variable. Starts from a greedy rounding
/// of the root LP so a budget cutoff still returns a full cover.
IpResult solve_ip(const SetCoverInstance& instance, long node_budget = 100000);

}  // namespace crewcg
