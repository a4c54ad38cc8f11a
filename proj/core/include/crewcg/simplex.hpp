#pragma once

#include <stdexcept>

#include "crewcg/set_cover.hpp"

namespace crewcg {

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    LpSolution solution;  // valid when status == Optimal
    long iterations = 0;
};

/// Pivot-limit or unbounded-direction failures (set covering with
/// nonnegative costs should never hit either).
struct SimplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Optimal LP relaxation of the covering instance by two-phase dense revised
/// simplex. The primal is reported clamped to [0, 1]; duals are the optimal
/// multipliers of the cover rows (nonnegative).
LpResult solve_lp(const SetCoverInstance& instance);

}  // namespace crewcg
