#pragma once

#include <iosfwd>
#include <vector>

namespace crewcg {

/// One RMP column: the flight sequence a pairing covers plus its cost.
/// Artificial columns are single-flight feasibility fillers at penalty cost.
struct Column {
    std::vector<int> flights;  // strictly increasing flight ids
    double cost = 0.0;
    bool artificial = false;
};

/// min c^T x  s.t.  sum_{p covers f} x_p >= 1 for every flight f,  x >= 0.
struct SetCoverInstance {
    int num_flights = 0;
    std::vector<Column> columns;

    /// Flights no column covers; nonempty means the instance is infeasible.
    std::vector<int> uncovered_flights() const;
    bool fully_coverable() const { return uncovered_flights().empty(); }

    /// Plain-text columnar dump, one column per line: cost, flight count,
    /// flight ids. Round-trips through parse().
    void dump(std::ostream& out) const;
    static SetCoverInstance parse(std::istream& in);
};

/// Nonnegative shadow price per flight, length |F|.
struct DualVector {
    std::vector<double> values;
};

/// One CG iteration's LP solution: pairings P, primal weights x in [0,1],
/// duals y >= 0 and LP cost C.
struct LpSolution {
    std::vector<Column> pairings;
    std::vector<double> primal;
    DualVector duals;
    double cost = 0.0;
};

}  // namespace crewcg
