#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <utility>
#include <vector>

#include "crewcg/flight_network.hpp"
#include "crewcg/set_cover.hpp"

namespace crewcg {

/// Binary flight-connection matrix of one CG iteration, strictly
/// upper-triangular (flight ids are departure-ordered).
struct AdjacencyMatrix {
    Eigen::MatrixXd values;
};

/// Same support as AdjacencyMatrix with each edge weighted by the summed
/// primal weight of the pairings using that connection.
struct WeightedAdjacency {
    Eigen::MatrixXd values;
};

/// Element-wise union of all per-iteration adjacencies seen so far. Grows
/// monotonically with the iteration count.
struct GlobalAdjacency {
    Eigen::MatrixXd values;
    int iterations = 0;
};

/// Everything the feature blocks need from one CG iteration. cost_ratio is
/// C^(t-1)/C^(t), taken as 1 for the first record.
struct IterationRecord {
    LpSolution lp;
    AdjacencyMatrix adjacency;
    WeightedAdjacency weighted;
    double cost_ratio = 1.0;
};

/// Concatenated [X | Y | I | O] block matrix, each block min-max normalized
/// over its own entries; width = num_flights + t + 2.
struct FeatureMatrix {
    Eigen::MatrixXd values;
    int num_flights = 0;
    int t = 0;
};

/// Binary and primal-weighted adjacency of one LP solution. Throws if a
/// pairing's consecutive flights are not id-increasing.
std::pair<AdjacencyMatrix, WeightedAdjacency> build_adjacency(const LpSolution& lp,
                                                              const ConnectionUniverse& universe);

/// Convenience: derives the cost ratio from the previous record (if any) and
/// builds the full record for this iteration.
IterationRecord make_iteration_record(LpSolution lp, const ConnectionUniverse& universe,
                                      const IterationRecord* previous);

GlobalAdjacency superimpose(const std::vector<AdjacencyMatrix>& history);

/// Sum of cost-ratio-weighted primal adjacencies, before normalization.
Eigen::MatrixXd enhanced_primal(const std::vector<IterationRecord>& records);

/// Column k = (CR^(k)/C^(k)) * y^(k); |F| x t. Throws on a zero LP cost.
Eigen::MatrixXd enhanced_dual(const std::vector<IterationRecord>& records);

/// Cost-ratio-weighted in-degree (column sums) and out-degree (row sums) of
/// the weighted adjacencies, |F| x 1 each.
std::pair<Eigen::VectorXd, Eigen::VectorXd> enhanced_degrees(const std::vector<IterationRecord>& records);

FeatureMatrix assemble_features(const std::vector<IterationRecord>& records);

/// All (i, j) with i < j over n flights.
std::vector<std::pair<int, int>> upper_triangle_domain(int n);

/// Splits a pair domain into (edges present in the global adjacency,
/// edges absent from it).
std::pair<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>> partition_edges(
    const GlobalAdjacency& global, const std::vector<std::pair<int, int>>& domain);

/// Plain numeric grid, one matrix row per line.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& matrix);

}  // namespace crewcg
