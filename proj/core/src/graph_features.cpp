#include "crewcg/graph_features.hpp"

#include <ostream>
#include <stdexcept>

namespace crewcg {

namespace {

void check_strict_upper(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": not square");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            if (m(i, j) != 0.0) {
                throw std::invalid_argument(std::string(what) + ": entries on/below the diagonal");
            }
        }
    }
}

// Min-max normalizes the block in place; a constant block becomes all zeros.
void normalize_block(Eigen::Ref<Eigen::MatrixXd> block) {
    if (block.size() == 0) return;
    const double lo = block.minCoeff();
    const double hi = block.maxCoeff();
    if (hi == lo) {
        block.setZero();
        return;
    }
    block = (block.array() - lo) / (hi - lo);
}

}  // namespace

std::pair<AdjacencyMatrix, WeightedAdjacency> build_adjacency(const LpSolution& lp,
                                                              const ConnectionUniverse& universe) {
    const int n = universe.num_flights;
    if (lp.pairings.size() != lp.primal.size()) {
        throw std::invalid_argument("build_adjacency: primal length != pairing count");
    }
    AdjacencyMatrix adj{Eigen::MatrixXd::Zero(n, n)};
    WeightedAdjacency weighted{Eigen::MatrixXd::Zero(n, n)};
    for (std::size_t p = 0; p < lp.pairings.size(); ++p) {
        const std::vector<int>& seq = lp.pairings[p].flights;
        const double x = lp.primal[p];
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            const int i = seq[k];
            const int j = seq[k + 1];
            if (i >= j) {
                throw std::invalid_argument("build_adjacency: connection (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ") not id-increasing");
            }
            if (i < 0 || j >= n) {
                throw std::invalid_argument("build_adjacency: flight id outside universe");
            }
            adj.values(i, j) = 1.0;
            weighted.values(i, j) += x;
        }
    }
    return {std::move(adj), std::move(weighted)};
}

IterationRecord make_iteration_record(LpSolution lp, const ConnectionUniverse& universe,
                                      const IterationRecord* previous) {
    IterationRecord rec;
    auto [adj, weighted] = build_adjacency(lp, universe);
    rec.adjacency = std::move(adj);
    rec.weighted = std::move(weighted);
    if (previous == nullptr) {
        rec.cost_ratio = 1.0;
    } else {
        if (lp.cost == 0.0) throw std::invalid_argument("make_iteration_record: zero LP cost");
        rec.cost_ratio = previous->lp.cost / lp.cost;
    }
    rec.lp = std::move(lp);
    return rec;
}

GlobalAdjacency superimpose(const std::vector<AdjacencyMatrix>& history) {
    if (history.empty()) throw std::invalid_argument("superimpose: empty history");
    const Eigen::Index n = history.front().values.rows();
    GlobalAdjacency g{Eigen::MatrixXd::Zero(n, n), static_cast<int>(history.size())};
    for (const AdjacencyMatrix& a : history) {
        if (a.values.rows() != n || a.values.cols() != n) {
            throw std::invalid_argument("superimpose: size mismatch");
        }
        check_strict_upper(a.values, "superimpose");
        g.values = (g.values.array() != 0.0 || a.values.array() != 0.0).cast<double>();
    }
    return g;
}

Eigen::MatrixXd enhanced_primal(const std::vector<IterationRecord>& records) {
    if (records.empty()) throw std::invalid_argument("enhanced_primal: no records");
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(records.front().weighted.values.rows(),
                                              records.front().weighted.values.cols());
    for (const IterationRecord& r : records) {
        x += r.cost_ratio * r.weighted.values;
    }
    return x;
}

Eigen::MatrixXd enhanced_dual(const std::vector<IterationRecord>& records) {
    if (records.empty()) throw std::invalid_argument("enhanced_dual: no records");
    const auto n = static_cast<Eigen::Index>(records.front().lp.duals.values.size());
    Eigen::MatrixXd y(n, static_cast<Eigen::Index>(records.size()));
    for (std::size_t k = 0; k < records.size(); ++k) {
        const IterationRecord& r = records[k];
        if (static_cast<Eigen::Index>(r.lp.duals.values.size()) != n) {
            throw std::invalid_argument("enhanced_dual: dual length mismatch");
        }
        if (r.lp.cost == 0.0) throw std::invalid_argument("enhanced_dual: zero LP cost");
        const double scale = r.cost_ratio / r.lp.cost;
        for (Eigen::Index f = 0; f < n; ++f) {
            y(f, static_cast<Eigen::Index>(k)) = scale * r.lp.duals.values[static_cast<std::size_t>(f)];
        }
    }
    return y;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> enhanced_degrees(const std::vector<IterationRecord>& records) {
    if (records.empty()) throw std::invalid_argument("enhanced_degrees: no records");
    const Eigen::Index n = records.front().weighted.values.rows();
    Eigen::VectorXd in = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (const IterationRecord& r : records) {
        in += r.cost_ratio * r.weighted.values.colwise().sum().transpose();
        out += r.cost_ratio * r.weighted.values.rowwise().sum();
    }
    return {std::move(in), std::move(out)};
}

FeatureMatrix assemble_features(const std::vector<IterationRecord>& records) {
    if (records.empty()) throw std::invalid_argument("assemble_features: no records");
    const Eigen::Index n = records.front().weighted.values.rows();
    const auto t = static_cast<Eigen::Index>(records.size());

    FeatureMatrix f;
    f.num_flights = static_cast<int>(n);
    f.t = static_cast<int>(t);
    f.values.resize(n, n + t + 2);
    f.values.block(0, 0, n, n) = enhanced_primal(records);
    f.values.block(0, n, n, t) = enhanced_dual(records);
    auto [in_deg, out_deg] = enhanced_degrees(records);
    f.values.col(n + t) = in_deg;
    f.values.col(n + t + 1) = out_deg;

    normalize_block(f.values.block(0, 0, n, n));
    normalize_block(f.values.block(0, n, n, t));
    normalize_block(f.values.col(n + t));
    normalize_block(f.values.col(n + t + 1));
    return f;
}

std::vector<std::pair<int, int>> upper_triangle_domain(int n) {
    std::vector<std::pair<int, int>> domain;
    domain.reserve(static_cast<std::size_t>(n) * (n > 0 ? static_cast<std::size_t>(n - 1) : 0) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) domain.emplace_back(i, j);
    }
    return domain;
}

std::pair<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>> partition_edges(
    const GlobalAdjacency& global, const std::vector<std::pair<int, int>>& domain) {
    std::vector<std::pair<int, int>> positives;
    std::vector<std::pair<int, int>> negatives;
    for (const auto& [i, j] : domain) {
        if (i >= j || j >= global.values.cols() || i < 0) {
            throw std::invalid_argument("partition_edges: pair outside the strict upper triangle");
        }
        if (global.values(i, j) != 0.0) {
            positives.emplace_back(i, j);
        } else {
            negatives.emplace_back(i, j);
        }
    }
    return {std::move(positives), std::move(negatives)};
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& matrix) {
    out.precision(17);
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (j > 0) out << ' ';
            out << matrix(i, j);
        }
        out << '\n';
    }
}

}  // namespace crewcg
