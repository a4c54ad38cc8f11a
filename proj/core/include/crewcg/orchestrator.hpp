#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "crewcg/branch_bound.hpp"
#include "crewcg/combiner.hpp"
#include "crewcg/flight_network.hpp"
#include "crewcg/graph_features.hpp"
#include "crewcg/pairing_engine.hpp"
#include "crewcg/set_cover.hpp"
#include "crewcg/vgae.hpp"

namespace crewcg {

/// Learning-iteration spacing when no explicit schedule is given: start at
/// `first_iteration`, halve the gap (never below `min_gap`) whenever the
/// relative LP improvement over the previous gap drops under the threshold.
struct AdaptiveSchedule {
    int first_iteration = 8;
    int min_gap = 2;
    double improvement_threshold = 0.01;
};

struct RunConfig {
    bool learning_enabled = true;
    std::vector<int> learning_schedule;  // explicit CG-iteration indices; empty = adaptive
    AdaptiveSchedule adaptive;

    int cg_max_iters = 50;
    double cg_improvement_threshold = 1e-4;
    int cg_patience = 3;
    int reopt_max_loops = 4;

    int pricing_baseline_size = 40;  // kept equal to combiner.param1 for fair comparison
    int max_columns = 200;
    double reduced_cost_tolerance = -1e-6;
    long ip_node_budget = 10000;
    std::uint64_t enumeration_budget = 2'000'000;

    unsigned seed = 1;
    VgaeConfig vgae;
    CombinerConfig combiner;

    bool reset_history_per_loop = false;           // drop records between re-opt loops
    bool verify_convergence_full_pricing = true;   // full-network pricing before declaring CG done
    bool restrict_negatives_to_universe = false;   // score only legal connections

    void validate(int num_flights) const;
};

struct TraceRow {
    int iteration = 0;  // cumulative z (initial solution and each IP count as 1)
    std::string phase;  // "initial", "cg:main", "ip:reopt2", ...
    double cost = 0.0;
    int columns_added = 0;
    bool learnt = false;
    double roc = 0.0;  // meaningful only when learnt
};

struct LoopStats {
    std::string name;  // "main", "reopt1", ...
    double lp_cost = 0.0;  // root LP cost fed to the IP
    int cg_iterations = 0;
    double ip_cost = 0.0;
    bool ip_proven = false;
};

struct RunTrace {
    std::vector<TraceRow> rows;
    std::vector<LoopStats> loops;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    int total_iterations = 0;
    double wall_seconds_cg = 0.0;
    double wall_seconds_ip = 0.0;
    double wall_seconds_learning = 0.0;
    double wall_seconds_total = 0.0;
    std::vector<std::string> audit_log;
};

/// Full-coverage starting columns: a greedy cover from a (budget-bounded)
/// enumeration of legal pairings, plus an artificial single-flight column at
/// ten times the dearest legal pairing cost for anything left uncovered.
std::vector<Column> initial_solution(const FlightNetwork& network, const LegalityRules& rules,
                                     const CostRules& cost, const ConnectionUniverse& universe,
                                     std::uint64_t enumeration_budget = 2'000'000);

/// Baseline (non-learning) pricing subset: the top half of `size` flights by
/// dual value (ties broken by a seeded shuffle), the rest sampled uniformly.
std::vector<int> baseline_pricing_subset(const DualVector& duals, int size, unsigned seed);

/// Column generation followed by branch-and-bound, repeated over
/// re-optimization loops until the IP cost matches its root LP cost or the
/// loop cutoff is reached. Owns the growing column pool and the learning
/// history.
class Optimizer {
public:
    Optimizer(const FlightNetwork& network, const LegalityRules& rules, const CostRules& cost,
              RunConfig config);

    RunTrace run();

    /// One CG phase over the current pool; exposed for tests. Returns the
    /// root LP cost over the final pool and the iteration count.
    LoopStats cg_phase(const std::string& loop_name, RunTrace& trace);

    const std::vector<Column>& pool() const { return pool_; }
    SetCoverInstance pool_instance() const;
    std::ostream* vgae_epoch_log = nullptr;

private:
    bool learning_due(int cg_iteration) const;
    void after_learning(int cg_iteration);
    int add_columns(const std::vector<Pairing>& pairings);
    std::vector<Pairing> run_pricing(const LpSolution& lp, int cg_iteration, bool* learnt, double* roc,
                                     RunTrace& trace);

    const FlightNetwork& network_;
    const LegalityRules& rules_;
    const CostRules& cost_;
    RunConfig config_;
    ConnectionUniverse universe_;

    std::vector<Column> pool_;
    struct SeqHash {
        std::size_t operator()(const std::vector<int>& v) const {
            std::size_t h = 1469598103934665603ull;
            for (int x : v) {
                h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            }
            return h;
        }
    };
    std::unordered_map<std::vector<int>, int, SeqHash> legal_keys_;       // sequence -> pool index
    std::unordered_map<std::vector<int>, int, SeqHash> artificial_keys_;

    std::vector<IterationRecord> records_;
    std::vector<double> cg_cost_history_;  // per global CG iteration
    int global_cg_iteration_ = 0;
    int z_counter_ = 0;

    // adaptive schedule state
    int next_learning_iteration_ = 0;
    int current_gap_ = 0;
};

}  // namespace crewcg
