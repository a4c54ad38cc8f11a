#include "crewcg/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "crewcg/simplex.hpp"

namespace crewcg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void RunConfig::validate(int num_flights) const {
    if (cg_max_iters <= 0 || cg_patience <= 0 || reopt_max_loops < 0) {
        throw std::invalid_argument("run config: iteration limits must be positive");
    }
    if (cg_improvement_threshold <= 0.0) {
        throw std::invalid_argument("run config: cg improvement threshold must be > 0");
    }
    if (max_columns <= 0 || pricing_baseline_size <= 0 || ip_node_budget <= 0) {
        throw std::invalid_argument("run config: budgets must be positive");
    }
    if (pricing_baseline_size > num_flights) {
        throw std::invalid_argument("run config: pricing_baseline_size exceeds |F|");
    }
    for (std::size_t k = 0; k + 1 < learning_schedule.size(); ++k) {
        if (learning_schedule[k] >= learning_schedule[k + 1]) {
            throw std::invalid_argument("run config: learning schedule must be strictly increasing");
        }
    }
    if (!learning_schedule.empty() && learning_schedule.front() <= 0) {
        throw std::invalid_argument("run config: learning schedule indices start at 1");
    }
    if (adaptive.first_iteration <= 0 || adaptive.min_gap <= 0 ||
        adaptive.improvement_threshold <= 0.0) {
        throw std::invalid_argument("run config: adaptive schedule parameters must be positive");
    }
    if (learning_enabled) {
        vgae.validate();
        if (combiner.param1 <= 0 || 2 * combiner.param1 >= num_flights) {
            throw std::invalid_argument("run config: combiner param1 must be < |F|/2");
        }
    }
}

std::vector<Column> initial_solution(const FlightNetwork& network, const LegalityRules& rules,
                                     const CostRules& cost, const ConnectionUniverse& universe,
                                     std::uint64_t enumeration_budget) {
    if (network.empty()) throw std::invalid_argument("initial_solution: empty network");
    std::vector<int> all(static_cast<std::size_t>(network.size()));
    for (int f = 0; f < network.size(); ++f) all[static_cast<std::size_t>(f)] = f;

    EnumLimits limits;
    limits.max_expansions = enumeration_budget;
    const std::vector<Pairing> pairings =
        enumerate_pairings(network, rules, cost, universe, all, limits);

    double max_cost = 0.0;
    for (const Pairing& p : pairings) max_cost = std::max(max_cost, p.cost);

    std::vector<int> cover_count(static_cast<std::size_t>(network.size()), 0);
    int uncovered = network.size();
    std::vector<Column> chosen;
    std::vector<char> used(pairings.size(), 0);
    while (uncovered > 0) {
        int best = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < pairings.size(); ++k) {
            if (used[k]) continue;
            int fresh = 0;
            for (const Duty& d : pairings[k].duties) {
                for (int f : d.flights) {
                    if (cover_count[static_cast<std::size_t>(f)] == 0) ++fresh;
                }
            }
            if (fresh == 0) continue;
            const double ratio = pairings[k].cost / static_cast<double>(fresh);
            if (ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && best >= 0 && pairings[k].cost < pairings[static_cast<std::size_t>(best)].cost)) {
                best_ratio = ratio;
                best = static_cast<int>(k);
            }
        }
        if (best < 0) break;  // nothing covers anything new; artificials take over
        used[static_cast<std::size_t>(best)] = 1;
        Column col;
        col.flights = pairings[static_cast<std::size_t>(best)].flight_sequence();
        col.cost = pairings[static_cast<std::size_t>(best)].cost;
        chosen.push_back(std::move(col));
        for (const Duty& d : pairings[static_cast<std::size_t>(best)].duties) {
            for (int f : d.flights) {
                if (cover_count[static_cast<std::size_t>(f)]++ == 0) --uncovered;
            }
        }
    }

    const double big_m = 10.0 * std::max(1.0, max_cost);
    for (int f = 0; f < network.size(); ++f) {
        if (cover_count[static_cast<std::size_t>(f)] == 0) {
            Column artificial;
            artificial.flights = {f};
            artificial.cost = big_m;
            artificial.artificial = true;
            chosen.push_back(std::move(artificial));
        }
    }
    return chosen;
}

std::vector<int> baseline_pricing_subset(const DualVector& duals, int size, unsigned seed) {
    const int n = static_cast<int>(duals.values.size());
    if (size <= 0 || size > n) {
        throw std::invalid_argument("baseline_pricing_subset: size outside [1, |F|]");
    }
    std::mt19937 rng(seed);
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int f = 0; f < n; ++f) ids[static_cast<std::size_t>(f)] = f;
    std::shuffle(ids.begin(), ids.end(), rng);  // random tie-break under the sort
    std::stable_sort(ids.begin(), ids.end(), [&duals](int a, int b) {
        return duals.values[static_cast<std::size_t>(a)] > duals.values[static_cast<std::size_t>(b)];
    });

    const int top = std::min(size, (size + 1) / 2);
    std::vector<int> subset(ids.begin(), ids.begin() + top);
    std::vector<int> rest(ids.begin() + top, ids.end());
    std::shuffle(rest.begin(), rest.end(), rng);
    subset.insert(subset.end(), rest.begin(), rest.begin() + (size - top));
    std::sort(subset.begin(), subset.end());
    return subset;
}

Optimizer::Optimizer(const FlightNetwork& network, const LegalityRules& rules, const CostRules& cost,
                     RunConfig config)
    : network_(network), rules_(rules), cost_(cost), config_(std::move(config)) {
    rules_.validate();
    cost_.validate();
    config_.validate(network_.size());
    universe_ = connection_universe(network_, rules_);
    next_learning_iteration_ = config_.adaptive.first_iteration;
    current_gap_ = config_.adaptive.first_iteration;
}

SetCoverInstance Optimizer::pool_instance() const {
    SetCoverInstance inst;
    inst.num_flights = network_.size();
    inst.columns = pool_;
    return inst;
}

bool Optimizer::learning_due(int cg_iteration) const {
    if (!config_.learning_enabled) return false;
    if (!config_.learning_schedule.empty()) {
        return std::binary_search(config_.learning_schedule.begin(), config_.learning_schedule.end(),
                                  cg_iteration);
    }
    return cg_iteration == next_learning_iteration_;
}

void Optimizer::after_learning(int cg_iteration) {
    if (!config_.learning_schedule.empty()) return;
    const int lookback = cg_iteration - current_gap_;
    double improvement = 1.0;
    if (lookback >= 1 && static_cast<std::size_t>(lookback) <= cg_cost_history_.size()) {
        const double before = cg_cost_history_[static_cast<std::size_t>(lookback - 1)];
        const double now = cg_cost_history_.back();
        improvement = before > 0.0 ? (before - now) / before : 0.0;
    }
    if (improvement < config_.adaptive.improvement_threshold) {
        current_gap_ = std::max(config_.adaptive.min_gap, current_gap_ / 2);
    }
    next_learning_iteration_ = cg_iteration + current_gap_;
}

int Optimizer::add_columns(const std::vector<Pairing>& pairings) {
    int added = 0;
    for (const Pairing& p : pairings) {
        std::vector<int> key = p.flight_sequence();
        if (legal_keys_.count(key) > 0) continue;
        Column col;
        col.flights = key;
        col.cost = p.cost;
        legal_keys_.emplace(std::move(key), static_cast<int>(pool_.size()));
        pool_.push_back(std::move(col));
        ++added;
    }
    return added;
}

std::vector<Pairing> Optimizer::run_pricing(const LpSolution& lp, int cg_iteration, bool* learnt,
                                            double* roc, RunTrace& trace) {
    *learnt = false;
    *roc = 0.0;
    if (learning_due(cg_iteration)) {
        *learnt = true;
        const auto t0 = Clock::now();
        const FeatureMatrix features = assemble_features(records_);
        std::vector<AdjacencyMatrix> history;
        history.reserve(records_.size());
        for (const IterationRecord& r : records_) history.push_back(r.adjacency);
        const GlobalAdjacency global = superimpose(history);

        const std::vector<std::pair<int, int>> domain =
            config_.restrict_negatives_to_universe ? universe_.pairs
                                                   : upper_triangle_domain(network_.size());
        VgaeConfig vgae_config = config_.vgae;
        vgae_config.seed = config_.vgae.seed + static_cast<unsigned>(cg_iteration);
        TrainOptions train_options;
        train_options.domain = &domain;
        train_options.epoch_log = vgae_epoch_log;
        const VgaeModel model = train(vgae_config, global, features, train_options);
        *roc = model.roc;

        auto [positives, negatives] = partition_edges(global, domain);
        const PredictionSet predictions = predict_negatives(model, negatives);

        PricingContext context;
        context.network = &network_;
        context.rules = &rules_;
        context.cost = &cost_;
        context.universe = &universe_;
        context.max_columns = config_.max_columns;
        context.reduced_cost_tolerance = config_.reduced_cost_tolerance;
        context.limits.max_expansions = config_.enumeration_budget;
        CombinerConfig combiner_config = config_.combiner;
        combiner_config.seed = config_.combiner.seed + static_cast<unsigned>(cg_iteration);
        const CombineOutcome outcome = combine(predictions, model.roc, context, lp.duals, combiner_config);

        trace.wall_seconds_learning += seconds_since(t0);
        std::ostringstream audit;
        audit << "learn t=" << cg_iteration << " roc=" << model.roc
              << " epochs=" << model.epochs_run << " E-=" << negatives.size()
              << " pairs_used=" << outcome.used_pairs.size()
              << " learnt=" << outcome.learnt_count << " random=" << outcome.random_count
              << " priced=" << outcome.pairings.size() << " subset=[";
        for (std::size_t k = 0; k < outcome.flight_subset.size(); ++k) {
            if (k > 0) audit << ' ';
            audit << outcome.flight_subset[k];
        }
        audit << ']';
        trace.audit_log.push_back(audit.str());

        after_learning(cg_iteration);
        return outcome.pairings;
    }

    const std::vector<int> subset = baseline_pricing_subset(
        lp.duals, config_.pricing_baseline_size, config_.seed + static_cast<unsigned>(cg_iteration));
    PricingRequest request;
    request.flight_subset = subset;
    request.duals = lp.duals;
    request.max_columns = config_.max_columns;
    request.reduced_cost_tolerance = config_.reduced_cost_tolerance;
    EnumLimits limits;
    limits.max_expansions = config_.enumeration_budget;
    return price(network_, rules_, cost_, universe_, request, limits);
}

LoopStats Optimizer::cg_phase(const std::string& loop_name, RunTrace& trace) {
    LoopStats stats;
    stats.name = loop_name;

    const auto phase_start = Clock::now();
    int stall_count = 0;
    double last_cost = std::numeric_limits<double>::quiet_NaN();
    bool pool_dirty = true;
    double root_lp_cost = 0.0;

    for (int iter = 0; iter < config_.cg_max_iters; ++iter) {
        const LpResult lp = solve_lp(pool_instance());
        if (lp.status != LpStatus::Optimal) {
            throw std::runtime_error("cg_phase: RMP infeasible despite artificial columns");
        }
        pool_dirty = false;
        root_lp_cost = lp.solution.cost;

        ++global_cg_iteration_;
        ++stats.cg_iterations;
        cg_cost_history_.push_back(lp.solution.cost);
        if (config_.learning_enabled) {
            // The learnt history only exists on learning runs; with learning
            // off no graph-features code runs at all.
            records_.push_back(make_iteration_record(lp.solution, universe_,
                                                     records_.empty() ? nullptr : &records_.back()));
        }

        bool learnt = false;
        double roc = 0.0;
        std::vector<Pairing> candidates =
            run_pricing(lp.solution, global_cg_iteration_, &learnt, &roc, trace);
        int added = add_columns(candidates);

        bool verified_converged = false;
        if (added == 0) {
            if (config_.verify_convergence_full_pricing) {
                std::vector<int> all(static_cast<std::size_t>(network_.size()));
                for (int f = 0; f < network_.size(); ++f) all[static_cast<std::size_t>(f)] = f;
                PricingRequest request;
                request.flight_subset = all;
                request.duals = lp.solution.duals;
                request.max_columns = config_.max_columns;
                request.reduced_cost_tolerance = config_.reduced_cost_tolerance;
                bool truncated = false;
                EnumLimits limits;
                limits.max_expansions = config_.enumeration_budget;
                limits.truncated = &truncated;
                const std::vector<Pairing> full =
                    price(network_, rules_, cost_, universe_, request, limits);
                added = add_columns(full);
                verified_converged = added == 0;
                std::ostringstream audit;
                audit << "full-pricing t=" << global_cg_iteration_ << " found=" << added
                      << (truncated ? " (enumeration truncated)" : "");
                trace.audit_log.push_back(audit.str());
            } else {
                verified_converged = true;
            }
        }
        pool_dirty = added > 0;

        ++z_counter_;
        trace.rows.push_back(
            {z_counter_, "cg:" + loop_name, lp.solution.cost, added, learnt, roc});

        if (verified_converged) break;

        if (!std::isnan(last_cost)) {
            const double improvement = last_cost > 0.0 ? (last_cost - lp.solution.cost) / last_cost : 0.0;
            stall_count = improvement < config_.cg_improvement_threshold ? stall_count + 1 : 0;
            if (stall_count >= config_.cg_patience) break;
        }
        last_cost = lp.solution.cost;
    }

    if (pool_dirty) {
        // Columns arrived after the last solve; the IP needs the root LP of
        // the final pool.
        const LpResult lp = solve_lp(pool_instance());
        if (lp.status != LpStatus::Optimal) {
            throw std::runtime_error("cg_phase: final RMP solve infeasible");
        }
        root_lp_cost = lp.solution.cost;
        ++global_cg_iteration_;
        ++stats.cg_iterations;
        cg_cost_history_.push_back(lp.solution.cost);
        if (config_.learning_enabled) {
            records_.push_back(make_iteration_record(lp.solution, universe_,
                                                     records_.empty() ? nullptr : &records_.back()));
        }
        ++z_counter_;
        trace.rows.push_back({z_counter_, "cg:" + loop_name, lp.solution.cost, 0, false, 0.0});
    }

    stats.lp_cost = root_lp_cost;
    trace.wall_seconds_cg += seconds_since(phase_start);
    return stats;
}

RunTrace Optimizer::run() {
    RunTrace trace;
    const auto run_start = Clock::now();

    const std::vector<Column> start = initial_solution(network_, rules_, cost_, universe_,
                                                       config_.enumeration_budget);
    for (const Column& c : start) {
        if (c.artificial) {
            if (artificial_keys_.emplace(c.flights, static_cast<int>(pool_.size())).second) {
                pool_.push_back(c);
            }
        } else if (legal_keys_.emplace(c.flights, static_cast<int>(pool_.size())).second) {
            pool_.push_back(c);
        }
    }
    trace.initial_cost = 0.0;
    for (const Column& c : start) trace.initial_cost += c.cost;
    ++z_counter_;
    trace.rows.push_back({z_counter_, "initial", trace.initial_cost,
                          static_cast<int>(pool_.size()), false, 0.0});

    for (int loop = 0; loop <= config_.reopt_max_loops; ++loop) {
        const std::string name = loop == 0 ? "main" : "reopt" + std::to_string(loop);
        if (loop > 0 && config_.reset_history_per_loop) {
            records_.clear();
            next_learning_iteration_ = global_cg_iteration_ + config_.adaptive.first_iteration;
            current_gap_ = config_.adaptive.first_iteration;
        }

        LoopStats stats = cg_phase(name, trace);

        const auto ip_start = Clock::now();
        const IpResult ip = solve_ip(pool_instance(), config_.ip_node_budget);
        trace.wall_seconds_ip += seconds_since(ip_start);
        stats.ip_cost = ip.cost;
        stats.ip_proven = ip.proven;
        ++z_counter_;
        trace.rows.push_back({z_counter_, "ip:" + name, ip.cost, 0, false, 0.0});
        trace.loops.push_back(stats);
        trace.final_cost = ip.cost;

        if (ip.cost <= stats.lp_cost * (1.0 + 1e-6)) break;
    }

    trace.total_iterations = z_counter_;
    trace.wall_seconds_total = seconds_since(run_start);
    return trace;
}

}  // namespace crewcg
