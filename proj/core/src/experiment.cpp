#include "crewcg/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <vector>

namespace crewcg {

namespace {

struct SummaryRow {
    std::string loop;
    std::string phase;
    double cost = 0.0;
    int z = 0;
};

std::vector<SummaryRow> summary_rows(const RunTrace& trace) {
    std::vector<SummaryRow> rows;
    rows.push_back({"initial", "", trace.initial_cost, 1});
    for (const LoopStats& loop : trace.loops) {
        rows.push_back({loop.name, "cg", loop.lp_cost, loop.cg_iterations});
        rows.push_back({loop.name, "ip", loop.ip_cost, 1});
    }
    rows.push_back({"final", "", trace.final_cost, trace.total_iterations});
    return rows;
}

void write_cost(std::ostream& out, double cost) {
    out << std::setprecision(17) << cost;
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
    out << "iteration,phase,cost,columns_added,learnt_flag,roc\n";
    for (const TraceRow& row : trace.rows) {
        out << row.iteration << ',' << row.phase << ',';
        write_cost(out, row.cost);
        out << ',' << row.columns_added << ',' << (row.learnt ? 1 : 0) << ',';
        if (row.learnt) out << row.roc;
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const RunTrace* with_trace, const RunTrace* without_trace) {
    out << "loop,phase,cost_without,z_without,cost_with,z_with,delta_cost\n";
    const std::vector<SummaryRow> with_rows =
        with_trace != nullptr ? summary_rows(*with_trace) : std::vector<SummaryRow>{};
    const std::vector<SummaryRow> without_rows =
        without_trace != nullptr ? summary_rows(*without_trace) : std::vector<SummaryRow>{};
    const std::size_t n = std::max(with_rows.size(), without_rows.size());
    for (std::size_t k = 0; k < n; ++k) {
        const SummaryRow* a = k < without_rows.size() ? &without_rows[k] : nullptr;
        const SummaryRow* b = k < with_rows.size() ? &with_rows[k] : nullptr;
        const SummaryRow* label = a != nullptr ? a : b;
        out << label->loop << ',' << label->phase << ',';
        if (a != nullptr) {
            write_cost(out, a->cost);
            out << ',' << a->z;
        } else {
            out << ',';
        }
        out << ',';
        if (b != nullptr) {
            write_cost(out, b->cost);
            out << ',' << b->z;
        } else {
            out << ',';
        }
        out << ',';
        if (a != nullptr && b != nullptr) write_cost(out, b->cost - a->cost);
        out << '\n';
    }
}

void write_curves_csv(std::ostream& out, const RunTrace* with_trace, const RunTrace* without_trace) {
    out << "series,iteration,cost\n";
    auto emit = [&out](const RunTrace& trace, const std::string& suffix) {
        for (const TraceRow& row : trace.rows) {
            if (row.phase.rfind("cg:", 0) == 0) {
                out << "lp_" << suffix << ',' << row.iteration << ',';
            } else if (row.phase.rfind("ip:", 0) == 0) {
                out << "ip_" << suffix << ',' << row.iteration << ',';
            } else {
                continue;  // the initial solution distorts the scale
            }
            write_cost(out, row.cost);
            out << '\n';
        }
    };
    if (without_trace != nullptr) emit(*without_trace, "without");
    if (with_trace != nullptr) emit(*with_trace, "with");
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

RunTrace execute(const NetworkBundle& bundle, RunConfig run_config, bool learning,
                 const std::filesystem::path& dir, const ExperimentOptions& options,
                 std::ostream& log) {
    run_config.learning_enabled = learning;
    Optimizer optimizer(bundle.network, bundle.rules, bundle.cost, run_config);
    std::ofstream epoch_log;
    if (learning && options.verbosity >= 2) {
        epoch_log = open_out(dir / "vgae_epochs_with.csv");
        epoch_log << "epoch,loss,recon,kl,roc\n";
        optimizer.vgae_epoch_log = &epoch_log;
    }
    const RunTrace trace = optimizer.run();
    if (options.verbosity >= 1) {
        log << (learning ? "with-learning" : "without-learning") << ": final cost " << trace.final_cost
            << ", z " << trace.total_iterations << ", " << trace.loops.size() << " loop(s), "
            << trace.wall_seconds_total << " s\n";
    }
    const char* suffix = learning ? "with" : "without";
    auto audit = open_out(dir / (std::string("run_log_") + suffix + ".txt"));
    for (const std::string& line : trace.audit_log) audit << line << '\n';
    audit.precision(17);
    audit << "summary final_cost=" << trace.final_cost << " total_z=" << trace.total_iterations
          << " wall_seconds=" << trace.wall_seconds_total << " (cg " << trace.wall_seconds_cg
          << ", ip " << trace.wall_seconds_ip << ", learning " << trace.wall_seconds_learning
          << ")\n";
    if (options.dump_pool) {
        auto pool = open_out(dir / (std::string("pool_") + suffix + ".txt"));
        optimizer.pool_instance().dump(pool);
    }
    return trace;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                const ExperimentOptions& options, std::ostream& log) {
    if (!options.with_learning && !options.without_learning) {
        throw std::invalid_argument("run_experiment: nothing to run");
    }
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    NetworkBundle bundle = resolve_network(config);
    if (options.verbosity >= 1) {
        log << "network: " << bundle.network.size() << " flights, " << bundle.network.bases().size()
            << " base(s)\n";
    }
    RunConfig run_config = config.run;
    if (options.seed_override) {
        run_config.seed = *options.seed_override;
        run_config.vgae.seed = *options.seed_override;
        run_config.combiner.seed = *options.seed_override;
    }

    ExperimentResult result;
    if (options.without_learning) {
        result.without_trace = execute(bundle, run_config, false, dir, options, log);
        auto out = open_out(dir / "trace_without.csv");
        write_trace_csv(out, *result.without_trace);
    }
    if (options.with_learning) {
        result.with_trace = execute(bundle, run_config, true, dir, options, log);
        auto out = open_out(dir / "trace_with.csv");
        write_trace_csv(out, *result.with_trace);
    }

    {
        auto out = open_out(dir / "summary.csv");
        write_summary_csv(out, result.with_trace ? &*result.with_trace : nullptr,
                          result.without_trace ? &*result.without_trace : nullptr);
    }
    {
        auto out = open_out(dir / "curves.csv");
        write_curves_csv(out, result.with_trace ? &*result.with_trace : nullptr,
                         result.without_trace ? &*result.without_trace : nullptr);
    }

    if (options.verbosity >= 1 && result.with_trace && result.without_trace) {
        const double delta = result.with_trace->final_cost - result.without_trace->final_cost;
        log << "final cost delta (with - without): " << delta << '\n';
    }
    return result;
}

}  // namespace crewcg
