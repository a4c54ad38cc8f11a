#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "crewcg/config_io.hpp"
#include "crewcg/orchestrator.hpp"

namespace crewcg {

struct ExperimentOptions {
    bool with_learning = true;     // run the learning-assisted optimizer
    bool without_learning = true;  // run the plain optimizer
    int verbosity = 1;
    bool dump_pool = false;  // write the final column pool as a set-cover instance
    std::optional<unsigned> seed_override;
};

struct ExperimentResult {
    std::optional<RunTrace> with_trace;
    std::optional<RunTrace> without_trace;
};

void write_trace_csv(std::ostream& out, const RunTrace& trace);
void write_summary_csv(std::ostream& out, const RunTrace* with_trace, const RunTrace* without_trace);
void write_curves_csv(std::ostream& out, const RunTrace* with_trace, const RunTrace* without_trace);

/// Executes the configured run(s) and writes trace_with.csv /
/// trace_without.csv, summary.csv, curves.csv and per-run audit logs under
/// out_dir. Returns the traces for inspection.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir,
                                const ExperimentOptions& options, std::ostream& log);

}  // namespace crewcg
