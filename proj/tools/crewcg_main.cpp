#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "crewcg/config_io.hpp"
#include "crewcg/experiment.hpp"
#include "crewcg/netgen.hpp"
#include "crewcg/oracle/oracle.hpp"
#include "crewcg/set_cover.hpp"

namespace {

crewcg::SetCoverInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    return crewcg::SetCoverInstance::parse(in);
}

int cmd_gen(const crewcg::NetGenConfig& gen_config, const std::string& out_path) {
    const crewcg::LegalityRules rules;
    const crewcg::CostRules cost;
    const crewcg::FlightNetwork network = crewcg::generate_network(gen_config, rules);
    if (out_path == "-") {
        crewcg::save_network(std::cout, network, rules, cost);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        crewcg::save_network(out, network, rules, cost);
        std::cout << "wrote " << network.size() << " flights to " << out_path << '\n';
    }
    return EXIT_SUCCESS;
}

int cmd_run(const std::string& config_path, std::string out_dir, bool no_learning, bool learning_only,
            bool dump_pool, int verbosity, std::optional<unsigned> seed) {
    if (const char* env = std::getenv("CREWCG_OUT_DIR"); env != nullptr && *env != '\0') {
        out_dir = env;
    }
    const crewcg::ExperimentConfig config = crewcg::load_experiment_config(config_path);
    crewcg::ExperimentOptions options;
    options.with_learning = !no_learning;
    options.without_learning = !learning_only;
    options.dump_pool = dump_pool;
    options.verbosity = verbosity;
    options.seed_override = seed;
    crewcg::run_experiment(config, out_dir, options, std::cout);
    std::cout << "outputs in " << out_dir << '\n';
    return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crewcg - crew pairing column generation laboratory"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic hub-and-spoke network");
    crewcg::NetGenConfig gen_config;
    std::string gen_out = "network.json";
    gen->add_option("--hubs", gen_config.num_hubs, "number of hub airports");
    gen->add_option("--spokes", gen_config.num_spokes, "number of spoke airports");
    gen->add_option("--bases", gen_config.num_bases, "number of crew bases (first hubs)");
    gen->add_option("--flights-per-day", gen_config.flights_per_day, "flights per day (even)");
    gen->add_option("--days", gen_config.num_days, "number of days");
    gen->add_option("--seed", gen_config.seed, "generator seed");
    gen->add_option("-o,--output", gen_out, "output path ('-' for stdout)");

    // run
    auto* run = app.add_subcommand("run", "run a with/without-learning experiment");
    std::string run_config_path;
    std::string run_out_dir = "out";
    bool no_learning = false;
    bool learning_only = false;
    int verbosity = 1;
    std::optional<unsigned> seed_override;
    unsigned seed_value = 0;
    run->add_option("-c,--config", run_config_path, "experiment config (JSON)")->required();
    run->add_option("-o,--out-dir", run_out_dir,
                    "output directory (CREWCG_OUT_DIR overrides)");
    run->add_flag("--no-learning", no_learning, "run only the plain optimizer");
    run->add_flag("--learning-only", learning_only, "run only the learning-assisted optimizer");
    bool dump_pool = false;
    run->add_flag("--dump-pool", dump_pool,
                  "write each run's final column pool as a plain-text set-cover instance");
    auto* seed_opt = run->add_option("--seed", seed_value, "override every configured seed");
    run->add_flag_function("-v,--verbose", [&verbosity](std::int64_t n) { verbosity = 1 + static_cast<int>(n); },
                           "more output (repeat for per-epoch logs)");
    run->add_flag_function("-q,--quiet", [&verbosity](std::int64_t) { verbosity = 0; }, "no progress output");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations");
    auto* oracle_lp = oracle_cmd->add_subcommand("lp", "LP optimum by vertex enumeration");
    auto* oracle_ip = oracle_cmd->add_subcommand("ip", "IP optimum by subset search");
    auto* oracle_pairings = oracle_cmd->add_subcommand("pairings", "legal pairings by exhaustive filter");
    std::string instance_path;
    std::string network_path;
    bool list_pairings = false;
    oracle_lp->add_option("-i,--instance", instance_path, "set-cover instance (plain text)")->required();
    oracle_ip->add_option("-i,--instance", instance_path, "set-cover instance (plain text)")->required();
    oracle_pairings->add_option("-n,--network", network_path, "network file (JSON)")->required();
    oracle_pairings->add_flag("--list", list_pairings, "print every pairing's flight sequence");
    oracle_cmd->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_config, gen_out);
        if (run->parsed()) {
            if (seed_opt->count() > 0) seed_override = seed_value;
            return cmd_run(run_config_path, run_out_dir, no_learning, learning_only, dump_pool,
                           verbosity, seed_override);
        }
        if (oracle_lp->parsed()) {
            const auto inst = read_instance(instance_path);
            std::cout.precision(17);
            std::cout << crewcg::oracle::lp_vertex_enumeration(inst) << '\n';
            return EXIT_SUCCESS;
        }
        if (oracle_ip->parsed()) {
            const auto inst = read_instance(instance_path);
            std::vector<int> best;
            std::cout.precision(17);
            std::cout << crewcg::oracle::ip_subset_search(inst, &best) << '\n';
            for (std::size_t k = 0; k < best.size(); ++k) {
                std::cout << (k > 0 ? " " : "") << best[k];
            }
            if (!best.empty()) std::cout << '\n';
            return EXIT_SUCCESS;
        }
        if (oracle_pairings->parsed()) {
            const crewcg::NetworkBundle bundle = crewcg::load_network_file(network_path);
            std::vector<int> all(static_cast<std::size_t>(bundle.network.size()));
            for (int f = 0; f < bundle.network.size(); ++f) all[static_cast<std::size_t>(f)] = f;
            const auto sequences =
                crewcg::oracle::enumerate_pairing_sequences(bundle.network, bundle.rules, all);
            std::cout << sequences.size() << " legal pairings\n";
            if (list_pairings) {
                for (const auto& seq : sequences) {
                    for (std::size_t k = 0; k < seq.size(); ++k) {
                        std::cout << (k > 0 ? " " : "") << seq[k];
                    }
                    std::cout << '\n';
                }
            }
            return EXIT_SUCCESS;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    return EXIT_FAILURE;
}
