#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crewcg/config_io.hpp"
#include "crewcg/experiment.hpp"
#include "crewcg/netgen.hpp"
#include "crewcg/oracle/oracle.hpp"
#include "helpers.hpp"

using namespace crewcg;

namespace {

const LegalityRules kRules;

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("crewcg_test_" + std::to_string(++counter) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("netgen: same seed reproduces the network exactly") {
    NetGenConfig config;
    config.flights_per_day = 20;
    config.num_days = 1;
    const FlightNetwork a = generate_network(config, kRules);
    const FlightNetwork b = generate_network(config, kRules);
    REQUIRE(a.size() == b.size());
    for (int f = 0; f < a.size(); ++f) {
        CHECK(a.flight(f).origin == b.flight(f).origin);
        CHECK(a.flight(f).destination == b.flight(f).destination);
        CHECK(a.flight(f).dep_time == b.flight(f).dep_time);
        CHECK(a.flight(f).arr_time == b.flight(f).arr_time);
    }
}

TEST_CASE("netgen: single-hub topology touches the hub on every flight") {
    NetGenConfig config;
    config.num_hubs = 1;
    config.num_spokes = 2;
    config.num_bases = 1;
    config.flights_per_day = 8;
    config.num_days = 1;
    config.seed = 5;
    const FlightNetwork net = generate_network(config, kRules);
    REQUIRE(net.size() == 8);
    for (const Flight& f : net.flights()) {
        CHECK((f.origin == "H0" || f.destination == "H0"));
    }
}

TEST_CASE("netgen: every base owns at least one legal pairing") {
    NetGenConfig config;
    config.flights_per_day = 24;
    config.num_days = 1;
    config.seed = 8;
    const FlightNetwork net = generate_network(config, kRules);
    std::vector<int> all(static_cast<std::size_t>(net.size()));
    for (int f = 0; f < net.size(); ++f) all[static_cast<std::size_t>(f)] = f;
    const auto sequences = oracle::enumerate_pairing_sequences(net, kRules, all);
    for (const CrewBase& base : net.bases()) {
        bool found = false;
        for (const auto& seq : sequences) {
            if (net.flight(seq.front()).origin == base.airport) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("netgen validates its configuration") {
    NetGenConfig config;
    config.flights_per_day = 7;  // odd
    CHECK_THROWS_AS(generate_network(config, kRules), std::invalid_argument);
    config = NetGenConfig{};
    config.num_bases = 9;
    CHECK_THROWS_AS(generate_network(config, kRules), std::invalid_argument);
}

TEST_CASE("network JSON round-trips through save and load") {
    const FlightNetwork net = crewcg::testing::random_small_network(4, 12);
    CostRules cost;
    cost.rate_tafb = 0.7;
    std::stringstream buffer;
    save_network(buffer, net, kRules, cost);
    const NetworkBundle back = load_network(buffer);
    REQUIRE(back.network.size() == net.size());
    for (int f = 0; f < net.size(); ++f) {
        CHECK(back.network.flight(f).origin == net.flight(f).origin);
        CHECK(back.network.flight(f).dep_time == net.flight(f).dep_time);
    }
    CHECK(back.cost.rate_tafb == 0.7);
    CHECK(back.rules.sit_min == kRules.sit_min);
}

TEST_CASE("malformed network and config files raise ConfigError") {
    std::stringstream bad("this is not json");
    CHECK_THROWS_AS(load_network(bad), ConfigError);
    CHECK_THROWS_AS(load_network_file("/nonexistent/net.json"), ConfigError);
    CHECK_THROWS_AS(load_experiment_config("/nonexistent/config.json"), ConfigError);

    TempDir dir;
    const auto path = dir.path / "bad.json";
    std::ofstream(path) << R"({"network": {"unknown": 1}})";
    CHECK_THROWS_AS(load_experiment_config(path.string()), ConfigError);
}

TEST_CASE("experiment config parses generator settings and run overrides") {
    TempDir dir;
    const auto path = dir.path / "config.json";
    std::ofstream(path) << R"({
      "network": {"generate": {"num_hubs": 2, "num_spokes": 3, "num_bases": 1,
                               "flights_per_day": 10, "num_days": 1, "seed": 3}},
      "cost": {"rate_flying": 2.0},
      "run": {"cg_max_iters": 7, "combiner": {"param1": 4, "seed": 2},
              "learning_schedule": [2, 5], "vgae": {"epochs": 9}}
    })";
    const ExperimentConfig config = load_experiment_config(path.string());
    REQUIRE(config.generate.has_value());
    CHECK(config.generate->num_hubs == 2);
    CHECK(config.run.cg_max_iters == 7);
    CHECK(config.run.combiner.param1 == 4);
    CHECK(config.run.pricing_baseline_size == 4);  // follows param1 unless set
    CHECK(config.run.learning_schedule == std::vector<int>{2, 5});
    CHECK(config.run.vgae.epochs == 9);
    REQUIRE(config.cost_override.has_value());
    CHECK(config.cost_override->rate_flying == 2.0);

    const NetworkBundle bundle = resolve_network(config);
    CHECK(bundle.network.size() == 10);
    CHECK(bundle.cost.rate_flying == 2.0);
}

TEST_CASE("run_experiment writes the documented CSV set") {
    TempDir dir;
    ExperimentConfig config;
    NetGenConfig gen;
    gen.num_hubs = 2;
    gen.num_spokes = 3;
    gen.num_bases = 2;
    gen.flights_per_day = 12;
    gen.num_days = 1;
    gen.seed = 21;
    config.generate = gen;
    config.run.cg_max_iters = 10;
    config.run.reopt_max_loops = 1;
    config.run.combiner.param1 = 4;
    config.run.pricing_baseline_size = 4;
    config.run.learning_schedule = {2, 4};
    config.run.vgae.epochs = 10;
    config.run.vgae.hidden_dim = 8;
    config.run.vgae.latent_dim = 4;

    ExperimentOptions options;
    options.verbosity = 0;
    std::ostringstream log;
    const ExperimentResult result =
        run_experiment(config, (dir.path / "out").string(), options, log);
    REQUIRE(result.with_trace.has_value());
    REQUIRE(result.without_trace.has_value());

    for (const char* name : {"trace_with.csv", "trace_without.csv", "summary.csv", "curves.csv",
                             "run_log_with.txt", "run_log_without.txt"}) {
        CHECK(std::filesystem::exists(dir.path / "out" / name));
    }

    std::ifstream trace(dir.path / "out" / "trace_with.csv");
    std::string header;
    std::getline(trace, header);
    CHECK(header == "iteration,phase,cost,columns_added,learnt_flag,roc");

    std::ifstream summary(dir.path / "out" / "summary.csv");
    std::getline(summary, header);
    CHECK(header == "loop,phase,cost_without,z_without,cost_with,z_with,delta_cost");

    std::ifstream curves(dir.path / "out" / "curves.csv");
    std::getline(curves, header);
    CHECK(header == "series,iteration,cost");

    // The delta column equals with - without, recomputed from the traces.
    std::string line;
    std::getline(summary, line);  // initial row
    REQUIRE_FALSE(line.empty());
    {
        std::stringstream row(line);
        std::string loop, phase, cost_without, z_without, cost_with, z_with, delta;
        std::getline(row, loop, ',');
        std::getline(row, phase, ',');
        std::getline(row, cost_without, ',');
        std::getline(row, z_without, ',');
        std::getline(row, cost_with, ',');
        std::getline(row, z_with, ',');
        std::getline(row, delta, ',');
        CHECK(loop == "initial");
        CHECK(std::stod(delta) ==
              doctest::Approx(std::stod(cost_with) - std::stod(cost_without)).epsilon(1e-9));
        CHECK(std::stod(cost_with) == doctest::Approx(result.with_trace->initial_cost));
    }
}

TEST_CASE("run_experiment single-run mode emits one trace") {
    TempDir dir;
    ExperimentConfig config;
    NetGenConfig gen;
    gen.num_hubs = 1;
    gen.num_spokes = 2;
    gen.num_bases = 1;
    gen.flights_per_day = 8;
    gen.num_days = 1;
    config.generate = gen;
    config.run.cg_max_iters = 5;
    config.run.reopt_max_loops = 0;
    config.run.pricing_baseline_size = 3;
    config.run.learning_enabled = false;

    ExperimentOptions options;
    options.with_learning = false;
    options.verbosity = 0;
    std::ostringstream log;
    const ExperimentResult result =
        run_experiment(config, (dir.path / "solo").string(), options, log);
    CHECK_FALSE(result.with_trace.has_value());
    REQUIRE(result.without_trace.has_value());
    CHECK(std::filesystem::exists(dir.path / "solo" / "trace_without.csv"));
    CHECK_FALSE(std::filesystem::exists(dir.path / "solo" / "trace_with.csv"));
    CHECK(std::filesystem::exists(dir.path / "solo" / "summary.csv"));
}

TEST_CASE("trace CSV is bit-identical across repeated runs with the same config") {
    ExperimentConfig config;
    NetGenConfig gen;
    gen.num_hubs = 2;
    gen.num_spokes = 2;
    gen.num_bases = 1;
    gen.flights_per_day = 10;
    gen.num_days = 1;
    gen.seed = 33;
    config.generate = gen;
    config.run.cg_max_iters = 8;
    config.run.reopt_max_loops = 1;
    config.run.learning_enabled = false;
    config.run.pricing_baseline_size = 4;

    auto render = [&config]() {
        TempDir dir;
        ExperimentOptions options;
        options.with_learning = false;
        options.verbosity = 0;
        std::ostringstream log;
        run_experiment(config, (dir.path / "o").string(), options, log);
        std::ifstream in(dir.path / "o" / "trace_without.csv");
        std::stringstream content;
        content << in.rdbuf();
        return content.str();
    };
    CHECK(render() == render());
}
