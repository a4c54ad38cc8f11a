#include "crewcg/config_io.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace crewcg {

namespace {

using nlohmann::json;

template <typename T>
void maybe_get(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

LegalityRules rules_from_json(const json& j) {
    LegalityRules r;
    maybe_get(j, "sit_min", r.sit_min);
    maybe_get(j, "sit_max", r.sit_max);
    maybe_get(j, "duty_max_flying", r.duty_max_flying);
    maybe_get(j, "duty_max_elapsed", r.duty_max_elapsed);
    maybe_get(j, "duty_max_flights", r.duty_max_flights);
    maybe_get(j, "rest_min", r.rest_min);
    maybe_get(j, "rest_max", r.rest_max);
    maybe_get(j, "pairing_max_duties", r.pairing_max_duties);
    maybe_get(j, "tafb_max", r.tafb_max);
    maybe_get(j, "brief", r.brief);
    maybe_get(j, "debrief", r.debrief);
    r.validate();
    return r;
}

json rules_to_json(const LegalityRules& r) {
    return json{{"sit_min", r.sit_min},
                {"sit_max", r.sit_max},
                {"duty_max_flying", r.duty_max_flying},
                {"duty_max_elapsed", r.duty_max_elapsed},
                {"duty_max_flights", r.duty_max_flights},
                {"rest_min", r.rest_min},
                {"rest_max", r.rest_max},
                {"pairing_max_duties", r.pairing_max_duties},
                {"tafb_max", r.tafb_max},
                {"brief", r.brief},
                {"debrief", r.debrief}};
}

CostRules cost_from_json(const json& j) {
    CostRules c;
    maybe_get(j, "rate_flying", c.rate_flying);
    maybe_get(j, "rate_tafb", c.rate_tafb);
    maybe_get(j, "hotel_cost", c.hotel_cost);
    maybe_get(j, "fixed_cost", c.fixed_cost);
    c.validate();
    return c;
}

json cost_to_json(const CostRules& c) {
    return json{{"rate_flying", c.rate_flying},
                {"rate_tafb", c.rate_tafb},
                {"hotel_cost", c.hotel_cost},
                {"fixed_cost", c.fixed_cost}};
}

NetGenConfig netgen_from_json(const json& j) {
    NetGenConfig g;
    maybe_get(j, "num_hubs", g.num_hubs);
    maybe_get(j, "num_spokes", g.num_spokes);
    maybe_get(j, "num_bases", g.num_bases);
    maybe_get(j, "flights_per_day", g.flights_per_day);
    maybe_get(j, "num_days", g.num_days);
    maybe_get(j, "seed", g.seed);
    maybe_get(j, "max_retries", g.max_retries);
    g.validate();
    return g;
}

RunConfig run_from_json(const json& j) {
    RunConfig r;
    maybe_get(j, "learning_enabled", r.learning_enabled);
    maybe_get(j, "learning_schedule", r.learning_schedule);
    if (j.contains("adaptive")) {
        const json& a = j.at("adaptive");
        maybe_get(a, "first_iteration", r.adaptive.first_iteration);
        maybe_get(a, "min_gap", r.adaptive.min_gap);
        maybe_get(a, "improvement_threshold", r.adaptive.improvement_threshold);
    }
    maybe_get(j, "cg_max_iters", r.cg_max_iters);
    maybe_get(j, "cg_improvement_threshold", r.cg_improvement_threshold);
    maybe_get(j, "cg_patience", r.cg_patience);
    maybe_get(j, "reopt_max_loops", r.reopt_max_loops);
    maybe_get(j, "pricing_baseline_size", r.pricing_baseline_size);
    maybe_get(j, "max_columns", r.max_columns);
    maybe_get(j, "reduced_cost_tolerance", r.reduced_cost_tolerance);
    maybe_get(j, "ip_node_budget", r.ip_node_budget);
    maybe_get(j, "enumeration_budget", r.enumeration_budget);
    maybe_get(j, "seed", r.seed);
    maybe_get(j, "reset_history_per_loop", r.reset_history_per_loop);
    maybe_get(j, "verify_convergence_full_pricing", r.verify_convergence_full_pricing);
    maybe_get(j, "restrict_negatives_to_universe", r.restrict_negatives_to_universe);
    if (j.contains("vgae")) {
        const json& v = j.at("vgae");
        maybe_get(v, "hidden_dim", r.vgae.hidden_dim);
        maybe_get(v, "latent_dim", r.vgae.latent_dim);
        maybe_get(v, "epochs", r.vgae.epochs);
        maybe_get(v, "learning_rate", r.vgae.learning_rate);
        maybe_get(v, "early_stop_roc", r.vgae.early_stop_roc);
        maybe_get(v, "seed", r.vgae.seed);
        maybe_get(v, "use_adam", r.vgae.use_adam);
        maybe_get(v, "holdout_fraction", r.vgae.holdout_fraction);
    }
    if (j.contains("combiner")) {
        const json& c = j.at("combiner");
        maybe_get(c, "param1", r.combiner.param1);
        maybe_get(c, "seed", r.combiner.seed);
        // Fair comparison: baseline subsets default to the combiner budget.
        if (!j.contains("pricing_baseline_size")) r.pricing_baseline_size = r.combiner.param1;
    }
    return r;
}

json parse_stream(std::istream& in, const char* what) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
    return j;
}

}  // namespace

void save_network(std::ostream& out, const FlightNetwork& network, const LegalityRules& rules,
                  const CostRules& cost) {
    json flights = json::array();
    for (const Flight& f : network.flights()) {
        flights.push_back(json{{"origin", f.origin},
                               {"destination", f.destination},
                               {"dep", f.dep_time},
                               {"arr", f.arr_time}});
    }
    json bases = json::array();
    for (const CrewBase& b : network.bases()) bases.push_back(b.airport);
    const json doc{{"flights", flights},
                   {"bases", bases},
                   {"rules", rules_to_json(rules)},
                   {"cost", cost_to_json(cost)}};
    out << doc.dump(2) << '\n';
}

NetworkBundle load_network(std::istream& in) {
    const json doc = parse_stream(in, "network file");
    NetworkBundle bundle;
    try {
        std::vector<Flight> flights;
        for (const json& jf : doc.at("flights")) {
            Flight f;
            f.origin = jf.at("origin").get<std::string>();
            f.destination = jf.at("destination").get<std::string>();
            f.dep_time = jf.at("dep").get<Minutes>();
            f.arr_time = jf.at("arr").get<Minutes>();
            flights.push_back(std::move(f));
        }
        std::vector<CrewBase> bases;
        for (const json& jb : doc.at("bases")) bases.push_back({jb.get<std::string>()});
        bundle.network = FlightNetwork(std::move(flights), std::move(bases));
        if (doc.contains("rules")) bundle.rules = rules_from_json(doc.at("rules"));
        if (doc.contains("cost")) bundle.cost = cost_from_json(doc.at("cost"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("network file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("network file: ") + e.what());
    }
    return bundle;
}

NetworkBundle load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open network file: " + path);
    return load_network(in);
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    const json doc = parse_stream(in, "experiment config");

    ExperimentConfig config;
    try {
        if (doc.contains("network")) {
            const json& n = doc.at("network");
            if (n.is_string()) {
                std::filesystem::path p = n.get<std::string>();
                if (p.is_relative()) {
                    p = std::filesystem::path(path).parent_path() / p;
                }
                config.network_file = p.string();
            } else if (n.contains("generate")) {
                config.generate = netgen_from_json(n.at("generate"));
            } else {
                throw ConfigError("experiment config: network must be a path or {\"generate\": ...}");
            }
        } else {
            config.generate = NetGenConfig{};
        }
        if (doc.contains("rules")) config.rules_override = rules_from_json(doc.at("rules"));
        if (doc.contains("cost")) config.cost_override = cost_from_json(doc.at("cost"));
        if (doc.contains("run")) config.run = run_from_json(doc.at("run"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("experiment config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("experiment config: ") + e.what());
    }
    return config;
}

NetworkBundle resolve_network(const ExperimentConfig& config) {
    NetworkBundle bundle;
    if (config.network_file) {
        bundle = load_network_file(*config.network_file);
    }
    if (config.rules_override) bundle.rules = *config.rules_override;
    if (config.cost_override) bundle.cost = *config.cost_override;
    if (!config.network_file) {
        const NetGenConfig gen = config.generate.value_or(NetGenConfig{});
        bundle.network = generate_network(gen, bundle.rules);
    }
    return bundle;
}

}  // namespace crewcg
