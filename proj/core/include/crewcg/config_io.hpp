#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "crewcg/flight_network.hpp"
#include "crewcg/netgen.hpp"
#include "crewcg/orchestrator.hpp"

namespace crewcg {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One network file: flights, bases, and (optionally) rules and cost
/// coefficients. JSON schema documented in the README.
struct NetworkBundle {
    FlightNetwork network;
    LegalityRules rules;
    CostRules cost;
};

void save_network(std::ostream& out, const FlightNetwork& network, const LegalityRules& rules,
                  const CostRules& cost);
NetworkBundle load_network(std::istream& in);
NetworkBundle load_network_file(const std::string& path);

/// Full experiment description: where the network comes from (inline file
/// reference or generator parameters) plus run parameters.
struct ExperimentConfig {
    std::optional<std::string> network_file;  // relative paths resolve against the config file
    std::optional<NetGenConfig> generate;
    std::optional<LegalityRules> rules_override;
    std::optional<CostRules> cost_override;
    RunConfig run;
};

ExperimentConfig load_experiment_config(const std::string& path);

/// Materializes the network per the config (load or generate) and applies
/// overrides.
NetworkBundle resolve_network(const ExperimentConfig& config);

}  // namespace crewcg
