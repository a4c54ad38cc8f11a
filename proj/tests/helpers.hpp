#pragma once

#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "crewcg/flight_network.hpp"
#include "crewcg/netgen.hpp"
#include "crewcg/set_cover.hpp"

namespace crewcg::testing {

struct FlightSpec {
    std::string origin;
    std::string destination;
    Minutes dep;
    Minutes arr;
};

inline FlightNetwork make_network(const std::vector<FlightSpec>& specs,
                                  const std::vector<std::string>& bases) {
    std::vector<Flight> flights;
    for (const FlightSpec& s : specs) flights.push_back({-1, s.origin, s.destination, s.dep, s.arr});
    std::vector<CrewBase> base_list;
    for (const std::string& b : bases) base_list.push_back({b});
    return FlightNetwork(std::move(flights), std::move(base_list));
}

/// Out-and-back pair base->X->base with a sit-legal turn.
inline std::vector<FlightSpec> rotation(const std::string& base, const std::string& other,
                                        Minutes dep, Minutes leg = 90, Minutes turn = 60) {
    return {{base, other, dep, dep + leg}, {other, base, dep + leg + turn, dep + 2 * leg + turn}};
}

/// Small legal-structure random network through the generator.
inline FlightNetwork random_small_network(unsigned seed, int flights = 12,
                                          const LegalityRules& rules = {}) {
    NetGenConfig config;
    config.num_hubs = 2;
    config.num_spokes = 3;
    config.num_bases = 2;
    config.flights_per_day = flights;
    config.num_days = 1;
    config.seed = seed;
    return generate_network(config, rules);
}

/// Random fully-coverable covering instance with nonnegative costs.
inline SetCoverInstance random_cover_instance(unsigned seed, int num_flights, int num_columns) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> cost(0.5, 10.0);
    std::bernoulli_distribution member(0.35);
    SetCoverInstance inst;
    inst.num_flights = num_flights;
    for (int j = 0; j < num_columns; ++j) {
        Column c;
        for (int f = 0; f < num_flights; ++f) {
            if (member(rng)) c.flights.push_back(f);
        }
        if (c.flights.empty()) c.flights.push_back(static_cast<int>(rng() % num_flights));
        c.cost = std::round(cost(rng) * 1000.0) / 1000.0;
        inst.columns.push_back(std::move(c));
    }
    for (int f : inst.uncovered_flights()) {
        Column c;
        c.flights = {f};
        c.cost = std::round(cost(rng) * 1000.0) / 1000.0;
        inst.columns.push_back(std::move(c));
    }
    return inst;
}

}  // namespace crewcg::testing
