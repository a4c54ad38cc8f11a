#include "crewcg/netgen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace crewcg {

namespace {

struct ReachReport {
    bool ok = false;
    int bad_flight = -1;
};

// Every flight must lie on some base-to-base path of the connection graph.
ReachReport check_reachability(const FlightNetwork& network, const LegalityRules& rules) {
    const ConnectionUniverse universe = connection_universe(network, rules);
    const int n = network.size();
    std::vector<char> from_base(static_cast<std::size_t>(n), 0);
    std::vector<char> to_base(static_cast<std::size_t>(n), 0);

    // Forward closure from base departures along successor edges.
    for (int f = 0; f < n; ++f) {
        if (network.is_base(network.flight(f).origin)) from_base[static_cast<std::size_t>(f)] = 1;
    }
    for (int f = 0; f < n; ++f) {  // ids are time-ordered, one forward sweep suffices
        if (!from_base[static_cast<std::size_t>(f)]) continue;
        for (int s : universe.sit_successors[static_cast<std::size_t>(f)]) {
            from_base[static_cast<std::size_t>(s)] = 1;
        }
        for (int s : universe.rest_successors[static_cast<std::size_t>(f)]) {
            from_base[static_cast<std::size_t>(s)] = 1;
        }
    }
    // Backward closure towards base arrivals.
    for (int f = n - 1; f >= 0; --f) {
        if (network.is_base(network.flight(f).destination)) to_base[static_cast<std::size_t>(f)] = 1;
        if (to_base[static_cast<std::size_t>(f)]) continue;
        for (int s : universe.sit_successors[static_cast<std::size_t>(f)]) {
            if (to_base[static_cast<std::size_t>(s)]) {
                to_base[static_cast<std::size_t>(f)] = 1;
                break;
            }
        }
        if (to_base[static_cast<std::size_t>(f)]) continue;
        for (int s : universe.rest_successors[static_cast<std::size_t>(f)]) {
            if (to_base[static_cast<std::size_t>(s)]) {
                to_base[static_cast<std::size_t>(f)] = 1;
                break;
            }
        }
    }
    for (int f = 0; f < n; ++f) {
        if (!from_base[static_cast<std::size_t>(f)] || !to_base[static_cast<std::size_t>(f)]) {
            return {false, f};
        }
    }
    if (universe.pairs.empty()) return {false, -1};
    return {true, -1};
}

FlightNetwork generate_once(const NetGenConfig& config, const LegalityRules& rules, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> base_pick(0, config.num_bases - 1);
    std::uniform_int_distribution<int> hub_pick(0, config.num_hubs - 1);
    std::uniform_int_distribution<int> spoke_pick(0, config.num_spokes - 1);
    std::uniform_real_distribution<double> chance(0.0, 1.0);
    // Departures spread across the first 12 hours of each day; legs of
    // 1-3 hours; turnarounds comfortably inside the sit window.
    std::uniform_int_distribution<int> dep_pick(0, 720);
    std::uniform_int_distribution<int> duration_pick(60, 180);
    const int sit_lo = rules.sit_min + 15;
    const int sit_hi = std::min(rules.sit_max - 30, rules.sit_min + 170);
    std::uniform_int_distribution<int> turn_pick(sit_lo, std::max(sit_lo, sit_hi));

    const int rotations_per_day = config.flights_per_day / 2;
    std::vector<Flight> flights;
    for (int day = 0; day < config.num_days; ++day) {
        const Minutes day_start = day * 1440;
        for (int r = 0; r < rotations_per_day; ++r) {
            // Rotations are anchored at a base so every flight sits on at
            // least one out-and-back pairing; the first rotations of day 0
            // hit each base in turn.
            const int hub = (day == 0 && r < config.num_bases) ? r : base_pick(rng);
            std::string hub_code = "H" + std::to_string(hub);
            std::string other;
            if (chance(rng) < 0.75) {
                other = "S" + std::to_string(spoke_pick(rng));
            } else {
                int hub2 = hub_pick(rng);
                if (hub2 == hub) hub2 = (hub2 + 1) % config.num_hubs;
                other = "H" + std::to_string(hub2);
            }
            if (other == hub_code) other = "S0";

            const Minutes dep1 = day_start + dep_pick(rng);
            const Minutes arr1 = dep1 + duration_pick(rng);
            const Minutes dep2 = arr1 + turn_pick(rng);
            const Minutes arr2 = dep2 + duration_pick(rng);
            flights.push_back({-1, hub_code, other, dep1, arr1});
            flights.push_back({-1, other, hub_code, dep2, arr2});
        }
    }

    std::vector<CrewBase> bases;
    for (int b = 0; b < config.num_bases; ++b) bases.push_back({"H" + std::to_string(b)});
    return FlightNetwork(std::move(flights), std::move(bases));
}

}  // namespace

void NetGenConfig::validate() const {
    if (num_hubs <= 0 || num_spokes < 0 || num_days <= 0) {
        throw std::invalid_argument("netgen: counts must be positive");
    }
    if (num_bases <= 0 || num_bases > num_hubs) {
        throw std::invalid_argument("netgen: need 1 <= num_bases <= num_hubs");
    }
    if (flights_per_day < 2 || flights_per_day % 2 != 0) {
        throw std::invalid_argument("netgen: flights_per_day must be even and >= 2");
    }
    if (num_hubs >= 2 || num_spokes >= 1) return;
    throw std::invalid_argument("netgen: need at least one destination besides the hubs");
}

FlightNetwork generate_network(const NetGenConfig& config, const LegalityRules& rules) {
    config.validate();
    rules.validate();
    for (int attempt = 0; attempt < config.max_retries; ++attempt) {
        FlightNetwork network = generate_once(config, rules, config.seed + 1000003u * static_cast<unsigned>(attempt));
        const ReachReport report = check_reachability(network, rules);
        if (report.ok) return network;
        if (attempt + 1 == config.max_retries) {
            throw std::runtime_error(
                "generate_network: no viable schedule after " + std::to_string(config.max_retries) +
                " attempts (last failure: " +
                (report.bad_flight >= 0 ? "flight " + std::to_string(report.bad_flight) +
                                              " not base-reachable"
                                        : "empty connection universe") +
                ")");
        }
    }
    throw std::logic_error("generate_network: unreachable");
}

}  // namespace crewcg
