#include "crewcg/flight_network.hpp"

#include <algorithm>
#include <stdexcept>

namespace crewcg {

void LegalityRules::validate() const {
    auto positive = [](Minutes v) { return v > 0; };
    if (!positive(sit_min) || !positive(sit_max) || !positive(duty_max_flying) ||
        !positive(duty_max_elapsed) || duty_max_flights <= 0 || !positive(rest_min) ||
        !positive(rest_max) || pairing_max_duties <= 0 || !positive(tafb_max) ||
        brief < 0 || debrief < 0) {
        throw std::invalid_argument("legality rules: all limits must be positive");
    }
    if (sit_min >= sit_max) {
        throw std::invalid_argument("legality rules: sit_min must be < sit_max");
    }
    if (rest_min <= sit_max) {
        throw std::invalid_argument("legality rules: rest_min must be > sit_max");
    }
    if (rest_min >= rest_max) {
        throw std::invalid_argument("legality rules: rest_min must be < rest_max");
    }
}

void CostRules::validate() const {
    if (rate_flying < 0 || rate_tafb < 0 || hotel_cost < 0 || fixed_cost < 0) {
        throw std::invalid_argument("cost rules: rates must be >= 0");
    }
}

FlightNetwork::FlightNetwork(std::vector<Flight> flights, std::vector<CrewBase> bases)
    : flights_(std::move(flights)), bases_(std::move(bases)) {
    for (const Flight& f : flights_) {
        if (f.arr_time <= f.dep_time) {
            throw std::invalid_argument("flight " + f.origin + "->" + f.destination +
                                        ": arr_time must be > dep_time");
        }
        if (f.origin.empty() || f.destination.empty()) {
            throw std::invalid_argument("flight with empty airport code");
        }
    }
    std::stable_sort(flights_.begin(), flights_.end(),
                     [](const Flight& a, const Flight& b) { return a.dep_time < b.dep_time; });
    for (std::size_t i = 0; i < flights_.size(); ++i) {
        flights_[i].id = static_cast<int>(i);
    }
    for (const CrewBase& b : bases_) {
        base_airports_.insert(b.airport);
        bool seen = false;
        for (const Flight& f : flights_) {
            if (f.origin == b.airport || f.destination == b.airport) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            throw std::invalid_argument("crew base " + b.airport + " touches no flight");
        }
    }
}

GapKind classify_gap(Minutes gap, const LegalityRules& rules) {
    if (gap >= rules.sit_min && gap <= rules.sit_max) return GapKind::Sit;
    if (gap >= rules.rest_min && gap <= rules.rest_max) return GapKind::Rest;
    return GapKind::Illegal;
}

bool ConnectionUniverse::contains(int i, int j) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
}

ConnectionUniverse connection_universe(const FlightNetwork& network, const LegalityRules& rules) {
    if (network.empty()) {
        throw std::invalid_argument("connection_universe: empty network");
    }
    rules.validate();
    const int n = network.size();
    ConnectionUniverse u;
    u.num_flights = n;
    u.sit_successors.resize(static_cast<std::size_t>(n));
    u.rest_successors.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Flight& a = network.flight(i);
        for (int j = i + 1; j < n; ++j) {
            const Flight& b = network.flight(j);
            if (a.destination != b.origin) continue;
            switch (classify_gap(b.dep_time - a.arr_time, rules)) {
                case GapKind::Sit:
                    u.pairs.emplace_back(i, j);
                    u.sit_successors[static_cast<std::size_t>(i)].push_back(j);
                    break;
                case GapKind::Rest:
                    u.pairs.emplace_back(i, j);
                    u.rest_successors[static_cast<std::size_t>(i)].push_back(j);
                    break;
                case GapKind::Illegal:
                    break;
            }
        }
    }
    return u;
}

}  // namespace crewcg
