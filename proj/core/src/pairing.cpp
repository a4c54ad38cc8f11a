#include "crewcg/pairing.hpp"

#include <stdexcept>

namespace crewcg {

namespace {

void require_valid_ids(const FlightNetwork& network, const std::vector<int>& ids) {
    for (int id : ids) {
        if (id < 0 || id >= network.size()) {
            throw std::invalid_argument("unknown flight id " + std::to_string(id));
        }
    }
}

}  // namespace

std::vector<int> Pairing::flight_sequence() const {
    std::vector<int> seq;
    for (const Duty& d : duties) {
        seq.insert(seq.end(), d.flights.begin(), d.flights.end());
    }
    return seq;
}

Duty make_duty(const FlightNetwork& network, const LegalityRules& rules, std::vector<int> flight_ids) {
    if (flight_ids.empty()) {
        throw std::invalid_argument("duty with no flights");
    }
    require_valid_ids(network, flight_ids);
    Duty d;
    d.start = network.flight(flight_ids.front()).dep_time - rules.brief;
    d.end = network.flight(flight_ids.back()).arr_time + rules.debrief;
    d.flights = std::move(flight_ids);
    return d;
}

Minutes duty_flying_time(const FlightNetwork& network, const Duty& duty) {
    Minutes total = 0;
    for (int id : duty.flights) {
        total += network.flight(id).flying_time();
    }
    return total;
}

Minutes pairing_flying_time(const FlightNetwork& network, const Pairing& pairing) {
    Minutes total = 0;
    for (const Duty& d : pairing.duties) {
        total += duty_flying_time(network, d);
    }
    return total;
}

double pairing_cost(const FlightNetwork& network, const Pairing& pairing, const CostRules& cost) {
    const auto duties = static_cast<double>(pairing.duties.size());
    return cost.rate_flying * static_cast<double>(pairing_flying_time(network, pairing)) +
           cost.rate_tafb * static_cast<double>(pairing.tafb) +
           cost.hotel_cost * (duties - 1.0) + cost.fixed_cost * duties;
}

LegalityReport check_pairing_legal(const FlightNetwork& network, const Pairing& pairing,
                                   const LegalityRules& rules, const CostRules* cost) {
    if (pairing.duties.empty()) {
        throw std::invalid_argument("pairing with no duties");
    }
    for (const Duty& d : pairing.duties) {
        if (d.flights.empty()) {
            throw std::invalid_argument("pairing contains an empty duty");
        }
        require_valid_ids(network, d.flights);
    }

    LegalityReport report;
    auto violate = [&report](const std::string& name) { report.violations.push_back(name); };

    const Flight& first = network.flight(pairing.duties.front().flights.front());
    const Flight& last = network.flight(pairing.duties.back().flights.back());
    if (first.origin != pairing.base.airport) violate("base-start");
    if (last.destination != pairing.base.airport) violate("base-return");

    for (std::size_t di = 0; di < pairing.duties.size(); ++di) {
        const Duty& d = pairing.duties[di];
        for (std::size_t k = 0; k + 1 < d.flights.size(); ++k) {
            const Flight& a = network.flight(d.flights[k]);
            const Flight& b = network.flight(d.flights[k + 1]);
            if (a.destination != b.origin) violate("duty-continuity");
            if (classify_gap(b.dep_time - a.arr_time, rules) != GapKind::Sit) violate("sit-window");
        }
        if (duty_flying_time(network, d) > rules.duty_max_flying) violate("duty-flying");
        if (d.end - d.start > rules.duty_max_elapsed) violate("duty-elapsed");
        if (static_cast<int>(d.flights.size()) > rules.duty_max_flights) violate("duty-flights");
        if (di + 1 < pairing.duties.size()) {
            const Flight& out = network.flight(d.flights.back());
            const Flight& in = network.flight(pairing.duties[di + 1].flights.front());
            if (classify_gap(in.dep_time - out.arr_time, rules) != GapKind::Rest) violate("rest-window");
        }
    }

    if (static_cast<int>(pairing.duties.size()) > rules.pairing_max_duties) violate("pairing-duties");
    const Minutes tafb = pairing.duties.back().end - pairing.duties.front().start;
    if (tafb != pairing.tafb) violate("tafb-mismatch");
    if (tafb > rules.tafb_max) violate("tafb");
    if (cost != nullptr && pairing_cost(network, pairing, *cost) != pairing.cost) violate("cost-mismatch");

    report.legal = report.violations.empty();
    return report;
}

Pairing make_pairing(const FlightNetwork& network, const LegalityRules& rules, const CostRules& cost,
                     const std::vector<std::vector<int>>& duty_flights) {
    if (duty_flights.empty()) {
        throw std::invalid_argument("pairing with no duties");
    }
    Pairing p;
    for (const auto& ids : duty_flights) {
        p.duties.push_back(make_duty(network, rules, ids));
    }
    p.base.airport = network.flight(p.duties.front().flights.front()).origin;
    p.tafb = p.duties.back().end - p.duties.front().start;
    p.cost = pairing_cost(network, p, cost);
    return p;
}

}  // namespace crewcg
