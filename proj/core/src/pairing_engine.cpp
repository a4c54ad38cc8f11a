#include "crewcg/pairing_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace crewcg {

namespace {

std::vector<char> subset_mask(int num_flights, const std::vector<int>& subset) {
    std::vector<char> mask(static_cast<std::size_t>(num_flights), 0);
    for (int f : subset) {
        if (f < 0 || f >= num_flights) {
            throw std::invalid_argument("flight subset contains unknown id " + std::to_string(f));
        }
        mask[static_cast<std::size_t>(f)] = 1;
    }
    return mask;
}

struct DutyEnumerator {
    const FlightNetwork& network;
    const LegalityRules& rules;
    const ConnectionUniverse& universe;
    const std::vector<char>& in_subset;
    EnumLimits limits;
    std::uint64_t expansions = 0;
    bool truncated = false;

    std::vector<int> chain;
    Minutes flying = 0;
    std::vector<Duty>* out = nullptr;

    bool budget_left(std::size_t results) {
        if (expansions >= limits.max_expansions || results >= limits.max_results) {
            truncated = true;
            return false;
        }
        return true;
    }

    void extend(int last) {
        if (!budget_left(out->size())) return;
        ++expansions;

        Duty d;
        d.flights = chain;
        d.start = network.flight(chain.front()).dep_time - rules.brief;
        d.end = network.flight(last).arr_time + rules.debrief;
        out->push_back(std::move(d));

        if (static_cast<int>(chain.size()) >= rules.duty_max_flights) return;
        for (int next : universe.sit_successors[static_cast<std::size_t>(last)]) {
            if (!in_subset[static_cast<std::size_t>(next)]) continue;
            const Minutes added = network.flight(next).flying_time();
            if (flying + added > rules.duty_max_flying) continue;
            const Minutes start = network.flight(chain.front()).dep_time - rules.brief;
            const Minutes end = network.flight(next).arr_time + rules.debrief;
            if (end - start > rules.duty_max_elapsed) continue;
            chain.push_back(next);
            flying += added;
            extend(next);
            flying -= added;
            chain.pop_back();
        }
    }
};

}  // namespace

std::vector<Duty> enumerate_duties(const FlightNetwork& network, const LegalityRules& rules,
                                   const ConnectionUniverse& universe,
                                   const std::vector<int>& flight_subset, EnumLimits limits) {
    if (flight_subset.empty()) {
        throw std::invalid_argument("enumerate_duties: empty flight subset");
    }
    const auto mask = subset_mask(network.size(), flight_subset);
    std::vector<Duty> duties;
    DutyEnumerator e{network, rules, universe, mask, limits};
    e.out = &duties;

    std::vector<int> starts = flight_subset;
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (int f : starts) {
        const Minutes flying = network.flight(f).flying_time();
        if (flying > rules.duty_max_flying) continue;
        const Minutes elapsed = rules.brief + flying + rules.debrief;
        if (elapsed > rules.duty_max_elapsed) continue;
        e.chain = {f};
        e.flying = flying;
        e.extend(f);
    }
    if (limits.truncated != nullptr && e.truncated) *limits.truncated = true;

    std::sort(duties.begin(), duties.end(),
              [](const Duty& a, const Duty& b) { return a.flights < b.flights; });
    return duties;
}

namespace {

struct PairingEnumerator {
    const FlightNetwork& network;
    const LegalityRules& rules;
    const CostRules& cost;
    const ConnectionUniverse& universe;
    const std::vector<std::vector<const Duty*>>& duties_starting_at;  // by first flight id
    EnumLimits limits;
    std::uint64_t expansions = 0;
    bool truncated = false;

    std::vector<const Duty*> chain;
    std::vector<Pairing>* out = nullptr;

    bool budget_left() {
        if (expansions >= limits.max_expansions || out->size() >= limits.max_results) {
            truncated = true;
            return false;
        }
        return true;
    }

    void emit(const std::string& base_airport) {
        Pairing p;
        p.base.airport = base_airport;
        for (const Duty* d : chain) p.duties.push_back(*d);
        p.tafb = chain.back()->end - chain.front()->start;
        p.cost = pairing_cost(network, p, cost);
        out->push_back(std::move(p));
    }

    void extend(const std::string& base_airport) {
        if (!budget_left()) return;
        ++expansions;

        const Duty* last_duty = chain.back();
        const Flight& last_flight = network.flight(last_duty->flights.back());
        if (last_flight.destination == base_airport) emit(base_airport);

        if (static_cast<int>(chain.size()) >= rules.pairing_max_duties) return;
        for (int next_first : universe.rest_successors[static_cast<std::size_t>(last_duty->flights.back())]) {
            for (const Duty* next : duties_starting_at[static_cast<std::size_t>(next_first)]) {
                const Minutes tafb = next->end - chain.front()->start;
                if (tafb > rules.tafb_max) continue;
                chain.push_back(next);
                extend(base_airport);
                chain.pop_back();
            }
        }
    }
};

}  // namespace

std::vector<Pairing> enumerate_pairings(const FlightNetwork& network, const LegalityRules& rules,
                                        const CostRules& cost, const ConnectionUniverse& universe,
                                        const std::vector<int>& flight_subset, EnumLimits limits) {
    if (flight_subset.empty()) return {};

    bool duty_truncated = false;
    EnumLimits duty_limits = limits;
    duty_limits.truncated = &duty_truncated;
    const std::vector<Duty> duties = enumerate_duties(network, rules, universe, flight_subset, duty_limits);

    std::vector<std::vector<const Duty*>> by_first(static_cast<std::size_t>(network.size()));
    for (const Duty& d : duties) {
        by_first[static_cast<std::size_t>(d.flights.front())].push_back(&d);
    }

    std::vector<Pairing> pairings;
    PairingEnumerator e{network, rules, cost, universe, by_first, limits};
    e.out = &pairings;
    for (const Duty& d : duties) {
        if (!network.is_base(network.flight(d.flights.front()).origin)) continue;
        e.chain = {&d};
        e.extend(network.flight(d.flights.front()).origin);
    }
    if (limits.truncated != nullptr && (e.truncated || duty_truncated)) *limits.truncated = true;

    std::sort(pairings.begin(), pairings.end(), [](const Pairing& a, const Pairing& b) {
        return a.flight_sequence() < b.flight_sequence();
    });
    return pairings;
}

double reduced_cost(const Pairing& pairing, const DualVector& duals) {
    double dual_sum = 0.0;
    for (const Duty& d : pairing.duties) {
        for (int f : d.flights) {
            if (f < 0 || static_cast<std::size_t>(f) >= duals.values.size()) {
                throw std::invalid_argument("reduced_cost: no dual for flight " + std::to_string(f));
            }
            dual_sum += duals.values[static_cast<std::size_t>(f)];
        }
    }
    return pairing.cost - dual_sum;
}

std::vector<Pairing> price(const FlightNetwork& network, const LegalityRules& rules,
                           const CostRules& cost, const ConnectionUniverse& universe,
                           const PricingRequest& request, EnumLimits limits) {
    if (request.max_columns <= 0) {
        throw std::invalid_argument("price: max_columns must be > 0");
    }
    std::vector<Pairing> all =
        enumerate_pairings(network, rules, cost, universe, request.flight_subset, limits);

    std::vector<std::pair<double, std::size_t>> keyed;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const double rc = reduced_cost(all[i], request.duals);
        if (rc < request.reduced_cost_tolerance) keyed.emplace_back(rc, i);
    }
    std::sort(keyed.begin(), keyed.end(), [&all](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return all[a.second].flight_sequence() < all[b.second].flight_sequence();
    });
    if (keyed.size() > static_cast<std::size_t>(request.max_columns)) {
        keyed.resize(static_cast<std::size_t>(request.max_columns));
    }
    std::vector<Pairing> columns;
    columns.reserve(keyed.size());
    for (const auto& [rc, idx] : keyed) columns.push_back(std::move(all[idx]));
    return columns;
}

}  // namespace crewcg
