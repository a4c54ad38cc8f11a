#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace crewcg {

/// All times are integer minutes since the start of the planning horizon.
using Minutes = int;

struct Flight {
    int id = -1;            // 0-based, assigned by FlightNetwork in departure order
    std::string origin;
    std::string destination;
    Minutes dep_time = 0;
    Minutes arr_time = 0;

    Minutes flying_time() const { return arr_time - dep_time; }
};

struct CrewBase {
    std::string airport;
};

/// Legality limits for duties and pairings. The default values are a
/// configurable stand-in for an airline's contractual rule set.
struct LegalityRules {
    Minutes sit_min = 30;
    Minutes sit_max = 240;
    Minutes duty_max_flying = 480;
    Minutes duty_max_elapsed = 840;
    int duty_max_flights = 5;
    Minutes rest_min = 600;        // overnight rest, strictly longer than any sit
    Minutes rest_max = 2160;
    int pairing_max_duties = 4;
    Minutes tafb_max = 7200;
    Minutes brief = 45;
    Minutes debrief = 30;

    void validate() const;  // throws std::invalid_argument on inconsistent limits
};

/// Coefficients of the (linear) pairing cost model.
struct CostRules {
    double rate_flying = 1.0;   // per flying minute
    double rate_tafb = 0.3;     // per TAFB minute
    double hotel_cost = 200.0;  // per overnight rest
    double fixed_cost = 100.0;  // per duty

    void validate() const;
};

/// Immutable flight schedule plus crew bases. Construction sorts flights by
/// departure time (stable, so equal departures keep their input order) and
/// re-assigns ids 0..n-1 in that order.
class FlightNetwork {
public:
    FlightNetwork() = default;
    FlightNetwork(std::vector<Flight> flights, std::vector<CrewBase> bases);

    const std::vector<Flight>& flights() const { return flights_; }
    const std::vector<CrewBase>& bases() const { return bases_; }
    const Flight& flight(int id) const { return flights_.at(static_cast<std::size_t>(id)); }
    int size() const { return static_cast<int>(flights_.size()); }
    bool empty() const { return flights_.empty(); }
    bool is_base(const std::string& airport) const { return base_airports_.count(airport) > 0; }

private:
    std::vector<Flight> flights_;
    std::vector<CrewBase> bases_;
    std::unordered_set<std::string> base_airports_;
};

enum class GapKind { Sit, Rest, Illegal };

/// Classifies the idle time between two flights: a short sit, an overnight
/// rest, or neither (gaps in (sit_max, rest_min) connect nothing).
GapKind classify_gap(Minutes gap, const LegalityRules& rules);

/// All potentially usable flight connections of a network. `pairs` holds the
/// strict upper triangle (i < j); sit/rest successor lists index the same
/// edges by gap kind for enumeration.
struct ConnectionUniverse {
    int num_flights = 0;
    std::vector<std::pair<int, int>> pairs;          // sorted lexicographically
    std::vector<std::vector<int>> sit_successors;    // per flight id
    std::vector<std::vector<int>> rest_successors;

    bool contains(int i, int j) const;
};

/// Every ordered pair (i, j), i < j, where j departs from i's destination and
/// the gap dep(j) - arr(i) falls in the sit window or the rest window.
ConnectionUniverse connection_universe(const FlightNetwork& network, const LegalityRules& rules);

}  // namespace crewcg
