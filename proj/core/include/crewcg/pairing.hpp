#pragma once

#include <string>
#include <vector>

#include "crewcg/flight_network.hpp"

namespace crewcg {

/// One working day: an ordered run of flights chained by sit connections,
/// bracketed by briefing and debriefing.
struct Duty {
    std::vector<int> flights;  // flight ids, chronological
    Minutes start = 0;         // first departure - brief
    Minutes end = 0;           // last arrival + debrief
};

/// A legal flight sequence for one crew, starting and ending at `base`.
/// `cost` is the value of pairing_cost and `tafb` the total elapsed time.
struct Pairing {
    std::vector<Duty> duties;
    CrewBase base;
    double cost = 0.0;
    Minutes tafb = 0;

    std::vector<int> flight_sequence() const;  // flattened flight ids
};

struct LegalityReport {
    bool legal = false;
    std::vector<std::string> violations;  // names of failed rules
};

/// Builds a Duty from a flight-id sequence, filling start/end from the rules'
/// brief/debrief. Structural errors (empty sequence, bad flight id) throw;
/// the result is not necessarily legal.
Duty make_duty(const FlightNetwork& network, const LegalityRules& rules, std::vector<int> flight_ids);

Minutes duty_flying_time(const FlightNetwork& network, const Duty& duty);
Minutes pairing_flying_time(const FlightNetwork& network, const Pairing& pairing);

/// c_p = rate_flying * flying + rate_tafb * TAFB
///     + hotel_cost * (duties - 1) + fixed_cost * duties
double pairing_cost(const FlightNetwork& network, const Pairing& pairing, const CostRules& cost);

/// Checks every duty and pairing rule; the report lists each violated rule by
/// name ("base-return", "sit-window", ...). Structurally malformed pairings
/// (no duties, a duty with no flights, unknown flight ids) throw
/// std::invalid_argument instead of reporting illegality.
///
/// The rest between consecutive duties is measured flight-to-flight (next
/// duty's first departure minus previous duty's last arrival), the same gap
/// the connection universe classifies. When `cost` is given, the stored
/// pairing cost must reproduce pairing_cost exactly ("cost-mismatch").
LegalityReport check_pairing_legal(const FlightNetwork& network, const Pairing& pairing,
                                   const LegalityRules& rules, const CostRules* cost = nullptr);

/// Assembles a Pairing from duty flight sequences with tafb and cost filled
/// in. The base is taken from the first flight's origin. Throws on
/// structural errors; legality is the caller's concern.
Pairing make_pairing(const FlightNetwork& network, const LegalityRules& rules, const CostRules& cost,
                     const std::vector<std::vector<int>>& duty_flights);

}  // namespace crewcg
