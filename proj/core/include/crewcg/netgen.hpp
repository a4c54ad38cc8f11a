#pragma once

#include "crewcg/flight_network.hpp"

namespace crewcg {

/// Hub-and-spoke schedule generator. Flights come in out-and-back rotations
/// (base hub -> destination -> base hub) with sit-legal turnarounds, so every
/// flight lies on a single-duty pairing; non-base hubs and spokes appear as
/// destinations, and overlapping rotations connect across bases.
/// flights_per_day must be even.
struct NetGenConfig {
    int num_hubs = 3;
    int num_spokes = 8;
    int num_bases = 2;        // bases are the first num_bases hubs
    int flights_per_day = 60;
    int num_days = 2;
    unsigned seed = 1;
    int max_retries = 25;

    void validate() const;
};

/// Deterministic per seed. Retries with derived seeds until every flight is
/// reachable from a base-departing flight and can reach a base-arriving one
/// through legal connections; throws after max_retries.
FlightNetwork generate_network(const NetGenConfig& config, const LegalityRules& rules);

}  // namespace crewcg
