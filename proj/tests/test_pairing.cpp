#include <doctest.h>

#include <algorithm>
#include <random>

#include "crewcg/oracle/oracle.hpp"
#include "crewcg/pairing.hpp"
#include "helpers.hpp"

using namespace crewcg;
using crewcg::testing::make_network;

namespace {

const LegalityRules kRules;

// base->X->base inside every limit.
Pairing out_and_back(const FlightNetwork& net, const CostRules& cost) {
    return make_pairing(net, kRules, cost, {{0, 1}});
}

}  // namespace

TEST_CASE("pairing cost: zero rates give zero cost") {
    const FlightNetwork net = make_network(crewcg::testing::rotation("B", "X", 480), {"B"});
    const CostRules zero{0.0, 0.0, 0.0, 0.0};
    CHECK(out_and_back(net, zero).cost == 0.0);
}

TEST_CASE("pairing cost: direct formula evaluation") {
    // One duty, 120 flying minutes, TAFB 300 (45 brief + 60 + 105 sit + 60 + 30 debrief).
    const FlightNetwork net =
        make_network({{"B", "X", 100, 160}, {"X", "B", 265, 325}}, {"B"});
    CostRules cost;
    cost.rate_flying = 1.0;
    cost.rate_tafb = 0.5;
    cost.hotel_cost = 0.0;
    cost.fixed_cost = 100.0;
    const Pairing p = out_and_back(net, cost);
    CHECK(p.tafb == 300);
    CHECK(p.cost == doctest::Approx(370.0).epsilon(1e-12));
}

TEST_CASE("pairing cost matches term-wise accumulation on random pairings") {
    const CostRules cost;
    std::mt19937 rng(11);
    int checked = 0;
    for (unsigned seed = 1; seed <= 6; ++seed) {
        const FlightNetwork net = crewcg::testing::random_small_network(seed, 12);
        std::vector<int> all(static_cast<std::size_t>(net.size()));
        for (int f = 0; f < net.size(); ++f) all[static_cast<std::size_t>(f)] = f;
        for (const auto& seq : oracle::enumerate_pairing_sequences(net, kRules, all)) {
            std::vector<std::vector<int>> split;
            REQUIRE(oracle::legal_pairing_sequence(net, kRules, seq, nullptr, &split));
            const Pairing p = make_pairing(net, kRules, cost, split);
            CHECK(p.cost == doctest::Approx(oracle::pairing_cost_by_terms(net, kRules, cost, split))
                                .epsilon(1e-12));
            ++checked;
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("pairing cost is pure under recomputation") {
    const FlightNetwork net = make_network(crewcg::testing::rotation("B", "X", 480), {"B"});
    const CostRules cost;
    const Pairing p = out_and_back(net, cost);
    CHECK(pairing_cost(net, p, cost) == p.cost);
    CHECK(pairing_cost(net, p, cost) == pairing_cost(net, p, cost));
}

TEST_CASE("legality: a within-limits out-and-back is legal") {
    const FlightNetwork net = make_network(crewcg::testing::rotation("B", "X", 480), {"B"});
    const CostRules cost;
    const Pairing p = out_and_back(net, cost);
    const LegalityReport report = check_pairing_legal(net, p, kRules, &cost);
    CHECK(report.legal);
    CHECK(report.violations.empty());
}

TEST_CASE("legality: ending away from base reports base-return") {
    const FlightNetwork net =
        make_network({{"B", "X", 480, 570}, {"X", "Y", 630, 720}}, {"B"});
    const CostRules cost;
    const Pairing p = make_pairing(net, kRules, cost, {{0, 1}});
    const LegalityReport report = check_pairing_legal(net, p, kRules);
    CHECK_FALSE(report.legal);
    CHECK(std::find(report.violations.begin(), report.violations.end(), "base-return") !=
          report.violations.end());
}

TEST_CASE("legality verdicts agree with the independent rule checker on random sequences") {
    const CostRules cost;
    std::mt19937 rng(23);
    int checked = 0;
    for (unsigned seed = 1; seed <= 5 || checked < 50; ++seed) {
        const FlightNetwork net = crewcg::testing::random_small_network(seed, 12);
        std::uniform_int_distribution<int> len_pick(1, 6);
        std::uniform_int_distribution<int> id_pick(0, net.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            // Random increasing id sequence; mostly illegal, occasionally legal.
            std::vector<int> seq;
            int len = len_pick(rng);
            for (int k = 0; k < len; ++k) seq.push_back(id_pick(rng));
            std::sort(seq.begin(), seq.end());
            seq.erase(std::unique(seq.begin(), seq.end()), seq.end());

            std::vector<std::vector<int>> split;
            const bool oracle_legal = oracle::legal_pairing_sequence(net, kRules, seq, nullptr, &split);
            if (!oracle_legal) {
                // Feed the checker the same flights as a single duty; it must
                // also reject (possibly for a different named rule).
                const Pairing p = make_pairing(net, kRules, cost, {seq});
                CHECK_FALSE(check_pairing_legal(net, p, kRules).legal);
            } else {
                const Pairing p = make_pairing(net, kRules, cost, split);
                CHECK(check_pairing_legal(net, p, kRules, &cost).legal);
            }
            ++checked;
        }
        if (seed > 40) break;
    }
    CHECK(checked >= 50);
}

TEST_CASE("structural errors are distinct from illegality") {
    const FlightNetwork net = make_network(crewcg::testing::rotation("B", "X", 480), {"B"});
    Pairing p;
    CHECK_THROWS_AS(check_pairing_legal(net, p, kRules), std::invalid_argument);
    p.duties.push_back(Duty{});
    CHECK_THROWS_AS(check_pairing_legal(net, p, kRules), std::invalid_argument);
    CHECK_THROWS_AS(make_duty(net, kRules, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_duty(net, kRules, {99}), std::invalid_argument);
}

TEST_CASE("stale stored cost is a named violation") {
    const FlightNetwork net = make_network(crewcg::testing::rotation("B", "X", 480), {"B"});
    const CostRules cost;
    Pairing p = out_and_back(net, cost);
    p.cost += 1.0;
    const LegalityReport report = check_pairing_legal(net, p, kRules, &cost);
    CHECK_FALSE(report.legal);
    CHECK(std::find(report.violations.begin(), report.violations.end(), "cost-mismatch") !=
          report.violations.end());
}

TEST_CASE("every legal pairing covers a flight and starts and ends at its base") {
    for (unsigned seed : {2u, 5u}) {
        const FlightNetwork net = crewcg::testing::random_small_network(seed, 12);
        std::vector<int> all(static_cast<std::size_t>(net.size()));
        for (int f = 0; f < net.size(); ++f) all[static_cast<std::size_t>(f)] = f;
        for (const auto& seq : oracle::enumerate_pairing_sequences(net, LegalityRules{}, all)) {
            REQUIRE_FALSE(seq.empty());
            CHECK(net.is_base(net.flight(seq.front()).origin));
            CHECK(net.flight(seq.back()).destination == net.flight(seq.front()).origin);
        }
    }
}
