#include <doctest.h>

#include <algorithm>

#include "crewcg/flight_network.hpp"
#include "crewcg/oracle/oracle.hpp"
#include "helpers.hpp"

using namespace crewcg;
using crewcg::testing::make_network;

TEST_CASE("network sorts flights by departure and reassigns ids") {
    const FlightNetwork net = make_network(
        {{"B", "X", 300, 400}, {"A", "B", 100, 200}, {"X", "B", 300, 500}}, {"A"});
    CHECK(net.flight(0).origin == "A");
    CHECK(net.flight(1).dep_time == 300);
    CHECK(net.flight(1).origin == "B");  // ties keep construction order
    CHECK(net.flight(2).origin == "X");
    for (int i = 0; i < net.size(); ++i) CHECK(net.flight(i).id == i);
}

TEST_CASE("network construction validates flights and bases") {
    CHECK_THROWS_AS(make_network({{"A", "B", 200, 100}}, {"A"}), std::invalid_argument);
    CHECK_THROWS_AS(make_network({{"A", "B", 100, 200}}, {"Z"}), std::invalid_argument);
}

TEST_CASE("legality rule validation") {
    LegalityRules rules;
    CHECK_NOTHROW(rules.validate());
    rules.sit_min = 300;  // >= sit_max
    CHECK_THROWS_AS(rules.validate(), std::invalid_argument);
    rules = LegalityRules{};
    rules.rest_min = rules.sit_max;  // must be strictly longer than a sit
    CHECK_THROWS_AS(rules.validate(), std::invalid_argument);
    CostRules cost;
    cost.rate_flying = -1.0;
    CHECK_THROWS_AS(cost.validate(), std::invalid_argument);
}

TEST_CASE("gap classification follows the sit/rest dichotomy") {
    const LegalityRules rules;
    CHECK(classify_gap(rules.sit_min, rules) == GapKind::Sit);
    CHECK(classify_gap(rules.sit_max, rules) == GapKind::Sit);
    CHECK(classify_gap(rules.sit_max + 1, rules) == GapKind::Illegal);
    CHECK(classify_gap(rules.rest_min - 1, rules) == GapKind::Illegal);
    CHECK(classify_gap(rules.rest_min, rules) == GapKind::Rest);
    CHECK(classify_gap(rules.rest_max, rules) == GapKind::Rest);
    CHECK(classify_gap(rules.rest_max + 1, rules) == GapKind::Illegal);
    CHECK(classify_gap(0, rules) == GapKind::Illegal);
}

TEST_CASE("connection universe: sit gap inside the window") {
    const LegalityRules rules{.sit_min = 30, .sit_max = 240};
    const FlightNetwork net = make_network({{"A", "B", 500, 600}, {"B", "C", 660, 780}}, {"A"});
    const ConnectionUniverse u = connection_universe(net, rules);
    CHECK(u.pairs == std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(u.contains(0, 1));
    CHECK_FALSE(u.contains(1, 0));
}

TEST_CASE("connection universe: gap below sit_min excluded") {
    const FlightNetwork net = make_network({{"A", "B", 500, 600}, {"B", "C", 610, 700}}, {"A"});
    const ConnectionUniverse u = connection_universe(net, LegalityRules{});
    CHECK(u.pairs.empty());
}

TEST_CASE("connection universe matches the exhaustive double loop on random networks") {
    const LegalityRules rules;
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        const FlightNetwork net = crewcg::testing::random_small_network(seed, 20, rules);
        const ConnectionUniverse u = connection_universe(net, rules);
        CHECK(u.pairs == oracle::connection_pairs_bruteforce(net, rules));
    }
}

TEST_CASE("connection universe pairs live strictly above the diagonal") {
    const FlightNetwork net = crewcg::testing::random_small_network(7, 16);
    const ConnectionUniverse u = connection_universe(net, LegalityRules{});
    for (const auto& [i, j] : u.pairs) CHECK(i < j);
}

TEST_CASE("connection universe rejects an empty network") {
    FlightNetwork empty;
    CHECK_THROWS_AS(connection_universe(empty, LegalityRules{}), std::invalid_argument);
}
