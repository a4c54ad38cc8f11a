#include <doctest.h>

#include <cmath>
#include <sstream>

#include "crewcg/branch_bound.hpp"
#include "crewcg/oracle/oracle.hpp"
#include "crewcg/simplex.hpp"
#include "helpers.hpp"

using namespace crewcg;
using crewcg::testing::random_cover_instance;

namespace {

SetCoverInstance tiny_instance() {
    SetCoverInstance inst;
    inst.num_flights = 2;
    inst.columns = {{{0}, 1.0, false}, {{1}, 1.0, false}, {{0, 1}, 1.5, false}};
    return inst;
}

double dual_sum(const LpSolution& sol) {
    double s = 0.0;
    for (double y : sol.duals.values) s += y;
    return s;
}

}  // namespace

TEST_CASE("lp: combined column beats the singletons") {
    const LpResult r = solve_lp(tiny_instance());
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.solution.cost == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(r.solution.primal[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.solution.primal[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.solution.primal[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(dual_sum(r.solution) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("lp: one column covering everything") {
    SetCoverInstance inst;
    inst.num_flights = 4;
    inst.columns = {{{0, 1, 2, 3}, 7.25, false}};
    const LpResult r = solve_lp(inst);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.solution.primal[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.solution.cost == doctest::Approx(7.25).epsilon(1e-9));
}

TEST_CASE("lp: uncovered flight reports infeasible") {
    SetCoverInstance inst;
    inst.num_flights = 3;
    inst.columns = {{{0, 1}, 1.0, false}};
    CHECK(solve_lp(inst).status == LpStatus::Infeasible);
}

TEST_CASE("lp objective matches basic-feasible-solution enumeration on random instances") {
    for (unsigned seed = 1; seed <= 12; ++seed) {
        const SetCoverInstance inst = random_cover_instance(seed, 4 + static_cast<int>(seed % 5), 20);
        const LpResult r = solve_lp(inst);
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(r.solution.cost ==
              doctest::Approx(oracle::lp_vertex_enumeration(inst)).epsilon(1e-6));
    }
}

TEST_CASE("lp invariants: duality, feasibility, slackness, bounds") {
    for (unsigned seed : {31u, 32u, 33u, 34u}) {
        const SetCoverInstance inst = random_cover_instance(seed, 8, 24);
        const LpResult r = solve_lp(inst);
        REQUIRE(r.status == LpStatus::Optimal);
        const LpSolution& sol = r.solution;

        // Strong duality at the optimum.
        CHECK(dual_sum(sol) == doctest::Approx(sol.cost).epsilon(1e-6));

        // Primal cover feasibility and variable bounds.
        for (int f = 0; f < inst.num_flights; ++f) {
            double row = 0.0;
            for (std::size_t j = 0; j < inst.columns.size(); ++j) {
                for (int g : inst.columns[j].flights) {
                    if (g == f) row += sol.primal[j];
                }
            }
            CHECK(row >= 1.0 - 1e-7);
        }
        for (double x : sol.primal) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
        for (double y : sol.duals.values) CHECK(y >= 0.0);

        // Dual feasibility and complementary slackness.
        for (std::size_t j = 0; j < inst.columns.size(); ++j) {
            double covered = 0.0;
            for (int f : inst.columns[j].flights) {
                covered += sol.duals.values[static_cast<std::size_t>(f)];
            }
            const double rc = inst.columns[j].cost - covered;
            CHECK(rc >= -1e-6);
            if (sol.primal[j] > 1e-6) CHECK(rc <= 1e-6);
        }
    }
}

TEST_CASE("lp: adding a column never increases the optimum") {
    for (unsigned seed : {41u, 42u}) {
        SetCoverInstance inst = random_cover_instance(seed, 7, 15);
        const double before = solve_lp(inst).solution.cost;
        Column extra;
        extra.flights = {0, 3, 5};
        extra.cost = 0.9;
        inst.columns.push_back(extra);
        const double after = solve_lp(inst).solution.cost;
        CHECK(after <= before + 1e-9);
    }
}

TEST_CASE("instance dump/parse round-trip") {
    const SetCoverInstance inst = random_cover_instance(5, 6, 9);
    std::stringstream buffer;
    inst.dump(buffer);
    const SetCoverInstance back = SetCoverInstance::parse(buffer);
    REQUIRE(back.num_flights == inst.num_flights);
    REQUIRE(back.columns.size() == inst.columns.size());
    for (std::size_t j = 0; j < inst.columns.size(); ++j) {
        CHECK(back.columns[j].flights == inst.columns[j].flights);
        CHECK(back.columns[j].cost == inst.columns[j].cost);
    }
}

TEST_CASE("ip: integral LP optimum closes the gap") {
    const IpResult ip = solve_ip(tiny_instance());
    CHECK(ip.proven);
    CHECK(ip.cost == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(ip.selected == std::vector<int>{2});
}

TEST_CASE("ip matches exhaustive subset search on random instances") {
    for (unsigned seed = 51; seed <= 60; ++seed) {
        const SetCoverInstance inst = random_cover_instance(seed, 8, 18);
        const IpResult ip = solve_ip(inst);
        CHECK(ip.proven);
        CHECK(ip.cost == doctest::Approx(oracle::ip_subset_search(inst)).epsilon(1e-9));
        CHECK(ip.cost >= solve_lp(inst).solution.cost - 1e-9);
    }
}

TEST_CASE("ip: exhausted node budget still returns a full greedy-rounded cover") {
    const SetCoverInstance inst = random_cover_instance(77, 8, 18);
    const IpResult ip = solve_ip(inst, 0);  // no nodes at all: pure rounding fallback
    CHECK_FALSE(ip.proven);
    std::vector<char> covered(8, 0);
    for (int j : ip.selected) {
        for (int f : inst.columns[static_cast<std::size_t>(j)].flights) {
            covered[static_cast<std::size_t>(f)] = 1;
        }
    }
    for (char c : covered) CHECK(c == 1);
    CHECK(ip.cost >= oracle::ip_subset_search(inst) - 1e-9);
}

TEST_CASE("ip rejects an uncoverable instance") {
    SetCoverInstance inst;
    inst.num_flights = 2;
    inst.columns = {{{0}, 1.0, false}};
    CHECK_THROWS_AS(solve_ip(inst), std::invalid_argument);
}
