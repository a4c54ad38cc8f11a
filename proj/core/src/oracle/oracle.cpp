#include "crewcg/oracle/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace crewcg::oracle {

namespace {

constexpr double kFeasTol = 1e-9;

// Calls fn(combination) for every m-subset of {0..total-1}.
template <typename Fn>
void for_each_combination(int total, int m, Fn&& fn) {
    std::vector<int> pick(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        fn(pick);
        int k = m - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == total - m + k) --k;
        if (k < 0) return;
        ++pick[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < m; ++j) {
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

}  // namespace

double lp_vertex_enumeration(const SetCoverInstance& instance) {
    const int m = instance.num_flights;
    const int n = static_cast<int>(instance.columns.size());
    if (m == 0) return 0.0;
    // C(n+m, m) bases are visited; refuse anything that cannot finish.
    double bases = 1.0;
    for (int k = 1; k <= m; ++k) bases *= static_cast<double>(n + m - k + 1) / k;
    if (!(bases <= 5e7)) {
        throw std::invalid_argument(
            "lp_vertex_enumeration: instance too large for exhaustive basis enumeration (" +
            std::to_string(m) + " flights, " + std::to_string(n) + " columns)");
    }

    Eigen::MatrixXd all_columns = Eigen::MatrixXd::Zero(m, n + m);
    for (int j = 0; j < n; ++j) {
        for (int f : instance.columns[static_cast<std::size_t>(j)].flights) all_columns(f, j) = 1.0;
    }
    for (int r = 0; r < m; ++r) all_columns(r, n + r) = -1.0;

    const Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m);
    double best = std::numeric_limits<double>::infinity();
    for_each_combination(n + m, m, [&](const std::vector<int>& pick) {
        Eigen::MatrixXd basis(m, m);
        for (int k = 0; k < m; ++k) basis.col(k) = all_columns.col(pick[static_cast<std::size_t>(k)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
        if (!lu.isInvertible()) return;
        const Eigen::VectorXd x = lu.solve(rhs);
        double objective = 0.0;
        for (int k = 0; k < m; ++k) {
            if (x(k) < -kFeasTol) return;
            const int var = pick[static_cast<std::size_t>(k)];
            if (var < n) objective += instance.columns[static_cast<std::size_t>(var)].cost * x(k);
        }
        best = std::min(best, objective);
    });
    if (!std::isfinite(best)) {
        throw std::invalid_argument("lp_vertex_enumeration: no feasible basis (instance infeasible)");
    }
    return best;
}

namespace {

struct SubsetSearch {
    const SetCoverInstance& inst;
    std::vector<std::uint64_t> masks;
    std::vector<std::uint64_t> suffix_union;
    std::uint64_t full = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_pick;
    std::vector<int> current;

    void recurse(std::size_t idx, std::uint64_t covered, double cost) {
        if (cost >= best_cost) return;
        if (covered == full) {
            best_cost = cost;
            best_pick = current;
            return;
        }
        if (idx == masks.size()) return;
        if ((covered | suffix_union[idx]) != full) return;

        current.push_back(static_cast<int>(idx));
        recurse(idx + 1, covered | masks[idx], cost + inst.columns[idx].cost);
        current.pop_back();
        recurse(idx + 1, covered, cost);
    }
};

}  // namespace

double ip_subset_search(const SetCoverInstance& instance, std::vector<int>* best) {
    if (instance.num_flights > 64) {
        throw std::invalid_argument("ip_subset_search: more than 64 flights");
    }
    if (instance.columns.size() > 34) {
        throw std::invalid_argument("ip_subset_search: more than 2^34 column subsets");
    }
    SubsetSearch search{instance};
    search.masks.resize(instance.columns.size(), 0);
    for (std::size_t j = 0; j < instance.columns.size(); ++j) {
        for (int f : instance.columns[j].flights) {
            search.masks[j] |= std::uint64_t{1} << f;
        }
    }
    search.full = instance.num_flights == 64 ? ~std::uint64_t{0}
                                             : (std::uint64_t{1} << instance.num_flights) - 1;
    search.suffix_union.assign(instance.columns.size() + 1, 0);
    for (std::size_t j = instance.columns.size(); j-- > 0;) {
        search.suffix_union[j] = search.suffix_union[j + 1] | search.masks[j];
    }
    search.recurse(0, 0, 0.0);
    if (!std::isfinite(search.best_cost)) {
        throw std::invalid_argument("ip_subset_search: instance infeasible");
    }
    if (best != nullptr) *best = search.best_pick;
    return search.best_cost;
}

bool legal_pairing_sequence(const FlightNetwork& network, const LegalityRules& rules,
                            const std::vector<int>& sequence, std::vector<std::string>* violations,
                            std::vector<std::vector<int>>* duty_split) {
    std::vector<std::string> local;
    auto fail = [&local](const char* name) { local.emplace_back(name); };

    if (sequence.empty()) {
        fail("empty");
    } else {
        // Split into duties at rest gaps; any other non-sit gap is fatal.
        std::vector<std::vector<int>> duties;
        duties.push_back({sequence.front()});
        bool gaps_ok = true;
        for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
            const Flight& a = network.flight(sequence[k]);
            const Flight& b = network.flight(sequence[k + 1]);
            if (a.destination != b.origin) {
                fail("continuity");
                gaps_ok = false;
                break;
            }
            const Minutes gap = b.dep_time - a.arr_time;
            if (gap >= rules.sit_min && gap <= rules.sit_max) {
                duties.back().push_back(sequence[k + 1]);
            } else if (gap >= rules.rest_min && gap <= rules.rest_max) {
                duties.push_back({sequence[k + 1]});
            } else {
                fail("gap");
                gaps_ok = false;
                break;
            }
        }

        if (gaps_ok) {
            for (const std::vector<int>& duty : duties) {
                Minutes flying = 0;
                for (int f : duty) flying += network.flight(f).arr_time - network.flight(f).dep_time;
                if (flying > rules.duty_max_flying) fail("duty-flying");
                const Minutes start = network.flight(duty.front()).dep_time - rules.brief;
                const Minutes end = network.flight(duty.back()).arr_time + rules.debrief;
                if (end - start > rules.duty_max_elapsed) fail("duty-elapsed");
                if (static_cast<int>(duty.size()) > rules.duty_max_flights) fail("duty-flights");
            }
            if (static_cast<int>(duties.size()) > rules.pairing_max_duties) fail("pairing-duties");
            const std::string& start_airport = network.flight(sequence.front()).origin;
            if (!network.is_base(start_airport)) fail("base-start");
            if (network.flight(sequence.back()).destination != start_airport) fail("base-return");
            const Minutes tafb = (network.flight(duties.back().back()).arr_time + rules.debrief) -
                                 (network.flight(duties.front().front()).dep_time - rules.brief);
            if (tafb > rules.tafb_max) fail("tafb");
            if (local.empty() && duty_split != nullptr) *duty_split = duties;
        }
    }

    if (violations != nullptr) *violations = local;
    return local.empty();
}

double pairing_cost_by_terms(const FlightNetwork& network, const LegalityRules& rules,
                             const CostRules& cost, const std::vector<std::vector<int>>& duty_split) {
    double total = 0.0;
    for (const std::vector<int>& duty : duty_split) {
        for (int f : duty) {
            total += cost.rate_flying *
                     static_cast<double>(network.flight(f).arr_time - network.flight(f).dep_time);
        }
        total += cost.fixed_cost;
    }
    total += cost.hotel_cost * static_cast<double>(duty_split.size() - 1);
    const Minutes tafb = (network.flight(duty_split.back().back()).arr_time + rules.debrief) -
                         (network.flight(duty_split.front().front()).dep_time - rules.brief);
    total += cost.rate_tafb * static_cast<double>(tafb);
    return total;
}

std::vector<std::vector<int>> enumerate_pairing_sequences(const FlightNetwork& network,
                                                          const LegalityRules& rules,
                                                          const std::vector<int>& flight_subset) {
    std::vector<int> ids = flight_subset;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > 24) {
        throw std::invalid_argument("enumerate_pairing_sequences: subset too large for 2^k filter");
    }
    std::vector<std::vector<int>> found;
    const std::uint32_t limit = std::uint32_t{1} << ids.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        std::vector<int> seq;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (mask & (std::uint32_t{1} << k)) seq.push_back(ids[k]);
        }
        if (legal_pairing_sequence(network, rules, seq)) found.push_back(std::move(seq));
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::vector<std::vector<int>> enumerate_duty_sequences(const FlightNetwork& network,
                                                       const LegalityRules& rules,
                                                       const std::vector<int>& flight_subset) {
    std::vector<int> ids = flight_subset;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() > 24) {
        throw std::invalid_argument("enumerate_duty_sequences: subset too large for 2^k filter");
    }
    std::vector<std::vector<int>> found;
    const std::uint32_t limit = std::uint32_t{1} << ids.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        std::vector<int> seq;
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (mask & (std::uint32_t{1} << k)) seq.push_back(ids[k]);
        }
        if (static_cast<int>(seq.size()) > rules.duty_max_flights) continue;
        bool ok = true;
        Minutes flying = 0;
        for (std::size_t k = 0; k < seq.size() && ok; ++k) {
            flying += network.flight(seq[k]).arr_time - network.flight(seq[k]).dep_time;
            if (k + 1 == seq.size()) break;
            const Flight& a = network.flight(seq[k]);
            const Flight& b = network.flight(seq[k + 1]);
            if (a.destination != b.origin) ok = false;
            const Minutes gap = b.dep_time - a.arr_time;
            if (gap < rules.sit_min || gap > rules.sit_max) ok = false;
        }
        if (!ok) continue;
        if (flying > rules.duty_max_flying) continue;
        const Minutes elapsed = (network.flight(seq.back()).arr_time + rules.debrief) -
                                (network.flight(seq.front()).dep_time - rules.brief);
        if (elapsed > rules.duty_max_elapsed) continue;
        found.push_back(std::move(seq));
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::vector<std::pair<int, int>> connection_pairs_bruteforce(const FlightNetwork& network,
                                                             const LegalityRules& rules) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < network.size(); ++i) {
        for (int j = 0; j < network.size(); ++j) {
            if (i >= j) continue;
            const Flight& a = network.flight(i);
            const Flight& b = network.flight(j);
            if (a.destination != b.origin) continue;
            const Minutes gap = b.dep_time - a.arr_time;
            const bool sit = gap >= rules.sit_min && gap <= rules.sit_max;
            const bool rest = gap >= rules.rest_min && gap <= rules.rest_max;
            if (sit || rest) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

double auc_pairwise(const std::vector<double>& positive_scores,
                    const std::vector<double>& negative_scores) {
    if (positive_scores.empty() || negative_scores.empty()) {
        throw std::invalid_argument("auc_pairwise: empty score set");
    }
    double wins = 0.0;
    for (double p : positive_scores) {
        for (double q : negative_scores) {
            if (p > q) {
                wins += 1.0;
            } else if (p == q) {
                wins += 0.5;
            }
        }
    }
    return wins / (static_cast<double>(positive_scores.size()) *
                   static_cast<double>(negative_scores.size()));
}

}  // namespace crewcg::oracle
