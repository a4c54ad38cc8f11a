#include "crewcg/branch_bound.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "crewcg/simplex.hpp"

namespace crewcg {

namespace {

constexpr double kIntTol = 1e-6;
constexpr double kPruneTol = 1e-9;

struct Node {
    std::vector<int> fixed_zero;
    std::vector<int> fixed_one;
    double bound = 0.0;
    long id = 0;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.id > b.id;
    }
};

double total_cost(const SetCoverInstance& inst, const std::vector<int>& selected) {
    double c = 0.0;
    for (int j : selected) c += inst.columns[static_cast<std::size_t>(j)].cost;
    return c;
}

// Cover from the LP primal: columns by decreasing weight until every flight
// is covered, then a reverse sweep dropping redundant picks.
std::vector<int> greedy_rounding(const SetCoverInstance& inst, const std::vector<double>& primal) {
    std::vector<int> order(inst.columns.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double xa = primal[static_cast<std::size_t>(a)];
        const double xb = primal[static_cast<std::size_t>(b)];
        if (xa != xb) return xa > xb;
        return a < b;
    });

    std::vector<int> cover_count(static_cast<std::size_t>(inst.num_flights), 0);
    int uncovered = inst.num_flights;
    std::vector<int> chosen;
    for (int j : order) {
        if (uncovered == 0) break;
        bool adds = false;
        for (int f : inst.columns[static_cast<std::size_t>(j)].flights) {
            if (cover_count[static_cast<std::size_t>(f)] == 0) {
                adds = true;
                break;
            }
        }
        if (!adds) continue;
        chosen.push_back(j);
        for (int f : inst.columns[static_cast<std::size_t>(j)].flights) {
            if (cover_count[static_cast<std::size_t>(f)]++ == 0) --uncovered;
        }
    }
    for (auto it = chosen.rbegin(); it != chosen.rend();) {
        const int j = *it;
        bool redundant = true;
        for (int f : inst.columns[static_cast<std::size_t>(j)].flights) {
            if (cover_count[static_cast<std::size_t>(f)] <= 1) {
                redundant = false;
                break;
            }
        }
        if (redundant) {
            for (int f : inst.columns[static_cast<std::size_t>(j)].flights) {
                --cover_count[static_cast<std::size_t>(f)];
            }
            it = decltype(it)(chosen.erase(std::next(it).base()));
        } else {
            ++it;
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

struct NodeLp {
    bool feasible = false;
    double cost = 0.0;                 // fixed-one cost + reduced LP cost
    std::vector<double> full_primal;   // indexed by original column
};

NodeLp solve_node(const SetCoverInstance& inst, const Node& node) {
    NodeLp out;
    std::vector<char> banned(inst.columns.size(), 0);
    for (int j : node.fixed_zero) banned[static_cast<std::size_t>(j)] = 1;
    std::vector<char> forced(inst.columns.size(), 0);
    for (int j : node.fixed_one) forced[static_cast<std::size_t>(j)] = 1;

    std::vector<char> satisfied(static_cast<std::size_t>(inst.num_flights), 0);
    double fixed_cost = 0.0;
    for (int j : node.fixed_one) {
        fixed_cost += inst.columns[static_cast<std::size_t>(j)].cost;
        for (int f : inst.columns[static_cast<std::size_t>(j)].flights) {
            satisfied[static_cast<std::size_t>(f)] = 1;
        }
    }

    std::vector<int> row_map(static_cast<std::size_t>(inst.num_flights), -1);
    int remaining_rows = 0;
    for (int f = 0; f < inst.num_flights; ++f) {
        if (!satisfied[static_cast<std::size_t>(f)]) row_map[static_cast<std::size_t>(f)] = remaining_rows++;
    }

    out.full_primal.assign(inst.columns.size(), 0.0);
    for (int j : node.fixed_one) out.full_primal[static_cast<std::size_t>(j)] = 1.0;
    if (remaining_rows == 0) {
        out.feasible = true;
        out.cost = fixed_cost;
        return out;
    }

    SetCoverInstance reduced;
    reduced.num_flights = remaining_rows;
    std::vector<int> col_map;
    for (std::size_t j = 0; j < inst.columns.size(); ++j) {
        if (banned[j] || forced[j]) continue;
        Column c;
        c.cost = inst.columns[j].cost;
        for (int f : inst.columns[j].flights) {
            const int r = row_map[static_cast<std::size_t>(f)];
            if (r >= 0) c.flights.push_back(r);
        }
        if (c.flights.empty()) continue;
        reduced.columns.push_back(std::move(c));
        col_map.push_back(static_cast<int>(j));
    }

    const LpResult lp = solve_lp(reduced);
    if (lp.status != LpStatus::Optimal) return out;
    out.feasible = true;
    out.cost = fixed_cost + lp.solution.cost;
    for (std::size_t k = 0; k < col_map.size(); ++k) {
        out.full_primal[static_cast<std::size_t>(col_map[k])] = lp.solution.primal[k];
    }
    return out;
}

}  // namespace

IpResult solve_ip(const SetCoverInstance& instance, long node_budget) {
    if (!instance.fully_coverable()) {
        throw std::invalid_argument("solve_ip: instance cannot cover every flight");
    }
    IpResult result;
    if (instance.num_flights == 0 || instance.columns.empty()) {
        result.proven = true;
        return result;
    }

    const LpResult root = solve_lp(instance);
    if (root.status != LpStatus::Optimal) {
        throw std::invalid_argument("solve_ip: root LP infeasible");
    }
    result.selected = greedy_rounding(instance, root.solution.primal);
    result.cost = total_cost(instance, result.selected);

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long next_id = 0;
    open.push(Node{{}, {}, root.solution.cost, next_id++});

    while (!open.empty()) {
        if (result.nodes >= node_budget) return result;  // incumbent, not proven
        const Node node = open.top();
        open.pop();
        if (node.bound >= result.cost - kPruneTol) continue;
        ++result.nodes;

        const NodeLp lp = solve_node(instance, node);
        if (!lp.feasible || lp.cost >= result.cost - kPruneTol) continue;

        int branch_col = -1;
        double best_frac = kIntTol;
        for (std::size_t j = 0; j < lp.full_primal.size(); ++j) {
            const double x = lp.full_primal[j];
            const double frac = std::min(x - std::floor(x), std::ceil(x) - x);
            if (frac > best_frac) {
                best_frac = frac;
                branch_col = static_cast<int>(j);
            }
        }

        if (branch_col < 0) {
            // Integral: harvest the selected columns.
            std::vector<int> selected;
            for (std::size_t j = 0; j < lp.full_primal.size(); ++j) {
                if (lp.full_primal[j] > 0.5) selected.push_back(static_cast<int>(j));
            }
            result.selected = std::move(selected);
            result.cost = total_cost(instance, result.selected);
            continue;
        }

        Node zero = node;
        zero.fixed_zero.push_back(branch_col);
        zero.bound = lp.cost;
        zero.id = next_id++;
        Node one = node;
        one.fixed_one.push_back(branch_col);
        one.bound = lp.cost;
        one.id = next_id++;
        open.push(std::move(one));
        open.push(std::move(zero));
    }
    result.proven = true;
    return result;
}

}  // namespace crewcg
