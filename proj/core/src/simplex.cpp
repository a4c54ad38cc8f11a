#include "crewcg/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace crewcg {

namespace {

constexpr double kEnterTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int kRefactorEvery = 128;
constexpr int kDegenerateBeforeBland = 64;

// Variable layout: [0, n) structural, [n, n+m) surplus (-e_r), [n+m, n+2m) artificial (+e_r).
class RevisedSimplex {
public:
    explicit RevisedSimplex(const SetCoverInstance& inst)
        : inst_(inst),
          m_(inst.num_flights),
          n_(static_cast<int>(inst.columns.size())),
          b_inv_(Eigen::MatrixXd::Identity(m_, m_)),
          x_basic_(Eigen::VectorXd::Ones(m_)),
          basis_(static_cast<std::size_t>(m_)) {
        for (int r = 0; r < m_; ++r) basis_[static_cast<std::size_t>(r)] = n_ + m_ + r;
        in_basis_.assign(static_cast<std::size_t>(n_ + 2 * m_), false);
        for (int v : basis_) in_basis_[static_cast<std::size_t>(v)] = true;
    }

    LpResult solve() {
        LpResult result;
        run_phase(/*phase1=*/true);
        if (objective(/*phase1=*/true) > kPhase1Tol) {
            result.status = LpStatus::Infeasible;
            result.iterations = iterations_;
            return result;
        }
        drive_out_artificials();
        run_phase(/*phase1=*/false);

        result.status = LpStatus::Optimal;
        result.iterations = iterations_;
        LpSolution& sol = result.solution;
        sol.pairings = inst_.columns;
        sol.primal.assign(static_cast<std::size_t>(n_), 0.0);
        for (int r = 0; r < m_; ++r) {
            const int v = basis_[static_cast<std::size_t>(r)];
            if (v < n_) {
                sol.primal[static_cast<std::size_t>(v)] = std::clamp(x_basic_(r), 0.0, 1.0);
            }
        }
        const Eigen::VectorXd y = duals(/*phase1=*/false);
        sol.duals.values.resize(static_cast<std::size_t>(m_));
        for (int r = 0; r < m_; ++r) {
            sol.duals.values[static_cast<std::size_t>(r)] = std::max(0.0, y(r));
        }
        sol.cost = 0.0;
        for (int j = 0; j < n_; ++j) {
            sol.cost += inst_.columns[static_cast<std::size_t>(j)].cost *
                        sol.primal[static_cast<std::size_t>(j)];
        }
        return result;
    }

private:
    double cost_of(int var, bool phase1) const {
        if (phase1) return var >= n_ + m_ ? 1.0 : 0.0;
        if (var < n_) return inst_.columns[static_cast<std::size_t>(var)].cost;
        return 0.0;  // surplus; artificials never priced in phase 2
    }

    // B_inv * column(var), exploiting column sparsity.
    Eigen::VectorXd ftran(int var) const {
        if (var < n_) {
            Eigen::VectorXd d = Eigen::VectorXd::Zero(m_);
            for (int f : inst_.columns[static_cast<std::size_t>(var)].flights) d += b_inv_.col(f);
            return d;
        }
        if (var < n_ + m_) return -b_inv_.col(var - n_);
        return b_inv_.col(var - n_ - m_);
    }

    Eigen::VectorXd duals(bool phase1) const {
        Eigen::VectorXd c_b(m_);
        for (int r = 0; r < m_; ++r) c_b(r) = cost_of(basis_[static_cast<std::size_t>(r)], phase1);
        return b_inv_.transpose() * c_b;
    }

    double objective(bool phase1) const {
        double total = 0.0;
        for (int r = 0; r < m_; ++r) {
            total += cost_of(basis_[static_cast<std::size_t>(r)], phase1) * x_basic_(r);
        }
        return total;
    }

    double reduced_cost_of(int var, const Eigen::VectorXd& y, bool phase1) const {
        double dual_part = 0.0;
        if (var < n_) {
            for (int f : inst_.columns[static_cast<std::size_t>(var)].flights) dual_part += y(f);
        } else if (var < n_ + m_) {
            dual_part = -y(var - n_);
        } else {
            dual_part = y(var - n_ - m_);
        }
        return cost_of(var, phase1) - dual_part;
    }

    void pivot(int entering, int leave_row, const Eigen::VectorXd& d, double step) {
        x_basic_ -= step * d;
        x_basic_(leave_row) = step;
        for (int r = 0; r < m_; ++r) {
            if (x_basic_(r) < 0.0 && x_basic_(r) > -1e-11) x_basic_(r) = 0.0;
        }

        in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(leave_row)])] = false;
        basis_[static_cast<std::size_t>(leave_row)] = entering;
        in_basis_[static_cast<std::size_t>(entering)] = true;

        b_inv_.row(leave_row) /= d(leave_row);
        for (int r = 0; r < m_; ++r) {
            if (r == leave_row) continue;
            const double factor = d(r);
            if (factor != 0.0) b_inv_.row(r) -= factor * b_inv_.row(leave_row);
        }

        if (++pivots_since_refactor_ >= kRefactorEvery) refactorize();
    }

    void refactorize() {
        Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
        for (int r = 0; r < m_; ++r) {
            const int v = basis_[static_cast<std::size_t>(r)];
            if (v < n_) {
                for (int f : inst_.columns[static_cast<std::size_t>(v)].flights) basis_matrix(f, r) = 1.0;
            } else if (v < n_ + m_) {
                basis_matrix(v - n_, r) = -1.0;
            } else {
                basis_matrix(v - n_ - m_, r) = 1.0;
            }
        }
        b_inv_ = basis_matrix.partialPivLu().inverse();
        x_basic_ = b_inv_ * Eigen::VectorXd::Ones(m_);
        pivots_since_refactor_ = 0;
    }

    void run_phase(bool phase1) {
        const long limit = 4000L + 200L * static_cast<long>(m_ + n_);
        int degenerate_streak = 0;
        for (long iter = 0;; ++iter, ++iterations_) {
            if (iter > limit) throw SimplexError("simplex: pivot limit exceeded");
            const bool bland = degenerate_streak >= kDegenerateBeforeBland;
            const Eigen::VectorXd y = duals(phase1);

            int entering = -1;
            double best_rc = -kEnterTol;
            for (int v = 0; v < n_ + m_; ++v) {
                if (in_basis_[static_cast<std::size_t>(v)]) continue;
                const double rc = reduced_cost_of(v, y, phase1);
                if (bland) {
                    if (rc < -kEnterTol) {
                        entering = v;
                        break;
                    }
                } else if (rc < best_rc) {
                    best_rc = rc;
                    entering = v;
                }
            }
            if (entering < 0) return;  // optimal for this phase

            const Eigen::VectorXd d = ftran(entering);
            int leave_row = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m_; ++r) {
                if (d(r) <= kPivotTol) continue;
                const double ratio = std::max(x_basic_(r), 0.0) / d(r);
                const bool better =
                    ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && leave_row >= 0 &&
                     basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave_row)]);
                if (leave_row < 0 || better) {
                    best_ratio = ratio;
                    leave_row = r;
                }
            }
            if (leave_row < 0) throw SimplexError("simplex: unbounded direction");

            degenerate_streak = best_ratio <= 1e-10 ? degenerate_streak + 1 : 0;
            pivot(entering, leave_row, d, best_ratio);
        }
    }

    // Replaces basic artificials (value 0 after a feasible phase 1) with any
    // non-artificial column having a nonzero pivot element; [A -I] has full
    // row rank, so one always exists.
    void drive_out_artificials() {
        for (int r = 0; r < m_; ++r) {
            if (basis_[static_cast<std::size_t>(r)] < n_ + m_) continue;
            bool replaced = false;
            for (int v = 0; v < n_ + m_ && !replaced; ++v) {
                if (in_basis_[static_cast<std::size_t>(v)]) continue;
                const Eigen::VectorXd d = ftran(v);
                if (std::abs(d(r)) > 1e-7) {
                    // Degenerate swap: the artificial sits at value 0.
                    in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] = false;
                    basis_[static_cast<std::size_t>(r)] = v;
                    in_basis_[static_cast<std::size_t>(v)] = true;
                    b_inv_.row(r) /= d(r);
                    for (int i = 0; i < m_; ++i) {
                        if (i == r) continue;
                        const double factor = d(i);
                        if (factor != 0.0) b_inv_.row(i) -= factor * b_inv_.row(r);
                    }
                    x_basic_(r) = 0.0;
                    replaced = true;
                }
            }
            if (!replaced) throw SimplexError("simplex: stuck artificial in basis");
        }
    }

    const SetCoverInstance& inst_;
    int m_ = 0;
    int n_ = 0;
    Eigen::MatrixXd b_inv_;
    Eigen::VectorXd x_basic_;
    std::vector<int> basis_;
    std::vector<bool> in_basis_;
    long iterations_ = 0;
    int pivots_since_refactor_ = 0;
};

}  // namespace

LpResult solve_lp(const SetCoverInstance& instance) {
    for (const Column& c : instance.columns) {
        if (c.cost < 0.0) throw std::invalid_argument("solve_lp: negative column cost");
    }
    if (!instance.fully_coverable()) {
        LpResult r;
        r.status = LpStatus::Infeasible;
        return r;
    }
    if (instance.num_flights == 0) {
        LpResult r;
        r.status = LpStatus::Optimal;
        r.solution.pairings = instance.columns;
        r.solution.primal.assign(instance.columns.size(), 0.0);
        return r;
    }
    return RevisedSimplex(instance).solve();
}

}  // namespace crewcg
