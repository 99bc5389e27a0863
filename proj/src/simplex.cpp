#include "quadel/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ColStatus : char { Basic, AtLower, AtUpper, Free };

/// Dense-tableau bounded-variable primal simplex. Columns are the
/// structural variables, one slack per inequality row, and one artificial
/// per row that cannot start feasible on its slack. The tableau is only
/// trusted for pivot selection: the final basis is re-solved against the
/// original data (LU) before a solution is returned, and the solver
/// restarts with Bland's rule if that certification fails.
class SimplexSolver {
public:
    SimplexSolver(const MilpModel& model, const std::vector<double>& lower,
                  const std::vector<double>& upper, const SolverTolerances& tol)
        : model_(model),
          tol_(tol),
          n_(model.columns),
          m_(static_cast<int>(model.rows.size())),
          lb0_(lower),
          ub0_(upper) {
        col_entries_.assign(n_, {});
        for (int i = 0; i < m_; ++i)
            for (const auto& [c, v] : model_.rows[i].terms) col_entries_[c].emplace_back(i, v);
        scale_ = 0.0;
        for (const auto& row : model_.rows) scale_ = std::max(scale_, std::abs(row.rhs));
        feas_eps_ = tol_.feasibility * (1.0 + scale_);
        double cmax = 0.0;
        for (double c : model_.objective) cmax = std::max(cmax, std::abs(c));
        cost_eps_ = 1e-9 * (1.0 + cmax);
    }

    LpSolution solve() {
        for (int attempt = 0; attempt < 2; ++attempt) {
            bland_ = attempt > 0;  // second attempt: Bland from the start
            degenerate_run_ = 0;
            pivots_ = 0;
            LpSolution sol;
            if (run(sol)) return sol;
        }
        throw NumericalFailure("simplex could not certify a solution");
    }

private:
    const MilpModel& model_;
    SolverTolerances tol_;
    int n_, m_;
    std::vector<double> lb0_, ub0_;  // structural bounds for this solve

    int total_ = 0;
    int art_base_ = 0;
    std::vector<double> lb_, ub_, cost_, nb_value_, xb_, dcost_, tableau_;
    std::vector<ColStatus> status_;
    std::vector<int> basis_, slack_col_, art_col_;
    std::vector<double> slack_sign_, art_sign_;
    std::vector<std::vector<std::pair<int, double>>> col_entries_;

    double scale_ = 0.0, feas_eps_ = 1e-9, cost_eps_ = 1e-9;
    bool bland_ = false;
    int degenerate_run_ = 0;
    std::size_t pivots_ = 0;

    double& tab(int i, int j) { return tableau_[static_cast<size_t>(i) * total_ + j]; }
    double tab(int i, int j) const { return tableau_[static_cast<size_t>(i) * total_ + j]; }

    bool is_artificial(int j) const { return j >= art_base_; }

    // ---- initial basis ---------------------------------------------------

    void init_tableau() {
        slack_col_.assign(m_, -1);
        art_col_.assign(m_, -1);
        slack_sign_.assign(m_, 1.0);
        art_sign_.assign(m_, 1.0);

        int next = n_;
        for (int i = 0; i < m_; ++i)
            if (model_.rows[i].sense != RowSense::Eq) slack_col_[i] = next++;
        art_base_ = next;

        // All structural columns nonbasic at the finite bound nearest zero.
        std::vector<double> x0(n_, 0.0);
        std::vector<ColStatus> st0(n_, ColStatus::AtLower);
        for (int j = 0; j < n_; ++j) {
            bool lo = std::isfinite(lb0_[j]);
            bool hi = std::isfinite(ub0_[j]);
            if (lo && (!hi || std::abs(lb0_[j]) <= std::abs(ub0_[j]))) {
                x0[j] = lb0_[j];
            } else if (hi) {
                x0[j] = ub0_[j];
                st0[j] = ColStatus::AtUpper;
            } else {
                st0[j] = ColStatus::Free;
            }
        }

        std::vector<double> residual(m_, 0.0);
        std::vector<bool> needs_art(m_, false);
        for (int i = 0; i < m_; ++i) {
            double act = 0.0;
            for (const auto& [c, v] : model_.rows[i].terms) act += v * x0[c];
            residual[i] = model_.rows[i].rhs - act;
            RowSense s = model_.rows[i].sense;
            bool slack_ok = (s == RowSense::Le && residual[i] >= 0.0) ||
                            (s == RowSense::Ge && residual[i] <= 0.0);
            if (!slack_ok) needs_art[i] = true;
        }
        for (int i = 0; i < m_; ++i)
            if (needs_art[i]) {
                art_col_[i] = next++;
                art_sign_[i] = residual[i] >= 0.0 ? 1.0 : -1.0;
            }
        total_ = next;

        lb_.assign(total_, 0.0);
        ub_.assign(total_, kInf);
        status_.assign(total_, ColStatus::AtLower);
        nb_value_.assign(total_, 0.0);
        for (int j = 0; j < n_; ++j) {
            lb_[j] = lb0_[j];
            ub_[j] = ub0_[j];
            status_[j] = st0[j];
            nb_value_[j] = x0[j];
        }
        for (int i = 0; i < m_; ++i)
            slack_sign_[i] = model_.rows[i].sense == RowSense::Le ? 1.0 : -1.0;

        tableau_.assign(static_cast<size_t>(m_) * total_, 0.0);
        basis_.assign(m_, -1);
        xb_.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            double diag;
            if (needs_art[i]) {
                basis_[i] = art_col_[i];
                diag = art_sign_[i];
            } else {
                basis_[i] = slack_col_[i];
                diag = slack_sign_[i];
            }
            xb_[i] = std::abs(residual[i]);
            double inv = 1.0 / diag;
            for (const auto& [c, v] : model_.rows[i].terms) tab(i, c) = inv * v;
            if (slack_col_[i] >= 0) tab(i, slack_col_[i]) = inv * slack_sign_[i];
            if (art_col_[i] >= 0) tab(i, art_col_[i]) = inv * art_sign_[i];
            status_[basis_[i]] = ColStatus::Basic;
        }
    }

    void set_phase_costs(bool phase1) {
        cost_.assign(total_, 0.0);
        if (phase1) {
            for (int j = art_base_; j < total_; ++j) cost_[j] = 1.0;
        } else {
            for (int j = 0; j < n_; ++j) cost_[j] = model_.objective[j];
        }
        recompute_reduced_costs();
    }

    void recompute_reduced_costs() {
        dcost_ = cost_;
        for (int i = 0; i < m_; ++i) {
            double cb = cost_[basis_[i]];
            if (cb == 0.0) continue;
            const double* row = &tableau_[static_cast<size_t>(i) * total_];
            for (int j = 0; j < total_; ++j) dcost_[j] -= cb * row[j];
        }
    }

    // ---- pivoting ----------------------------------------------------------

    bool entering_eligible(int j, int& dir) const {
        if (status_[j] == ColStatus::Basic) return false;
        if (status_[j] != ColStatus::Free && !(ub_[j] - lb_[j] > 0.0)) return false;
        double d = dcost_[j];
        if (status_[j] == ColStatus::AtLower && d < -cost_eps_) {
            dir = +1;
            return true;
        }
        if (status_[j] == ColStatus::AtUpper && d > cost_eps_) {
            dir = -1;
            return true;
        }
        if (status_[j] == ColStatus::Free && std::abs(d) > cost_eps_) {
            dir = d < 0 ? +1 : -1;
            return true;
        }
        return false;
    }

    int choose_entering(int& dir) const {
        int best = -1, best_dir = 0;
        double best_score = 0.0;
        for (int j = 0; j < total_; ++j) {
            int dj = 0;
            if (!entering_eligible(j, dj)) continue;
            if (bland_) {
                dir = dj;
                return j;
            }
            double score = std::abs(dcost_[j]);
            if (score > best_score + 1e-15) {
                best_score = score;
                best = j;
                best_dir = dj;
            }
        }
        dir = best_dir;
        return best;
    }

    enum class StepResult { Pivoted, Optimal, Unbounded };

    StepResult step() {
        int dir = 0;
        int j = choose_entering(dir);
        if (j < 0) return StepResult::Optimal;

        const double piv_eps = 1e-9;
        double theta = ub_[j] - lb_[j];  // bound-flip distance, may be inf
        if (status_[j] == ColStatus::Free) theta = kInf;
        int leave_row = -1;
        bool leave_to_upper = false;
        for (int i = 0; i < m_; ++i) {
            double a = tab(i, j);
            if (std::abs(a) < piv_eps) continue;
            double rate = -dir * a;  // basic i change per unit theta
            int bi = basis_[i];
            double t;
            if (rate < 0.0) {
                if (!std::isfinite(lb_[bi])) continue;
                t = (xb_[i] - lb_[bi]) / -rate;
            } else {
                if (!std::isfinite(ub_[bi])) continue;
                t = (ub_[bi] - xb_[i]) / rate;
            }
            if (t < 0.0) t = 0.0;
            bool better = t < theta - 1e-12;
            bool tie = leave_row >= 0 && std::abs(t - theta) <= 1e-12;
            bool take = better;
            if (tie) {
                take = bland_ ? basis_[i] < basis_[leave_row]
                              : std::abs(a) > std::abs(tab(leave_row, j));
            }
            if (take) {
                theta = std::min(theta, t);
                leave_row = i;
                leave_to_upper = rate > 0.0;
            }
        }

        if (!std::isfinite(theta)) return StepResult::Unbounded;

        if (theta > 1e-12)
            degenerate_run_ = 0;
        else if (++degenerate_run_ > tol_.stall_pivots)
            bland_ = true;

        if (theta != 0.0)
            for (int i = 0; i < m_; ++i) {
                double a = tab(i, j);
                if (a != 0.0) xb_[i] -= dir * a * theta;
            }
        double new_value = nb_value_[j] + dir * theta;

        if (leave_row < 0) {
            nb_value_[j] = new_value;
            status_[j] = dir > 0 ? ColStatus::AtUpper : ColStatus::AtLower;
            ++pivots_;
            return StepResult::Pivoted;
        }

        int leaving = basis_[leave_row];
        status_[leaving] = leave_to_upper ? ColStatus::AtUpper : ColStatus::AtLower;
        nb_value_[leaving] = leave_to_upper ? ub_[leaving] : lb_[leaving];
        basis_[leave_row] = j;
        status_[j] = ColStatus::Basic;
        xb_[leave_row] = new_value;

        double* prow = &tableau_[static_cast<size_t>(leave_row) * total_];
        double inv = 1.0 / prow[j];
        for (int c = 0; c < total_; ++c) prow[c] *= inv;
        prow[j] = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == leave_row) continue;
            double f = tab(i, j);
            if (f == 0.0) continue;
            double* row = &tableau_[static_cast<size_t>(i) * total_];
            for (int c = 0; c < total_; ++c) row[c] -= f * prow[c];
            row[j] = 0.0;
        }
        double fd = dcost_[j];
        if (fd != 0.0) {
            for (int c = 0; c < total_; ++c) dcost_[c] -= fd * prow[c];
            dcost_[j] = 0.0;
        }
        ++pivots_;
        return StepResult::Pivoted;
    }

    StepResult run_phase() {
        std::size_t cap = 5000 + 200ull * static_cast<std::size_t>(m_ + n_);
        for (std::size_t it = 0; it < cap; ++it) {
            StepResult r = step();
            if (r != StepResult::Pivoted) return r;
        }
        throw NumericalFailure("simplex iteration cap exceeded");
    }

    double phase1_objective() const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i)
            if (is_artificial(basis_[i])) s += xb_[i];
        for (int j = art_base_; j < total_; ++j)
            if (status_[j] != ColStatus::Basic) s += nb_value_[j];
        return s;
    }

    std::vector<double> duals_from_tableau() const {
        // The unit column of row i (slack or artificial, with its sign)
        // exposes y_i through its reduced cost.
        std::vector<double> y(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            if (slack_col_[i] >= 0) {
                int sc = slack_col_[i];
                y[i] = slack_sign_[i] * (cost_[sc] - dcost_[sc]);
            } else if (art_col_[i] >= 0) {
                int ac = art_col_[i];
                y[i] = art_sign_[i] * (cost_[ac] - dcost_[ac]);
            }
        }
        return y;
    }

    // ---- exact recertification --------------------------------------------

    void fill_original_column(int j, Eigen::MatrixXd& M, int dest_col) const {
        if (j < n_) {
            for (const auto& [r, v] : col_entries_[j]) M(r, dest_col) = v;
        } else {
            for (int r = 0; r < m_; ++r) {
                if (slack_col_[r] == j) M(r, dest_col) = slack_sign_[r];
                if (art_col_[r] == j) M(r, dest_col) = art_sign_[r];
            }
        }
    }

    Eigen::VectorXd nonbasic_adjusted_rhs() const {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(std::max(m_, 1));
        for (int i = 0; i < m_; ++i) rhs(i) = model_.rows[i].rhs;
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == ColStatus::Basic) continue;
            double v = nb_value_[j];
            if (v == 0.0) continue;
            if (j < n_) {
                for (const auto& [r, coef] : col_entries_[j]) rhs(r) -= coef * v;
            } else {
                for (int r = 0; r < m_; ++r) {
                    if (slack_col_[r] == j) rhs(r) -= slack_sign_[r] * v;
                    if (art_col_[r] == j) rhs(r) -= art_sign_[r] * v;
                }
            }
        }
        return rhs;
    }

    bool recertify(LpSolution& sol) {
        using Eigen::MatrixXd;
        using Eigen::VectorXd;

        VectorXd exact_xb, y;
        if (m_ > 0) {
            MatrixXd B = MatrixXd::Zero(m_, m_);
            for (int i = 0; i < m_; ++i) fill_original_column(basis_[i], B, i);
            Eigen::PartialPivLU<MatrixXd> lu(B);
            exact_xb = lu.solve(nonbasic_adjusted_rhs());
            VectorXd cb(m_);
            for (int i = 0; i < m_; ++i) cb(i) = cost_[basis_[i]];
            y = lu.transpose().solve(cb);
            if (!exact_xb.allFinite() || !y.allFinite()) return false;
            for (int i = 0; i < m_; ++i) {
                int bj = basis_[i];
                if (exact_xb(i) < lb_[bj] - feas_eps_ || exact_xb(i) > ub_[bj] + feas_eps_)
                    return false;
            }
            for (int i = 0; i < m_; ++i) xb_[i] = exact_xb(i);
        }

        std::vector<double> dred(total_, 0.0);
        for (int j = 0; j < total_; ++j) {
            double d = cost_[j];
            if (j < n_) {
                for (const auto& [r, v] : col_entries_[j]) d -= y(r) * v;
            } else {
                for (int r = 0; r < m_; ++r) {
                    if (slack_col_[r] == j) d -= y(r) * slack_sign_[r];
                    if (art_col_[r] == j) d -= y(r) * art_sign_[r];
                }
            }
            dred[j] = d;
        }
        const double dual_eps = 10.0 * cost_eps_ + 1e-9 * (1.0 + scale_);
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == ColStatus::Basic) continue;
            if (status_[j] != ColStatus::Free && !(ub_[j] - lb_[j] > 0.0)) continue;
            if (status_[j] == ColStatus::AtLower && dred[j] < -dual_eps) return false;
            if (status_[j] == ColStatus::AtUpper && dred[j] > dual_eps) return false;
            if (status_[j] == ColStatus::Free && std::abs(dred[j]) > dual_eps) return false;
        }

        sol.primal.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) sol.primal[j] = nb_value_[j];
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) sol.primal[basis_[i]] = xb_[i];
        sol.dual_rows.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) sol.dual_rows[i] = y(i);
        sol.reduced_costs.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) sol.reduced_costs[j] = dred[j];
        sol.objective = 0.0;
        for (int j = 0; j < n_; ++j) sol.objective += model_.objective[j] * sol.primal[j];
        sol.pivots = pivots_;
        return true;
    }

    bool rebuild_from_basis() {
        using Eigen::MatrixXd;
        if (m_ == 0) return true;
        MatrixXd B = MatrixXd::Zero(m_, m_);
        for (int i = 0; i < m_; ++i) fill_original_column(basis_[i], B, i);
        Eigen::PartialPivLU<MatrixXd> lu(B);
        MatrixXd A = MatrixXd::Zero(m_, total_);
        for (int j = 0; j < total_; ++j) fill_original_column(j, A, j);
        MatrixXd D = lu.solve(A);
        if (!D.allFinite()) return false;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < total_; ++j) tab(i, j) = D(i, j);
        Eigen::VectorXd exact_xb = lu.solve(nonbasic_adjusted_rhs());
        for (int i = 0; i < m_; ++i) {
            int bj = basis_[i];
            if (exact_xb(i) < lb_[bj] - feas_eps_ || exact_xb(i) > ub_[bj] + feas_eps_)
                return false;  // cannot resume a primal phase 2 from here
            xb_[i] = exact_xb(i);
        }
        recompute_reduced_costs();
        return true;
    }

    // ---- driver -------------------------------------------------------------

    bool run(LpSolution& sol) {
        init_tableau();

        bool need_phase1 = art_base_ < total_;
        if (need_phase1) {
            set_phase_costs(true);
            StepResult r = run_phase();
            if (r == StepResult::Unbounded)
                throw NumericalFailure("phase-1 objective unbounded");
            double infeas = phase1_objective();
            if (infeas > feas_eps_) {
                sol.status = LpStatus::Infeasible;
                sol.farkas = duals_from_tableau();
                sol.objective = infeas;
                sol.pivots = pivots_;
                return true;
            }
            for (int i = 0; i < m_; ++i) {
                if (art_col_[i] < 0) continue;
                int a = art_col_[i];
                ub_[a] = 0.0;
                if (status_[a] != ColStatus::Basic) nb_value_[a] = 0.0;
            }
        }

        set_phase_costs(false);
        for (int restart = 0; restart < 3; ++restart) {
            StepResult r = run_phase();
            if (r == StepResult::Unbounded) {
                sol.status = LpStatus::Unbounded;
                sol.pivots = pivots_;
                return true;
            }
            sol.status = LpStatus::Optimal;
            if (recertify(sol)) return true;
            if (!rebuild_from_basis()) return false;
            bland_ = true;
        }
        return false;
    }
};

}  // namespace

LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper, const SolverTolerances& tol) {
    SimplexSolver solver(model, lower, upper, tol);
    return solver.solve();
}

LpSolution solve_lp(const MilpModel& model, const SolverTolerances& tol) {
    return solve_lp(model, model.lower, model.upper, tol);
}

DualityReport check_duality(const MilpModel& model, const std::vector<double>& lower,
                            const std::vector<double>& upper, const LpSolution& sol,
                            const SolverTolerances& tol) {
    DualityReport rep;
    const int n = model.columns;
    const int m = static_cast<int>(model.rows.size());
    double rhs_scale = 0.0;
    for (const auto& row : model.rows) rhs_scale = std::max(rhs_scale, std::abs(row.rhs));
    const double feas_eps = tol.feasibility * (1.0 + rhs_scale);

    for (int i = 0; i < m; ++i) {
        const auto& row = model.rows[i];
        double act = row_activity(row, sol.primal);
        double viol = 0.0;
        switch (row.sense) {
            case RowSense::Le: viol = act - row.rhs; break;
            case RowSense::Ge: viol = row.rhs - act; break;
            case RowSense::Eq: viol = std::abs(act - row.rhs); break;
        }
        if (viol > rep.row_residual) {
            rep.row_residual = viol;
            rep.worst = "row " + std::to_string(i) + " (" + row.tag + ")";
        }
    }
    for (int j = 0; j < n; ++j) {
        double v = std::max(lower[j] - sol.primal[j], sol.primal[j] - upper[j]);
        if (v > rep.bound_residual) {
            rep.bound_residual = v;
            if (v > rep.row_residual) rep.worst = "bound of column " + std::to_string(j);
        }
    }

    std::vector<double> red(model.objective.begin(), model.objective.end());
    for (int i = 0; i < m; ++i) {
        double y = sol.dual_rows[i];
        if (y == 0.0) continue;
        for (const auto& [c, v] : model.rows[i].terms) red[c] -= y * v;
    }

    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) {
        double y = sol.dual_rows[i];
        switch (model.rows[i].sense) {
            case RowSense::Le: rep.dual_violation = std::max(rep.dual_violation, y); break;
            case RowSense::Ge: rep.dual_violation = std::max(rep.dual_violation, -y); break;
            case RowSense::Eq: break;
        }
        dual_obj += y * model.rows[i].rhs;
    }
    for (int j = 0; j < n; ++j) {
        double d = red[j];
        if (d > 0) {
            if (!std::isfinite(lower[j]))
                rep.dual_violation = std::max(rep.dual_violation, d);
            else
                dual_obj += d * lower[j];
        } else if (d < 0) {
            if (!std::isfinite(upper[j]))
                rep.dual_violation = std::max(rep.dual_violation, -d);
            else
                dual_obj += d * upper[j];
        }
    }

    for (int i = 0; i < m; ++i) {
        const auto& row = model.rows[i];
        if (row.sense == RowSense::Eq) continue;
        double slack = row.rhs - row_activity(row, sol.primal);
        rep.comp_slackness = std::max(rep.comp_slackness, std::abs(sol.dual_rows[i] * slack));
    }
    for (int j = 0; j < n; ++j) {
        double d = red[j];
        if (d > 0 && std::isfinite(lower[j]))
            rep.comp_slackness =
                std::max(rep.comp_slackness, std::abs(d * (sol.primal[j] - lower[j])));
        if (d < 0 && std::isfinite(upper[j]))
            rep.comp_slackness =
                std::max(rep.comp_slackness, std::abs(d * (upper[j] - sol.primal[j])));
    }

    rep.gap = std::abs(sol.objective - dual_obj);
    const double gap_eps = tol.duality_gap * (1.0 + std::abs(sol.objective));
    const double dual_eps = 1e-7 * (1.0 + rhs_scale);
    rep.pass = rep.row_residual <= feas_eps && rep.bound_residual <= feas_eps &&
               rep.dual_violation <= dual_eps && rep.gap <= gap_eps &&
               rep.comp_slackness <= 1e-6 * (1.0 + std::abs(sol.objective));
    return rep;
}

DualityReport check_duality(const MilpModel& model, const LpSolution& sol,
                            const SolverTolerances& tol) {
    return check_duality(model, model.lower, model.upper, sol, tol);
}

double infeasibility_margin(const MilpModel& model, const std::vector<double>& lower,
                            const std::vector<double>& upper,
                            const std::vector<double>& farkas) {
    const int m = static_cast<int>(model.rows.size());
    const int n = model.columns;
    for (int i = 0; i < m; ++i) {
        if (model.rows[i].sense == RowSense::Le && farkas[i] > 1e-9) return 0.0;
        if (model.rows[i].sense == RowSense::Ge && farkas[i] < -1e-9) return 0.0;
    }
    std::vector<double> g(n, 0.0);
    double yb = 0.0;
    for (int i = 0; i < m; ++i) {
        yb += farkas[i] * model.rows[i].rhs;
        for (const auto& [c, v] : model.rows[i].terms) g[c] += farkas[i] * v;
    }
    // Any feasible x satisfies y'Ax >= y'b; if even the box maximum of
    // y'Ax falls short, the system is empty.
    double box_max = 0.0;
    for (int j = 0; j < n; ++j) {
        if (g[j] > 0) {
            if (!std::isfinite(upper[j])) return 0.0;
            box_max += g[j] * upper[j];
        } else if (g[j] < 0) {
            if (!std::isfinite(lower[j])) return 0.0;
            box_max += g[j] * lower[j];
        }
    }
    return std::max(0.0, yb - box_max);
}

}  // namespace quadel
