#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadel/milp.hpp"

namespace quadel {

struct SolverTolerances {
    double feasibility = 1e-9;   // scaled by (1 + max |rhs|)
    double integrality = 1e-6;
    double gap = 1e-6;           // branch-and-bound optimality gap
    double duality_gap = 1e-8;   // scaled by (1 + |objective|)
    int stall_pivots = 64;       // degenerate pivots before Bland's rule engages
    std::size_t node_limit = 1'000'000;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    std::vector<double> primal;         // structural columns
    std::vector<double> dual_rows;      // one multiplier per row
    std::vector<double> reduced_costs;  // structural columns
    double objective = 0.0;
    std::vector<double> farkas;  // infeasibility certificate (row multipliers)
    std::size_t pivots = 0;
};

/// Two-phase primal simplex over bounded variables. Dantzig pricing with
/// Bland's rule after a degeneracy stall; the returned basis is
/// re-certified against the original data before the solution is handed
/// back.
LpSolution solve_lp(const MilpModel& model, const SolverTolerances& tol);

/// Same, with per-node bound overrides (used by branch and bound).
LpSolution solve_lp(const MilpModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper, const SolverTolerances& tol);

struct DualityReport {
    double row_residual = 0.0;       // worst primal row violation
    double bound_residual = 0.0;     // worst primal bound violation
    double dual_violation = 0.0;     // worst dual sign/feasibility violation
    double comp_slackness = 0.0;     // worst complementary slackness product
    double gap = 0.0;                // |primal objective - dual objective|
    bool pass = false;
    std::string worst;               // description of the worst violation
};

/// Independent certificate check: recomputes residuals, reduced costs and
/// the dual objective from the raw model data and the solution vectors.
DualityReport check_duality(const MilpModel& model, const LpSolution& sol,
                            const SolverTolerances& tol);
DualityReport check_duality(const MilpModel& model, const std::vector<double>& lower,
                            const std::vector<double>& upper, const LpSolution& sol,
                            const SolverTolerances& tol);

/// Verifies a Farkas-type certificate returned for an infeasible model:
/// with sense-valid multipliers, the certified lower bound on y'Ax over
/// the variable box exceeds y'b. Returns the positive margin (0 if the
/// certificate does not prove infeasibility).
double infeasibility_margin(const MilpModel& model, const std::vector<double>& lower,
                            const std::vector<double>& upper,
                            const std::vector<double>& farkas);

}  // namespace quadel
