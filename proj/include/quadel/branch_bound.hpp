#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "quadel/simplex.hpp"

namespace quadel {

struct NodeLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MipStatus { Optimal, Infeasible };

struct MipSolution {
    MipStatus status = MipStatus::Infeasible;
    std::vector<double> incumbent;
    double objective = 0.0;
    std::size_t node_count = 0;
    std::size_t lp_pivots = 0;
    std::vector<double> bound_history;  // best bound after each explored node
    double wall_seconds = 0.0;
};

/// Best-bound branch and bound over the model's integrality mask
/// (binary x columns, integer q columns). Branching picks the most
/// fractional column, binaries before general integers at equal
/// fractionality, then the lowest index; node selection is best bound
/// with creation order breaking ties. Fully deterministic.
MipSolution branch_and_bound(const MilpModel& model, const SolverTolerances& tol);

}  // namespace quadel
