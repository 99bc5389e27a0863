#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadel/branch_bound.hpp"
#include "quadel/milp.hpp"
#include "quadel/pdp.hpp"

namespace quadel {

/// One directed edge traversal. Cargo is what is on board after leaving
/// the source node; charge and legs_remaining are the solver's battery
/// and leg-count values for the edge.
struct Leg {
    int from_node = 0;
    int to_node = 0;
    Vec2 from_xy, to_xy;
    double length = 0.0;
    std::map<std::string, int> cargo;
    double charge = 0.0;
    double legs_remaining = 0.0;
};

struct QuadRoute {
    std::string quad_id;
    int quad_index = 0;
    Vec2 start;
    std::vector<Leg> legs;
};

struct RoutePlan {
    std::vector<QuadRoute> routes;
    double makespan = 0.0;
};

struct DisconnectedRoute : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OracleLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximum over quadcopters of the summed leg lengths.
double makespan(const RoutePlan& plan);

/// Orders the x = 1 edges of an optimal solution into per-quad walks.
/// Departures from a multi-visit node are taken in descending
/// legs-remaining order. Throws DisconnectedRoute if the edges of some
/// quad do not form a walk from its start.
RoutePlan extract_routes(const PdpInstance& inst, const VariableLayout& layout,
                         const MipSolution& mip);

struct PlanViolation {
    std::string kind;  // chain, request, cargo, capacity, battery, edge_reuse
    int quad = -1;
    int leg = -1;
    std::string message;
};

struct PlanReport {
    std::vector<PlanViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Re-derives every plan-level guarantee from the instance: chained
/// routes, each request served exactly once with its exact demand, cargo
/// weight within capacity on every leg, battery never negative with a
/// full recharge on station arrival, and no directed edge used twice.
PlanReport validate_plan(const PdpInstance& inst, const RoutePlan& plan);

/// Exhaustive search over per-quad node sequences (requests appear once
/// globally, stations may be revisited on fresh edges, every quad moves
/// at least once). Returns the minimal-makespan feasible plan, ties
/// broken by the lexicographically smallest leg sequence, or nullopt when
/// no assignment is feasible. Instances larger than 4 requests / 2 quads
/// are refused with OracleLimitExceeded.
std::optional<RoutePlan> brute_force_solve(const PdpInstance& inst, int max_legs);

/// Default search depth per quad.
int oracle_default_max_legs(const PdpInstance& inst);

}  // namespace quadel
