#include "quadel/branch_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

namespace quadel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BoundChange {
    int column;
    bool is_upper;
    double value;
};

struct Node {
    std::size_t id = 0;
    double bound = -kInf;  // parent LP objective (lower bound, minimization)
    std::vector<BoundChange> changes;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // best bound first
        return a.id > b.id;                                // then creation order
    }
};

/// Most fractional masked column; binaries win equal-fractionality ties,
/// the lowest index wins the rest. -1 when integral.
int pick_branch_column(const MilpModel& model, const std::vector<double>& x,
                       double int_tol) {
    int best = -1;
    double best_frac = 0.0;
    bool best_binary = false;
    for (int j = 0; j < model.columns; ++j) {
        if (model.kind[j] == ColKind::Continuous) continue;
        double frac = std::abs(x[j] - std::round(x[j]));
        if (frac <= int_tol) continue;
        bool binary = model.kind[j] == ColKind::Binary;
        bool take = best < 0 || frac > best_frac + 1e-12 ||
                    (frac >= best_frac - 1e-12 && binary && !best_binary);
        if (take) {
            best = j;
            best_frac = frac;
            best_binary = binary;
        }
    }
    return best;
}

}  // namespace

MipSolution branch_and_bound(const MilpModel& model, const SolverTolerances& tol) {
    auto t0 = std::chrono::steady_clock::now();
    MipSolution out;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::size_t next_id = 0;
    open.push(Node{next_id++, -kInf, {}});

    double incumbent_obj = kInf;
    std::vector<double> incumbent;

    std::vector<double> lower, upper;

    auto prune_eps = [&] { return tol.gap * (1.0 + std::abs(incumbent_obj)); };

    while (!open.empty()) {
        if (out.node_count >= tol.node_limit)
            throw NodeLimitExceeded("branch-and-bound node limit reached");
        Node node = open.top();
        open.pop();

        if (node.bound >= incumbent_obj - prune_eps()) continue;

        lower = model.lower;
        upper = model.upper;
        for (const auto& ch : node.changes) {
            if (ch.is_upper)
                upper[ch.column] = std::min(upper[ch.column], ch.value);
            else
                lower[ch.column] = std::max(lower[ch.column], ch.value);
        }

        ++out.node_count;
        LpSolution lp = solve_lp(model, lower, upper, tol);
        out.lp_pivots += lp.pivots;

        if (lp.status == LpStatus::Infeasible) {
            out.bound_history.push_back(incumbent_obj);
            continue;
        }
        if (lp.status == LpStatus::Unbounded)
            throw NumericalFailure("LP relaxation unbounded inside branch-and-bound");

        out.bound_history.push_back(std::min(incumbent_obj, lp.objective));
        if (lp.objective >= incumbent_obj - prune_eps()) continue;

        int branch_col = pick_branch_column(model, lp.primal, tol.integrality);
        if (branch_col < 0) {
            if (lp.objective < incumbent_obj - 1e-12) {
                incumbent_obj = lp.objective;
                incumbent = lp.primal;
                for (int j = 0; j < model.columns; ++j)
                    if (model.kind[j] != ColKind::Continuous)
                        incumbent[j] = std::round(incumbent[j]);
            }
            continue;
        }

        double v = lp.primal[branch_col];
        Node down{next_id++, lp.objective, node.changes};
        down.changes.push_back(BoundChange{branch_col, true, std::floor(v)});
        Node up{next_id++, lp.objective, node.changes};
        up.changes.push_back(BoundChange{branch_col, false, std::ceil(v)});
        open.push(std::move(down));
        open.push(std::move(up));
    }

    auto t1 = std::chrono::steady_clock::now();
    out.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (std::isfinite(incumbent_obj)) {
        out.status = MipStatus::Optimal;
        out.objective = incumbent_obj;
        out.incumbent = std::move(incumbent);
    } else {
        out.status = MipStatus::Infeasible;
    }
    return out;
}

}  // namespace quadel
