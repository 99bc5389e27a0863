#pragma once

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "quadel/milp.hpp"
#include "quadel/pdp.hpp"
#include "quadel/route.hpp"

namespace testutil {

/// Runs a command, returns its exit code; stdout+stderr captured to out.
inline int run_command(const std::string& cmd, std::string* out = nullptr) {
    std::string tmp = "/tmp/quadel_cmd_out_" + std::to_string(::getpid()) + ".txt";
    int rc = std::system((cmd + " > " + tmp + " 2>&1").c_str());
    if (out) {
        std::ifstream in(tmp);
        std::ostringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    std::remove(tmp.c_str());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

inline std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

/// Worst violation of any row at the given point (0 when all rows hold).
inline double max_row_violation(const quadel::MilpModel& model,
                                const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& row : model.rows) {
        double act = quadel::row_activity(row, x);
        double v = 0.0;
        switch (row.sense) {
            case quadel::RowSense::Le: v = act - row.rhs; break;
            case quadel::RowSense::Ge: v = row.rhs - act; break;
            case quadel::RowSense::Eq: v = std::abs(act - row.rhs); break;
        }
        worst = std::max(worst, v);
    }
    return worst;
}

/// Maps a feasible plan onto the model's variable vector: x legs, q from
/// leg cargo, t as legs remaining, z as the remaining battery consumption
/// of the leg's charge segment (segments reset at stations), T as the
/// makespan.
inline std::vector<double> assignment_from_plan(const quadel::PdpInstance& inst,
                                                const quadel::VariableLayout& layout,
                                                const quadel::RoutePlan& plan) {
    using namespace quadel;
    std::vector<double> x(layout.columns(), 0.0);
    for (const auto& route : plan.routes) {
        const auto& quad = inst.quadcopters[route.quad_index];
        const auto& legs = route.legs;
        // Battery segments end at a station arrival or at the terminal.
        std::vector<double> z(legs.size(), 0.0);
        double acc = 0.0;
        for (int i = static_cast<int>(legs.size()) - 1; i >= 0; --i) {
            if (inst.node_kind(legs[i].to_node) == NodeKind::Vehicle) acc = 0.0;
            z[i] = acc;
            acc += legs[i].length / quad.max_range;
        }
        for (size_t i = 0; i < legs.size(); ++i) {
            const auto& leg = legs[i];
            x[layout.index(VarFamily::X, route.quad_index, leg.from_node, leg.to_node)] = 1.0;
            x[layout.index(VarFamily::Z, route.quad_index, leg.from_node, leg.to_node)] = z[i];
            x[layout.index(VarFamily::TLEG, route.quad_index, leg.from_node, leg.to_node)] =
                static_cast<double>(legs.size() - 1 - i);
            for (const auto& [item, count] : leg.cargo)
                x[layout.index(VarFamily::Q, inst.item_index(item), leg.from_node,
                               leg.to_node)] += count;
        }
    }
    x[layout.makespan_column()] = quadel::makespan(plan);
    return x;
}

inline int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace testutil
