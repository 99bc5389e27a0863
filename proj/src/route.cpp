#include "quadel/route.hpp"

#include <algorithm>
#include <cmath>

namespace quadel {

double makespan(const RoutePlan& plan) {
    double best = 0.0;
    for (const auto& route : plan.routes) {
        double len = 0.0;
        for (const auto& leg : route.legs) len += leg.length;
        best = std::max(best, len);
    }
    return best;
}

RoutePlan extract_routes(const PdpInstance& inst, const VariableLayout& layout,
                         const MipSolution& mip) {
    RoutePlan plan;
    const int n = inst.node_count();
    const auto& x = mip.incumbent;

    for (size_t h = 0; h < inst.quadcopters.size(); ++h) {
        QuadRoute route;
        route.quad_id = inst.quadcopters[h].id;
        route.quad_index = static_cast<int>(h);
        route.start = inst.quadcopters[h].start_location;

        struct Edge {
            int from, to;
            double tval, zval;
            bool used = false;
        };
        std::vector<Edge> edges;
        for (int from = 0; from < n; ++from)
            for (int to = 0; to < n; ++to) {
                double xv = x[layout.index(VarFamily::X, static_cast<int>(h), from, to)];
                if (xv < 0.5) continue;
                edges.push_back(Edge{
                    from, to,
                    x[layout.index(VarFamily::TLEG, static_cast<int>(h), from, to)],
                    x[layout.index(VarFamily::Z, static_cast<int>(h), from, to)]});
            }

        int cur = inst.quad_start_node(static_cast<int>(h));
        size_t remaining = edges.size();
        while (remaining > 0) {
            int pick = -1;
            for (size_t i = 0; i < edges.size(); ++i) {
                if (edges[i].used || edges[i].from != cur) continue;
                if (pick < 0 || edges[i].tval > edges[pick].tval + 1e-9 ||
                    (std::abs(edges[i].tval - edges[pick].tval) <= 1e-9 &&
                     edges[i].to < edges[pick].to))
                    pick = static_cast<int>(i);
            }
            if (pick < 0)
                throw DisconnectedRoute("quadcopter '" + route.quad_id +
                                        "': solution edges do not form a walk from its start");
            Edge& e = edges[pick];
            e.used = true;
            --remaining;

            Leg leg;
            leg.from_node = e.from;
            leg.to_node = e.to;
            leg.from_xy = inst.node_location(e.from);
            leg.to_xy = inst.node_location(e.to);
            leg.length = node_distance(inst, e.from, e.to);
            leg.charge = e.zval;
            leg.legs_remaining = e.tval;
            for (size_t s = 0; s < inst.items.size(); ++s) {
                double qv =
                    x[layout.index(VarFamily::Q, static_cast<int>(s), e.from, e.to)];
                int count = static_cast<int>(std::llround(qv));
                if (count != 0) leg.cargo[inst.items[s].id] = count;
            }
            route.legs.push_back(std::move(leg));
            cur = e.to;
        }
        plan.routes.push_back(std::move(route));
    }
    plan.makespan = makespan(plan);
    return plan;
}

namespace {

double cargo_weight(const PdpInstance& inst, const std::map<std::string, int>& cargo) {
    double w = 0.0;
    for (const auto& [id, count] : cargo) w += count * inst.item_weight(id);
    return w;
}

}  // namespace

PlanReport validate_plan(const PdpInstance& inst, const RoutePlan& plan) {
    PlanReport rep;
    auto flag = [&](std::string kind, int quad, int leg, std::string msg) {
        rep.violations.push_back(PlanViolation{std::move(kind), quad, leg, std::move(msg)});
    };

    std::map<std::pair<int, int>, int> edge_users;
    std::vector<int> arrivals(inst.requests.size(), 0);

    for (const auto& route : plan.routes) {
        const auto& quad = inst.quadcopters[route.quad_index];
        int expected = inst.quad_start_node(route.quad_index);
        double charge = quad.initial_charge;

        for (size_t li = 0; li < route.legs.size(); ++li) {
            const auto& leg = route.legs[li];
            if (leg.from_node != expected)
                flag("chain", route.quad_index, static_cast<int>(li),
                     "leg does not continue from the previous node");
            expected = leg.to_node;

            auto key = std::make_pair(leg.from_node, leg.to_node);
            if (++edge_users[key] == 2)
                flag("edge_reuse", route.quad_index, static_cast<int>(li),
                     "directed edge used more than once in the plan");

            double w = cargo_weight(inst, leg.cargo);
            if (w > quad.capacity + 1e-9)
                flag("capacity", route.quad_index, static_cast<int>(li),
                     "cargo weight " + std::to_string(w) + " exceeds capacity " +
                         std::to_string(quad.capacity));

            charge -= leg.length / quad.max_range;
            if (charge < -1e-9)
                flag("battery", route.quad_index, static_cast<int>(li),
                     "battery depleted mid-route");
            if (inst.node_kind(leg.to_node) == NodeKind::Vehicle) charge = 1.0;
            if (inst.node_kind(leg.to_node) == NodeKind::Request)
                ++arrivals[inst.node_member(leg.to_node)];
        }
    }

    // Demand satisfaction: the single visitor's cargo drop/rise across the
    // request node must equal the signed demand.
    for (size_t r = 0; r < inst.requests.size(); ++r) {
        if (arrivals[r] != 1) {
            flag("request", -1, -1,
                 "request '" + inst.requests[r].id + "' visited " +
                     std::to_string(arrivals[r]) + " times (want exactly 1)");
            continue;
        }
        int node = inst.request_node(static_cast<int>(r));
        for (const auto& route : plan.routes) {
            for (size_t li = 0; li < route.legs.size(); ++li) {
                if (route.legs[li].to_node != node) continue;
                const auto& in_cargo = route.legs[li].cargo;
                std::map<std::string, int> out_cargo;
                if (li + 1 < route.legs.size() && route.legs[li + 1].from_node == node)
                    out_cargo = route.legs[li + 1].cargo;
                for (const auto& item : inst.items) {
                    auto get = [&](const std::map<std::string, int>& m) {
                        auto it = m.find(item.id);
                        return it == m.end() ? 0 : it->second;
                    };
                    int served = get(in_cargo) - get(out_cargo);
                    int want = 0;
                    auto dit = inst.requests[r].demand.find(item.id);
                    if (dit != inst.requests[r].demand.end()) want = dit->second;
                    if (served != want)
                        flag("cargo", route.quad_index, static_cast<int>(li),
                             "request '" + inst.requests[r].id + "' received " +
                                 std::to_string(served) + " of '" + item.id + "', want " +
                                 std::to_string(want));
                }
            }
        }
    }
    return rep;
}

int oracle_default_max_legs(const PdpInstance& inst) {
    return 2 * static_cast<int>(inst.requests.size()) +
           static_cast<int>(inst.vehicles.size());
}

namespace {

/// Exhaustive route search. Sequences are per-quad node lists; feasibility
/// mirrors the optimizer's semantics: cargo departs as loaded, changes
/// only at requests, surplus may be left at stations, pickups force the
/// route onward until a station (or an exactly-emptying request) ends it.
class OracleSearch {
public:
    OracleSearch(const PdpInstance& inst, int max_legs)
        : inst_(inst), n_(inst.node_count()), max_legs_(max_legs) {
        used_edge_.assign(static_cast<size_t>(n_) * n_, false);
        request_used_.assign(inst_.requests.size(), false);
        sequences_.resize(inst_.quadcopters.size());
        route_len_.assign(inst_.quadcopters.size(), 0.0);
    }

    std::optional<RoutePlan> run() {
        search_quad(0);
        if (!found_) return std::nullopt;
        return best_plan_;
    }

private:
    const PdpInstance& inst_;
    int n_;
    int max_legs_;

    std::vector<char> used_edge_;
    std::vector<char> request_used_;
    std::vector<std::vector<int>> sequences_;  // chosen node sequence per quad
    std::vector<double> route_len_;

    bool found_ = false;
    double best_makespan_ = 0.0;
    std::vector<int> best_key_;
    RoutePlan best_plan_;

    bool edge_used(int a, int b) const {
        return used_edge_[static_cast<size_t>(a) * n_ + b] != 0;
    }
    void set_edge(int a, int b, bool v) {
        used_edge_[static_cast<size_t>(a) * n_ + b] = v ? 1 : 0;
    }

    void search_quad(size_t h) {
        if (h == inst_.quadcopters.size()) {
            for (bool used : request_used_)
                if (!used) return;
            consider_candidate();
            return;
        }
        int start = inst_.quad_start_node(static_cast<int>(h));
        extend(h, start, inst_.quadcopters[h].initial_charge, 0);
    }

    void extend(size_t h, int cur, double charge, int depth) {
        if (depth > 0 && sequence_feasible(h)) search_quad(h + 1);
        if (depth >= max_legs_) return;

        const auto& quad = inst_.quadcopters[h];
        for (int node = 0; node < n_; ++node) {
            if (node == cur) continue;
            if (inst_.node_kind(node) == NodeKind::QuadStart) continue;
            if (edge_used(cur, node)) continue;
            if (inst_.node_kind(node) == NodeKind::Request &&
                request_used_[inst_.node_member(node)])
                continue;
            double len = node_distance(inst_, cur, node);
            double next_charge = charge - len / quad.max_range;
            if (next_charge < -1e-9) continue;
            double new_len = route_len_[h] + len;
            if (found_ && new_len > best_makespan_ + 1e-9) continue;
            if (inst_.node_kind(node) == NodeKind::Vehicle) next_charge = 1.0;

            set_edge(cur, node, true);
            bool was_request = inst_.node_kind(node) == NodeKind::Request;
            if (was_request) request_used_[inst_.node_member(node)] = true;
            sequences_[h].push_back(node);
            route_len_[h] = new_len;

            extend(h, node, next_charge, depth + 1);

            route_len_[h] = new_len - len;
            sequences_[h].pop_back();
            if (was_request) request_used_[inst_.node_member(node)] = false;
            set_edge(cur, node, false);
        }
    }

    /// Simulates cargo along the quad's chosen sequence: serve demands at
    /// requests, keep only future-needed items past each station, and
    /// accept only terminals that leave nothing stranded on board.
    bool sequence_feasible(size_t h, std::vector<std::map<std::string, int>>* out = nullptr) const {
        const auto& quad = inst_.quadcopters[h];
        const auto& seq = sequences_[h];
        std::map<std::string, int> cargo = quad.initial_cargo;

        for (size_t k = 0; k < seq.size(); ++k) {
            if (cargo_weight(inst_, cargo) > quad.capacity + 1e-9) return false;
            if (out) out->push_back(cargo);
            int node = seq[k];
            if (inst_.node_kind(node) == NodeKind::Request) {
                const auto& req = inst_.requests[inst_.node_member(node)];
                for (const auto& [item, d] : req.demand) {
                    if (d > 0) {
                        if (cargo[item] < d) return false;
                        cargo[item] -= d;
                        if (cargo[item] == 0) cargo.erase(item);
                    } else {
                        cargo[item] += -d;
                    }
                }
            } else {
                // Station: drop whatever later deliveries do not need.
                std::map<std::string, int> needed;
                for (size_t k2 = k + 1; k2 < seq.size(); ++k2) {
                    if (inst_.node_kind(seq[k2]) != NodeKind::Request) continue;
                    const auto& req = inst_.requests[inst_.node_member(seq[k2])];
                    for (const auto& [item, d] : req.demand)
                        if (d > 0) needed[item] += d;
                }
                for (auto it = cargo.begin(); it != cargo.end();) {
                    int keep = std::min(it->second, needed[it->first]);
                    if (keep == 0)
                        it = cargo.erase(it);
                    else
                        (it++)->second = keep;
                }
            }
        }

        int last = seq.back();
        if (inst_.node_kind(last) == NodeKind::Request && !cargo.empty()) return false;
        return true;
    }

    void consider_candidate() {
        double span = 0.0;
        for (double len : route_len_) span = std::max(span, len);

        std::vector<int> key;
        for (const auto& seq : sequences_) {
            key.insert(key.end(), seq.begin(), seq.end());
            key.push_back(-1);
        }

        if (found_) {
            if (span > best_makespan_ + 1e-9) return;
            bool tie = span >= best_makespan_ - 1e-9;
            if (tie && !(key < best_key_)) return;
        }
        found_ = true;
        best_makespan_ = span;
        best_key_ = std::move(key);
        best_plan_ = build_plan();
    }

    RoutePlan build_plan() const {
        RoutePlan plan;
        for (size_t h = 0; h < inst_.quadcopters.size(); ++h) {
            const auto& quad = inst_.quadcopters[h];
            QuadRoute route;
            route.quad_id = quad.id;
            route.quad_index = static_cast<int>(h);
            route.start = quad.start_location;

            std::vector<std::map<std::string, int>> cargo_per_leg;
            sequence_feasible(h, &cargo_per_leg);

            const auto& seq = sequences_[h];
            double charge = quad.initial_charge;
            int prev = inst_.quad_start_node(static_cast<int>(h));
            for (size_t k = 0; k < seq.size(); ++k) {
                Leg leg;
                leg.from_node = prev;
                leg.to_node = seq[k];
                leg.from_xy = inst_.node_location(prev);
                leg.to_xy = inst_.node_location(seq[k]);
                leg.length = node_distance(inst_, prev, seq[k]);
                leg.cargo = cargo_per_leg[k];
                charge -= leg.length / quad.max_range;
                leg.charge = charge;
                if (inst_.node_kind(seq[k]) == NodeKind::Vehicle) charge = 1.0;
                leg.legs_remaining = static_cast<double>(seq.size() - 1 - k);
                route.legs.push_back(std::move(leg));
                prev = seq[k];
            }
            plan.routes.push_back(std::move(route));
        }
        plan.makespan = makespan(plan);
        return plan;
    }
};

}  // namespace

std::optional<RoutePlan> brute_force_solve(const PdpInstance& inst, int max_legs) {
    if (inst.requests.size() > 4 || inst.quadcopters.size() > 2)
        throw OracleLimitExceeded("oracle accepts at most 4 requests and 2 quadcopters");
    if (max_legs > oracle_default_max_legs(inst))
        throw OracleLimitExceeded("max_legs exceeds the 2|R|+|V| route bound");
    if (inst.quadcopters.empty()) {
        if (!inst.requests.empty()) return std::nullopt;
        return RoutePlan{};  // vacuously complete
    }
    if (max_legs <= 0) return std::nullopt;
    OracleSearch search(inst, max_legs);
    return search.run();
}

}  // namespace quadel
