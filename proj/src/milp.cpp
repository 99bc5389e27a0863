#include "quadel/milp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quadel {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

VariableLayout::VariableLayout(const PdpInstance& inst)
    : nodes_(inst.node_count()),
      quads_(static_cast<int>(inst.quadcopters.size())),
      items_(static_cast<int>(inst.items.size())) {
    total_columns_ = (3 * quads_ + items_) * nodes_ * nodes_ + 1;
}

int VariableLayout::block_base(VarFamily family, int owner) const {
    const int block = nodes_ * nodes_;
    switch (family) {
        case VarFamily::X: return owner * block;
        case VarFamily::Q: return (quads_ + owner) * block;
        case VarFamily::Z: return (quads_ + items_ + owner) * block;
        case VarFamily::TLEG: return (2 * quads_ + items_ + owner) * block;
    }
    throw UnknownVariable("bad family");
}

int VariableLayout::index(const VarKey& key) const {
    const int owners = (key.family == VarFamily::Q) ? items_ : quads_;
    if (key.owner < 0 || key.owner >= owners || key.from < 0 || key.from >= nodes_ ||
        key.to < 0 || key.to >= nodes_) {
        throw UnknownVariable("variable key outside layout domain");
    }
    // Destination-major: the source index varies fastest.
    return block_base(key.family, key.owner) + key.to * nodes_ + key.from;
}

std::optional<VarKey> VariableLayout::key(int column) const {
    if (column < 0 || column >= total_columns_)
        throw UnknownVariable("column outside layout");
    if (column == makespan_column()) return std::nullopt;
    const int block = nodes_ * nodes_;
    int b = column / block;
    int within = column % block;
    VarKey k;
    k.from = within % nodes_;
    k.to = within / nodes_;
    if (b < quads_) {
        k.family = VarFamily::X;
        k.owner = b;
    } else if (b < quads_ + items_) {
        k.family = VarFamily::Q;
        k.owner = b - quads_;
    } else if (b < 2 * quads_ + items_) {
        k.family = VarFamily::Z;
        k.owner = b - quads_ - items_;
    } else {
        k.family = VarFamily::TLEG;
        k.owner = b - 2 * quads_ - items_;
    }
    return k;
}

std::string VariableLayout::column_name(int column) const {
    auto k = key(column);
    if (!k) return "T";
    char f = 'x';
    switch (k->family) {
        case VarFamily::X: f = 'x'; break;
        case VarFamily::Q: f = 'q'; break;
        case VarFamily::Z: f = 'z'; break;
        case VarFamily::TLEG: f = 't'; break;
    }
    std::ostringstream os;
    os << f << '(' << (k->from + 1) << ',' << (k->to + 1) << ")^" << (k->owner + 1);
    return os.str();
}

VariableLayout build_layout(const PdpInstance& inst) { return VariableLayout(inst); }

namespace {

class ModelBuilder {
public:
    ModelBuilder(const PdpInstance& inst, bool with_cuts)
        : inst_(inst), layout_(inst), with_cuts_(with_cuts) {
        n_ = layout_.nodes();
        model_.layout = layout_;
        model_.columns = layout_.columns();
        model_.objective.assign(model_.columns, 0.0);
        model_.lower.assign(model_.columns, 0.0);
        model_.upper.assign(model_.columns, kInf);
        model_.kind.assign(model_.columns, ColKind::Continuous);
    }

    MilpModel build() {
        set_bounds_and_objective();
        start_site_rows();
        battery_bound_rows();
        type0_single_departure();
        type1_initial_cargo();
        type2_edge_once();
        type3_demand();
        type4_single_visit();
        type5_capacity();
        type6_request_flow();
        type7_station_flow();
        type8_battery_edge();
        type9_battery_chain();
        type10_leg_bigm();
        type11_leg_chain();
        type12_makespan();
        type13_must_move();
        station_item_rows();
        if (with_cuts_) launch_cuts();
        return std::move(model_);
    }

private:
    const PdpInstance& inst_;
    VariableLayout layout_;
    bool with_cuts_;
    int n_ = 0;
    MilpModel model_;

    int col(VarFamily f, int owner, int from, int to) const {
        return layout_.index(f, owner, from, to);
    }
    double dist(int a, int b) const { return node_distance(inst_, a, b); }

    LinearRow& add_row(std::string tag, RowSense sense, double rhs) {
        model_.rows.push_back(LinearRow{std::move(tag), sense, rhs, {}});
        return model_.rows.back();
    }

    int quads() const { return static_cast<int>(inst_.quadcopters.size()); }
    int items() const { return static_cast<int>(inst_.items.size()); }
    int reqs() const { return static_cast<int>(inst_.requests.size()); }
    int vehicles() const { return static_cast<int>(inst_.vehicles.size()); }

    /// Units of item s present anywhere in the system: initial cargo plus
    /// everything pickups can add. Upper-bounds every q column.
    int item_supply(int s) const {
        const std::string& id = inst_.items[s].id;
        int total = 0;
        for (const auto& q : inst_.quadcopters) {
            auto it = q.initial_cargo.find(id);
            if (it != q.initial_cargo.end()) total += it->second;
        }
        for (const auto& r : inst_.requests) {
            auto it = r.demand.find(id);
            if (it != r.demand.end() && it->second < 0) total += -it->second;
        }
        return total;
    }

    int demand_of(int request, int item) const {
        auto it = inst_.requests[request].demand.find(inst_.items[item].id);
        return it == inst_.requests[request].demand.end() ? 0 : it->second;
    }

    int initial_cargo_of(int quad, int item) const {
        auto it = inst_.quadcopters[quad].initial_cargo.find(inst_.items[item].id);
        return it == inst_.quadcopters[quad].initial_cargo.end() ? 0 : it->second;
    }

    void set_bounds_and_objective() {
        for (int h = 0; h < quads(); ++h)
            for (int to = 0; to < n_; ++to)
                for (int from = 0; from < n_; ++from) {
                    int c = col(VarFamily::X, h, from, to);
                    model_.upper[c] = 1.0;
                    model_.kind[c] = ColKind::Binary;
                }
        for (int s = 0; s < items(); ++s) {
            double cap = item_supply(s);
            for (int to = 0; to < n_; ++to)
                for (int from = 0; from < n_; ++from) {
                    int c = col(VarFamily::Q, s, from, to);
                    model_.upper[c] = cap;
                    model_.kind[c] = ColKind::Integer;
                }
        }
        // z and t keep [0, inf) continuous bounds; their rows cap them.
        model_.objective[layout_.makespan_column()] = 1.0;  // minimize T
    }

    // No self-loops, nobody flies into any quadcopter start, and only the
    // owning quadcopter may leave its start site.
    void start_site_rows() {
        for (int h = 0; h < quads(); ++h)
            for (int v = 0; v < n_; ++v) {
                auto& row = add_row("self_loop", RowSense::Le, 0.0);
                row.terms.emplace_back(col(VarFamily::X, h, v, v), 1.0);
            }
        for (int owner = 0; owner < quads(); ++owner)
            for (int h = 0; h < quads(); ++h) {
                int start = inst_.quad_start_node(h);
                for (int u = 0; u < n_; ++u) {
                    auto& row = add_row("no_arrival_at_start", RowSense::Le, 0.0);
                    row.terms.emplace_back(col(VarFamily::X, owner, u, start), 1.0);
                }
            }
        for (int h = 0; h < quads(); ++h)
            for (int other = 0; other < quads(); ++other) {
                if (other == h) continue;
                int start = inst_.quad_start_node(h);
                for (int u = 0; u < n_; ++u) {
                    auto& row = add_row("foreign_start_departure", RowSense::Le, 0.0);
                    row.terms.emplace_back(col(VarFamily::X, other, start, u), 1.0);
                }
            }
    }

    // Battery after the first leg is bounded by the initial charge less
    // the charge spent on that leg; after leaving a station the bound
    // starts from a full charge. Both are gated by the edge indicator so
    // an unreachable edge merely forces x = 0 instead of voiding the
    // whole model.
    void battery_bound_rows() {
        for (int h = 0; h < quads(); ++h) {
            const auto& quad = inst_.quadcopters[h];
            int start = inst_.quad_start_node(h);
            for (int v = 0; v < n_; ++v) {
                double budget = quad.initial_charge - dist(start, v) / quad.max_range;
                auto& row = add_row("first_leg_battery", RowSense::Le, 0.0);
                row.terms.emplace_back(col(VarFamily::Z, h, start, v), 1.0);
                row.terms.emplace_back(col(VarFamily::X, h, start, v), -budget);
            }
        }
        for (int h = 0; h < quads(); ++h) {
            const auto& quad = inst_.quadcopters[h];
            for (int k = 0; k < vehicles(); ++k) {
                int v = inst_.vehicle_node(k);
                for (int u = 0; u < n_; ++u) {
                    double budget = 1.0 - dist(v, u) / quad.max_range;
                    auto& row = add_row("station_battery", RowSense::Le, 0.0);
                    row.terms.emplace_back(col(VarFamily::Z, h, v, u), 1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, v, u), -budget);
                }
            }
        }
    }

    void type0_single_departure() {
        for (int h = 0; h < quads(); ++h) {
            int start = inst_.quad_start_node(h);
            auto& row = add_row("type0", RowSense::Le, 1.0);
            for (int u = 0; u < n_; ++u)
                row.terms.emplace_back(col(VarFamily::X, h, start, u), 1.0);
        }
    }

    void type1_initial_cargo() {
        for (int h = 0; h < quads(); ++h) {
            int start = inst_.quad_start_node(h);
            for (int s = 0; s < items(); ++s)
                for (int u = 0; u < n_; ++u) {
                    auto& row = add_row("type1", RowSense::Eq, 0.0);
                    row.terms.emplace_back(col(VarFamily::Q, s, start, u), 1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, start, u),
                                           -static_cast<double>(initial_cargo_of(h, s)));
                }
        }
    }

    void type2_edge_once() {
        for (int to = 0; to < n_; ++to)
            for (int from = 0; from < n_; ++from) {
                auto& row = add_row("type2", RowSense::Le, 1.0);
                for (int h = 0; h < quads(); ++h)
                    row.terms.emplace_back(col(VarFamily::X, h, from, to), 1.0);
            }
    }

    void type3_demand() {
        for (int r = 0; r < reqs(); ++r) {
            int node = inst_.request_node(r);
            for (int s = 0; s < items(); ++s) {
                auto& row = add_row("type3", RowSense::Eq, demand_of(r, s));
                for (int u = 0; u < n_; ++u) {
                    if (u == node) continue;
                    row.terms.emplace_back(col(VarFamily::Q, s, u, node), 1.0);
                    row.terms.emplace_back(col(VarFamily::Q, s, node, u), -1.0);
                }
            }
        }
    }

    void type4_single_visit() {
        for (int r = 0; r < reqs(); ++r) {
            int node = inst_.request_node(r);
            auto& row = add_row("type4", RowSense::Eq, 1.0);
            for (int h = 0; h < quads(); ++h)
                for (int u = 0; u < n_; ++u) {
                    if (u == node) continue;
                    row.terms.emplace_back(col(VarFamily::X, h, u, node), 1.0);
                }
        }
    }

    void type5_capacity() {
        for (int to = 0; to < n_; ++to)
            for (int from = 0; from < n_; ++from) {
                auto& row = add_row("type5", RowSense::Le, 0.0);
                for (int s = 0; s < items(); ++s)
                    row.terms.emplace_back(col(VarFamily::Q, s, from, to),
                                           inst_.items[s].weight);
                for (int h = 0; h < quads(); ++h)
                    row.terms.emplace_back(col(VarFamily::X, h, from, to),
                                           -inst_.quadcopters[h].capacity);
            }
    }

    // A quadcopter may leave a request only as often as it arrives there;
    // the surplus arrival is the route terminal.
    void type6_request_flow() {
        for (int r = 0; r < reqs(); ++r) {
            int node = inst_.request_node(r);
            for (int h = 0; h < quads(); ++h) {
                auto& row = add_row("type6", RowSense::Ge, 0.0);
                for (int u = 0; u < n_; ++u) {
                    if (u == node) continue;
                    row.terms.emplace_back(col(VarFamily::X, h, u, node), 1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, node, u), -1.0);
                }
            }
        }
    }

    void type7_station_flow() {
        for (int h = 0; h < quads(); ++h)
            for (int k = 0; k < vehicles(); ++k) {
                int node = inst_.vehicle_node(k);
                auto& row = add_row("type7", RowSense::Le, 0.0);
                for (int u = 0; u < n_; ++u) {
                    if (u == node) continue;
                    row.terms.emplace_back(col(VarFamily::X, h, node, u), 1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, u, node), -1.0);
                }
            }
    }

    void type8_battery_edge() {
        const double maxcharge = 1.0;
        for (int h = 0; h < quads(); ++h)
            for (int to = 0; to < n_; ++to)
                for (int from = 0; from < n_; ++from) {
                    auto& row = add_row("type8", RowSense::Le, 0.0);
                    row.terms.emplace_back(col(VarFamily::Z, h, from, to), 1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, from, to), -maxcharge);
                }
    }

    void type9_battery_chain() {
        for (int h = 0; h < quads(); ++h) {
            const auto& quad = inst_.quadcopters[h];
            for (int r = 0; r < reqs(); ++r) {
                int node = inst_.request_node(r);
                auto& row = add_row("type9", RowSense::Eq, 0.0);
                for (int u = 0; u < n_; ++u) {
                    if (u == node) continue;
                    row.terms.emplace_back(col(VarFamily::Z, h, u, node), 1.0);
                    row.terms.emplace_back(col(VarFamily::Z, h, node, u), -1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, node, u),
                                           -dist(node, u) / quad.max_range);
                }
            }
        }
    }

    void type10_leg_bigm() {
        const double big_m = 2.0 * reqs() + vehicles();
        for (int h = 0; h < quads(); ++h)
            for (int to = 0; to < n_; ++to)
                for (int from = 0; from < n_; ++from) {
                    auto& row = add_row("type10", RowSense::Le, 0.0);
                    row.terms.emplace_back(col(VarFamily::TLEG, h, from, to), 1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, from, to), -big_m);
                }
    }

    void type11_leg_chain() {
        for (int h = 0; h < quads(); ++h)
            for (int node = 0; node < n_; ++node) {
                if (inst_.node_kind(node) == NodeKind::QuadStart) continue;
                auto& row = add_row("type11", RowSense::Eq, 0.0);
                for (int u = 0; u < n_; ++u) {
                    if (u == node) continue;
                    row.terms.emplace_back(col(VarFamily::TLEG, h, u, node), 1.0);
                    row.terms.emplace_back(col(VarFamily::TLEG, h, node, u), -1.0);
                    row.terms.emplace_back(col(VarFamily::X, h, node, u), -1.0);
                }
            }
    }

    void type12_makespan() {
        for (int h = 0; h < quads(); ++h) {
            auto& row = add_row("type12", RowSense::Le, 0.0);
            for (int to = 0; to < n_; ++to)
                for (int from = 0; from < n_; ++from) {
                    double d = dist(from, to);
                    if (d != 0.0)
                        row.terms.emplace_back(col(VarFamily::X, h, from, to), d);
                }
            row.terms.emplace_back(layout_.makespan_column(), -1.0);
        }
    }

    void type13_must_move() {
        for (int h = 0; h < quads(); ++h) {
            int start = inst_.quad_start_node(h);
            auto& row = add_row("type13", RowSense::Ge, 1.0);
            for (int u = 0; u < n_; ++u)
                row.terms.emplace_back(col(VarFamily::X, h, start, u), 1.0);
        }
    }

    // Stations never create goods: per station and item, units taken out
    // are bounded by the units brought in. Leftovers may stay behind.
    void station_item_rows() {
        for (int k = 0; k < vehicles(); ++k) {
            int node = inst_.vehicle_node(k);
            for (int s = 0; s < items(); ++s) {
                auto& row = add_row("station_item", RowSense::Le, 0.0);
                for (int u = 0; u < n_; ++u) {
                    if (u == node) continue;
                    row.terms.emplace_back(col(VarFamily::Q, s, node, u), 1.0);
                    row.terms.emplace_back(col(VarFamily::Q, s, u, node), -1.0);
                }
            }
        }
    }

    // Launch-leg cuts: a first leg into a request the quadcopter cannot
    // serve from its initial cargo (or whose pickup cannot fit on board)
    // is fixed to zero. Implied by integrality, not by the relaxation.
    void launch_cuts() {
        for (int h = 0; h < quads(); ++h) {
            const auto& quad = inst_.quadcopters[h];
            int start = inst_.quad_start_node(h);
            for (int r = 0; r < reqs(); ++r) {
                bool banned = false;
                double cargo_weight = 0.0;
                for (int s = 0; s < items(); ++s)
                    cargo_weight += initial_cargo_of(h, s) * inst_.items[s].weight;
                double weight_after = cargo_weight;
                for (int s = 0; s < items(); ++s) {
                    int d = demand_of(r, s);
                    if (d > 0 && initial_cargo_of(h, s) < d) banned = true;
                    if (d > 0) weight_after -= d * inst_.items[s].weight;
                    if (d < 0) weight_after += -d * inst_.items[s].weight;
                }
                if (weight_after > quad.capacity + 1e-9) banned = true;
                if (!banned) continue;
                auto& row = add_row("cut_launch_cargo", RowSense::Le, 0.0);
                row.terms.emplace_back(col(VarFamily::X, h, start, inst_.request_node(r)),
                                       1.0);
            }
        }
    }
};

}  // namespace

MilpModel build_model(const PdpInstance& inst, bool with_cuts) {
    return ModelBuilder(inst, with_cuts).build();
}

std::map<std::string, std::size_t> row_report(const MilpModel& model) {
    std::map<std::string, std::size_t> counts;
    for (const auto& row : model.rows) ++counts[row.tag];
    return counts;
}

double row_activity(const LinearRow& row, const std::vector<double>& x) {
    double a = 0.0;
    for (const auto& [c, v] : row.terms) a += v * x[c];
    return a;
}

std::string dump_model(const MilpModel& model) {
    std::ostringstream os;
    os << "columns " << model.columns << "\n";
    for (int c = 0; c < model.columns; ++c) {
        os << "col " << c << " " << model.layout.column_name(c) << " "
           << static_cast<char>(model.kind[c]) << " [" << model.lower[c] << ", ";
        if (std::isinf(model.upper[c]))
            os << "inf";
        else
            os << model.upper[c];
        os << "] obj " << model.objective[c] << "\n";
    }
    os << "rows " << model.rows.size() << "\n";
    for (const auto& row : model.rows) {
        os << row.tag << " " << static_cast<char>(row.sense) << " " << row.rhs << " :";
        for (const auto& [c, v] : row.terms) os << " " << c << ":" << v;
        os << "\n";
    }
    return os.str();
}

}  // namespace quadel
