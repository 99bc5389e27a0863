#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadel/pdp.hpp"

namespace quadel {

/// Variable families of the routing program. X is the per-quad edge
/// indicator, Q the per-item carried quantity, Z the per-quad battery
/// state after an edge, TLEG the per-quad legs-remaining counter. The
/// makespan column sits alone after all blocks.
enum class VarFamily { X, Q, Z, TLEG };

struct VarKey {
    VarFamily family = VarFamily::X;
    int owner = 0;  // quad index for X/Z/TLEG, item index for Q
    int from = 0;   // source node
    int to = 0;     // destination node

    friend bool operator==(const VarKey&, const VarKey&) = default;
};

struct UnknownVariable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Column layout: per-family N x N blocks (X blocks by quad order, then Q
/// by item order, then Z, then TLEG), destination-major within a block so
/// the source node varies fastest, and the makespan column last.
class VariableLayout {
public:
    VariableLayout() = default;
    explicit VariableLayout(const PdpInstance& inst);

    int columns() const { return total_columns_; }
    int makespan_column() const { return total_columns_ - 1; }
    int nodes() const { return nodes_; }
    int quads() const { return quads_; }
    int items() const { return items_; }

    int index(const VarKey& key) const;
    int index(VarFamily family, int owner, int from, int to) const {
        return index(VarKey{family, owner, from, to});
    }

    /// Inverse lookup; nullopt for the makespan column.
    std::optional<VarKey> key(int column) const;

    /// Human-readable column name, e.g. "x(2,1)^1" with 1-based node and
    /// owner numbers; the makespan column prints as "T".
    std::string column_name(int column) const;

private:
    int nodes_ = 0;
    int quads_ = 0;
    int items_ = 0;
    int total_columns_ = 1;

    int block_base(VarFamily family, int owner) const;
};

VariableLayout build_layout(const PdpInstance& inst);

enum class RowSense : char { Le = '<', Eq = '=', Ge = '>' };

struct LinearRow {
    std::string tag;
    RowSense sense = RowSense::Le;
    double rhs = 0.0;
    std::vector<std::pair<int, double>> terms;  // (column, coefficient)
};

enum class ColKind : char { Continuous = 'C', Binary = 'B', Integer = 'I' };

struct MilpModel {
    VariableLayout layout;
    int columns = 0;
    std::vector<double> objective;
    std::vector<double> lower;
    std::vector<double> upper;  // +inf allowed
    std::vector<ColKind> kind;
    std::vector<LinearRow> rows;
};

/// Translates a validated instance into the routing program. When
/// with_cuts is set, launch legs whose endpoint demand the quad cannot
/// serve from its initial cargo (or whose pickup would not fit) are fixed
/// to zero up front.
MilpModel build_model(const PdpInstance& inst, bool with_cuts);

/// Rows per restriction tag; values sum to rows.size().
std::map<std::string, std::size_t> row_report(const MilpModel& model);

/// Plain-text listing: bounds, then one row per line (tag, sense, rhs,
/// sparse terms), stable ordering.
std::string dump_model(const MilpModel& model);

double row_activity(const LinearRow& row, const std::vector<double>& x);

}  // namespace quadel
