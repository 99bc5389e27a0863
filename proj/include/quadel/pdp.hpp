#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadel {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Goods that can be carried. Weight is in the same mass units as
/// quadcopter capacity.
struct Item {
    std::string id;
    double weight = 1.0;

    friend bool operator==(const Item&, const Item&) = default;
};

/// A service site. Demand counts are signed: positive = deliver this many
/// units to the site, negative = pick this many up.
struct Request {
    std::string id;
    Vec2 location;
    std::map<std::string, int> demand;

    friend bool operator==(const Request&, const Request&) = default;
};

struct Quadcopter {
    std::string id;
    Vec2 start_location;
    double capacity = 1.0;
    double max_range = 1.0;
    double initial_charge = 1.0;
    std::map<std::string, int> initial_cargo;

    friend bool operator==(const Quadcopter&, const Quadcopter&) = default;
};

/// Fixed base station; quadcopters recharge to full when they arrive.
struct GroundVehicle {
    std::string id;
    Vec2 location;

    friend bool operator==(const GroundVehicle&, const GroundVehicle&) = default;
};

enum class NodeKind { Request, QuadStart, Vehicle };

/// A delivery world. The site graph is derived: one node per request,
/// then one per quadcopter start, then one per ground vehicle, and the
/// edge set is the full N x N of directed pairs.
struct PdpInstance {
    std::vector<Item> items;
    std::vector<Request> requests;
    std::vector<Quadcopter> quadcopters;
    std::vector<GroundVehicle> vehicles;

    friend bool operator==(const PdpInstance&, const PdpInstance&) = default;

    int node_count() const {
        return static_cast<int>(requests.size() + quadcopters.size() + vehicles.size());
    }
    int edge_count() const { return node_count() * node_count(); }

    int request_node(int i) const { return i; }
    int quad_start_node(int j) const { return static_cast<int>(requests.size()) + j; }
    int vehicle_node(int k) const {
        return static_cast<int>(requests.size() + quadcopters.size()) + k;
    }

    NodeKind node_kind(int node) const {
        if (node < static_cast<int>(requests.size())) return NodeKind::Request;
        if (node < static_cast<int>(requests.size() + quadcopters.size()))
            return NodeKind::QuadStart;
        return NodeKind::Vehicle;
    }

    /// Index within the owning collection (request i, quad j, vehicle k).
    int node_member(int node) const {
        switch (node_kind(node)) {
            case NodeKind::Request: return node;
            case NodeKind::QuadStart: return node - static_cast<int>(requests.size());
            case NodeKind::Vehicle:
                return node - static_cast<int>(requests.size() + quadcopters.size());
        }
        return -1;
    }

    const Vec2& node_location(int node) const {
        switch (node_kind(node)) {
            case NodeKind::Request: return requests[node].location;
            case NodeKind::QuadStart:
                return quadcopters[node - requests.size()].start_location;
            case NodeKind::Vehicle:
                return vehicles[node - requests.size() - quadcopters.size()].location;
        }
        throw std::logic_error("bad node index");
    }

    double item_weight(const std::string& item_id) const;
    int item_index(const std::string& item_id) const;
};

struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DuplicateId : InstanceError {
    using InstanceError::InstanceError;
};
struct NonFiniteCoordinate : InstanceError {
    using InstanceError::InstanceError;
};
struct CargoExceedsCapacity : InstanceError {
    using InstanceError::InstanceError;
};
struct UnknownItemReference : InstanceError {
    using InstanceError::InstanceError;
};
struct InvalidField : InstanceError {
    using InstanceError::InstanceError;
};

/// Checks every instance invariant and returns the instance unchanged on
/// success. Throws a subclass of InstanceError naming the offending entity.
PdpInstance validate_instance(const PdpInstance& raw);

/// Euclidean distance between two derived nodes.
double node_distance(const PdpInstance& inst, int a, int b);

}  // namespace quadel
