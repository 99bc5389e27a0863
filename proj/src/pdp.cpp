#include "quadel/pdp.hpp"

#include <cmath>
#include <set>

namespace quadel {

namespace {

bool finite(const Vec2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

template <typename T>
void check_unique_ids(const std::vector<T>& entities, const char* kind) {
    std::set<std::string> seen;
    for (const auto& e : entities) {
        if (!seen.insert(e.id).second)
            throw DuplicateId(std::string(kind) + " id '" + e.id + "' appears twice");
    }
}

void check_cargo_keys(const PdpInstance& inst, const std::map<std::string, int>& cargo,
                      const std::string& owner) {
    for (const auto& [item_id, count] : cargo) {
        if (inst.item_index(item_id) < 0)
            throw UnknownItemReference(owner + " references unknown item '" + item_id + "'");
        if (count == 0)
            throw InvalidField(owner + " has a zero count for item '" + item_id + "'");
    }
}

}  // namespace

double PdpInstance::item_weight(const std::string& item_id) const {
    int idx = item_index(item_id);
    if (idx < 0) throw UnknownItemReference("unknown item '" + item_id + "'");
    return items[idx].weight;
}

int PdpInstance::item_index(const std::string& item_id) const {
    for (size_t i = 0; i < items.size(); ++i)
        if (items[i].id == item_id) return static_cast<int>(i);
    return -1;
}

PdpInstance validate_instance(const PdpInstance& raw) {
    check_unique_ids(raw.items, "item");
    check_unique_ids(raw.requests, "request");
    check_unique_ids(raw.quadcopters, "quadcopter");
    check_unique_ids(raw.vehicles, "vehicle");

    for (const auto& item : raw.items) {
        if (!(item.weight > 0.0) || !std::isfinite(item.weight))
            throw InvalidField("item '" + item.id + "' must have positive finite weight");
    }

    for (const auto& r : raw.requests) {
        if (!finite(r.location))
            throw NonFiniteCoordinate("request '" + r.id + "' has a non-finite location");
        if (r.demand.empty())
            throw InvalidField("request '" + r.id + "' has an empty demand map");
        check_cargo_keys(raw, r.demand, "request '" + r.id + "'");
    }

    for (const auto& q : raw.quadcopters) {
        if (!finite(q.start_location))
            throw NonFiniteCoordinate("quadcopter '" + q.id + "' has a non-finite start");
        if (!(q.capacity > 0.0) || !std::isfinite(q.capacity))
            throw InvalidField("quadcopter '" + q.id + "' must have positive capacity");
        if (!(q.max_range > 0.0) || !std::isfinite(q.max_range))
            throw InvalidField("quadcopter '" + q.id + "' must have positive max_range");
        if (!(q.initial_charge >= 0.0 && q.initial_charge <= 1.0))
            throw InvalidField("quadcopter '" + q.id + "' initial_charge must lie in [0,1]");
        check_cargo_keys(raw, q.initial_cargo, "quadcopter '" + q.id + "'");
        double cargo_weight = 0.0;
        for (const auto& [item_id, count] : q.initial_cargo) {
            if (count < 0)
                throw InvalidField("quadcopter '" + q.id + "' carries a negative count of '" +
                                   item_id + "'");
            cargo_weight += count * raw.item_weight(item_id);
        }
        if (cargo_weight > q.capacity + 1e-12)
            throw CargoExceedsCapacity("quadcopter '" + q.id + "' initial cargo weight " +
                                       std::to_string(cargo_weight) + " exceeds capacity " +
                                       std::to_string(q.capacity));
    }

    for (const auto& v : raw.vehicles) {
        if (!finite(v.location))
            throw NonFiniteCoordinate("vehicle '" + v.id + "' has a non-finite location");
    }

    return raw;
}

double node_distance(const PdpInstance& inst, int a, int b) {
    return distance(inst.node_location(a), inst.node_location(b));
}

}  // namespace quadel
