#include "quadel/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace quadel {

using nlohmann::json;

namespace {

Vec2 vec2_from(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2)
        throw IoError(what + ": coordinates must be a [x, y] array");
    return Vec2{j[0].get<double>(), j[1].get<double>()};
}

std::map<std::string, int> counts_from(const json& j) {
    std::map<std::string, int> out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<int>();
    return out;
}

json counts_to(const std::map<std::string, int>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[k] = v;
    return j;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
}

PdpInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("instance parse error: ") + e.what());
    }
    try {
        PdpInstance inst;
        for (const auto& it : j.value("items", json::array())) {
            Item item;
            item.id = it.at("id").get<std::string>();
            item.weight = it.at("weight").get<double>();
            inst.items.push_back(std::move(item));
        }
        for (const auto& rq : j.value("requests", json::array())) {
            Request r;
            r.id = rq.at("id").get<std::string>();
            r.location = vec2_from(rq.at("location"), "request " + r.id);
            r.demand = counts_from(rq.at("demand"));
            inst.requests.push_back(std::move(r));
        }
        for (const auto& qd : j.value("quadcopters", json::array())) {
            Quadcopter q;
            q.id = qd.at("id").get<std::string>();
            q.start_location = vec2_from(qd.at("start_location"), "quadcopter " + q.id);
            q.capacity = qd.at("capacity").get<double>();
            q.max_range = qd.at("max_range").get<double>();
            q.initial_charge = qd.value("initial_charge", 1.0);
            if (qd.contains("initial_cargo")) q.initial_cargo = counts_from(qd["initial_cargo"]);
            inst.quadcopters.push_back(std::move(q));
        }
        for (const auto& vh : j.value("vehicles", json::array())) {
            GroundVehicle v;
            v.id = vh.at("id").get<std::string>();
            v.location = vec2_from(vh.at("location"), "vehicle " + v.id);
            inst.vehicles.push_back(std::move(v));
        }
        return inst;
    } catch (const json::exception& e) {
        throw IoError(std::string("instance schema error: ") + e.what());
    }
}

PdpInstance load_instance(const std::string& path) {
    return instance_from_json(read_text_file(path));
}

std::string instance_to_json(const PdpInstance& inst, long long seed) {
    json j;
    j["items"] = json::array();
    for (const auto& item : inst.items)
        j["items"].push_back({{"id", item.id}, {"weight", item.weight}});
    j["requests"] = json::array();
    for (const auto& r : inst.requests)
        j["requests"].push_back({{"id", r.id},
                                 {"location", {r.location.x, r.location.y}},
                                 {"demand", counts_to(r.demand)}});
    j["quadcopters"] = json::array();
    for (const auto& q : inst.quadcopters)
        j["quadcopters"].push_back({{"id", q.id},
                                    {"start_location", {q.start_location.x, q.start_location.y}},
                                    {"capacity", q.capacity},
                                    {"max_range", q.max_range},
                                    {"initial_charge", q.initial_charge},
                                    {"initial_cargo", counts_to(q.initial_cargo)}});
    j["vehicles"] = json::array();
    for (const auto& v : inst.vehicles)
        j["vehicles"].push_back({{"id", v.id}, {"location", {v.location.x, v.location.y}}});
    if (seed >= 0) j["meta"] = {{"seed", seed}};
    return j.dump(2) + "\n";
}

void save_instance(const std::string& path, const PdpInstance& inst, long long seed) {
    write_text_file(path, instance_to_json(inst, seed));
}

std::string plan_to_json(const RoutePlan& plan) {
    json j;
    j["makespan"] = plan.makespan;
    j["routes"] = json::array();
    for (const auto& route : plan.routes) {
        json legs = json::array();
        for (const auto& leg : route.legs) {
            legs.push_back({{"from", leg.from_node},
                            {"to", leg.to_node},
                            {"from_xy", {leg.from_xy.x, leg.from_xy.y}},
                            {"to_xy", {leg.to_xy.x, leg.to_xy.y}},
                            {"length", leg.length},
                            {"cargo", counts_to(leg.cargo)},
                            {"charge", leg.charge},
                            {"t", leg.legs_remaining}});
        }
        j["routes"].push_back({{"quad", route.quad_id},
                               {"quad_index", route.quad_index},
                               {"start", {route.start.x, route.start.y}},
                               {"legs", std::move(legs)}});
    }
    return j.dump(2) + "\n";
}

RoutePlan plan_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("plan parse error: ") + e.what());
    }
    try {
        RoutePlan plan;
        plan.makespan = j.at("makespan").get<double>();
        for (const auto& rj : j.at("routes")) {
            QuadRoute route;
            route.quad_id = rj.at("quad").get<std::string>();
            route.quad_index = rj.value("quad_index", 0);
            route.start = vec2_from(rj.at("start"), "route start");
            for (const auto& lj : rj.at("legs")) {
                Leg leg;
                leg.from_node = lj.at("from").get<int>();
                leg.to_node = lj.at("to").get<int>();
                leg.from_xy = vec2_from(lj.at("from_xy"), "leg");
                leg.to_xy = vec2_from(lj.at("to_xy"), "leg");
                leg.length = lj.at("length").get<double>();
                leg.cargo = counts_from(lj.value("cargo", json::object()));
                leg.charge = lj.value("charge", 0.0);
                leg.legs_remaining = lj.value("t", 0.0);
                route.legs.push_back(std::move(leg));
            }
            plan.routes.push_back(std::move(route));
        }
        return plan;
    } catch (const json::exception& e) {
        throw IoError(std::string("plan schema error: ") + e.what());
    }
}

RoutePlan load_plan(const std::string& path) { return plan_from_json(read_text_file(path)); }

void save_plan(const std::string& path, const RoutePlan& plan) {
    write_text_file(path, plan_to_json(plan));
}

}  // namespace quadel
