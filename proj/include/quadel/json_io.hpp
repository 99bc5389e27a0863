#pragma once

#include <stdexcept>
#include <string>

#include "quadel/pdp.hpp"
#include "quadel/route.hpp"

namespace quadel {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instance document: top-level keys items, requests, quadcopters,
/// vehicles; coordinates as [x, y]; demand and cargo maps as
/// {item_id: count}. An optional "meta" object is carried through.
PdpInstance instance_from_json(const std::string& text);
PdpInstance load_instance(const std::string& path);
std::string instance_to_json(const PdpInstance& inst, long long seed = -1);
void save_instance(const std::string& path, const PdpInstance& inst, long long seed = -1);

/// Plan document: per-quad leg arrays (from, to, coordinates, length,
/// cargo, charge, t) plus the makespan.
std::string plan_to_json(const RoutePlan& plan);
RoutePlan plan_from_json(const std::string& text);
RoutePlan load_plan(const std::string& path);
void save_plan(const std::string& path, const RoutePlan& plan);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace quadel
