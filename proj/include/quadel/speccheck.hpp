#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>

namespace quadel {

/// Airframe requirement thresholds. Defaults mirror the standard indoor
/// delivery profile this project targets.
struct UavRequirements {
    double min_flight_minutes = 10.0;
    double thrust_to_weight_low = 1.5;
    double thrust_to_weight_high = 2.0;
    double max_width_inches = 30.0;
    double max_mass_kg = 1.5;
    double payload_low_kg = 0.5;
    double payload_high_kg = 1.0;
    double min_max_height_ft = 10.0;
};

/// Measured / declared properties of a concrete airframe.
struct UavParams {
    double endurance_minutes = 0.0;
    double thrust_to_weight = 0.0;
    double width_inches = 0.0;
    double mass_kg = 0.0;
    double payload_kg = 0.0;
    double max_height_ft = 0.0;
    bool range_sensors = false;
    bool autonomous_flight = false;
    bool wireless = false;
    bool prop_guards = false;
};

struct MissingParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RequirementVerdict {
    int number = 0;  // 1..9
    std::string description;
    bool pass = false;
    std::string detail;
};

struct SpecReport {
    std::array<RequirementVerdict, 9> verdicts;
    bool overall_pass = false;
};

/// One verdict per requirement 1..9; overall pass iff all pass.
/// Hardware properties (sensors, autonomy, wireless, prop guards) are
/// declared booleans and reported as such.
SpecReport spec_check(const UavParams& params, const UavRequirements& reqs);

/// Builds UavParams from a key=value map (as parsed from a config file).
/// Throws MissingParameter naming the first absent key.
UavParams uav_params_from_map(const std::map<std::string, std::string>& kv);

std::string format_report(const SpecReport& report);

}  // namespace quadel
