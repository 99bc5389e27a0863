#include "quadel/speccheck.hpp"

#include <cstdio>
#include <sstream>

namespace quadel {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

RequirementVerdict verdict(int n, std::string desc, bool pass, std::string detail) {
    return RequirementVerdict{n, std::move(desc), pass, std::move(detail)};
}

}  // namespace

SpecReport spec_check(const UavParams& p, const UavRequirements& r) {
    SpecReport rep;
    rep.verdicts[0] =
        verdict(1, "battery endurance >= " + num(r.min_flight_minutes) + " min",
                p.endurance_minutes >= r.min_flight_minutes,
                "endurance " + num(p.endurance_minutes) + " min");
    rep.verdicts[1] = verdict(
        2,
        "thrust-to-weight in [" + num(r.thrust_to_weight_low) + ", " +
            num(r.thrust_to_weight_high) + "]",
        p.thrust_to_weight >= r.thrust_to_weight_low &&
            p.thrust_to_weight <= r.thrust_to_weight_high,
        "ratio " + num(p.thrust_to_weight));
    rep.verdicts[2] = verdict(3, "range sensors fitted", p.range_sensors,
                              p.range_sensors ? "declared present" : "declared absent");
    rep.verdicts[3] =
        verdict(4, "autonomous take-off / hover / traverse / land", p.autonomous_flight,
                p.autonomous_flight ? "declared capable" : "declared not capable");
    rep.verdicts[4] = verdict(5, "wireless link available", p.wireless,
                              p.wireless ? "declared present" : "declared absent");
    rep.verdicts[5] =
        verdict(6, "width under " + num(r.max_width_inches) + " in",
                p.width_inches < r.max_width_inches, "width " + num(p.width_inches) + " in");
    rep.verdicts[6] = verdict(
        7,
        "mass under " + num(r.max_mass_kg) + " kg with payload in [" + num(r.payload_low_kg) +
            ", " + num(r.payload_high_kg) + "] kg",
        p.mass_kg < r.max_mass_kg && p.payload_kg >= r.payload_low_kg &&
            p.payload_kg <= r.payload_high_kg,
        "mass " + num(p.mass_kg) + " kg, payload " + num(p.payload_kg) + " kg");
    rep.verdicts[7] = verdict(8, "prop guards rated for a 10 ft drop", p.prop_guards,
                              p.prop_guards ? "declared fitted" : "declared absent");
    rep.verdicts[8] =
        verdict(9, "maximum flight height at least " + num(r.min_max_height_ft) + " ft",
                p.max_height_ft >= r.min_max_height_ft,
                "max height " + num(p.max_height_ft) + " ft");

    rep.overall_pass = true;
    for (const auto& v : rep.verdicts) rep.overall_pass = rep.overall_pass && v.pass;
    return rep;
}

UavParams uav_params_from_map(const std::map<std::string, std::string>& kv) {
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw MissingParameter("missing parameter '" + key + "'");
        return it->second;
    };
    auto need_num = [&](const std::string& key) { return std::stod(need(key)); };
    auto need_bool = [&](const std::string& key) {
        const std::string& v = need(key);
        return v == "true" || v == "1" || v == "yes";
    };

    UavParams p;
    p.endurance_minutes = need_num("endurance_minutes");
    p.thrust_to_weight = need_num("thrust_to_weight");
    p.width_inches = need_num("width_inches");
    p.mass_kg = need_num("mass_kg");
    p.payload_kg = need_num("payload_kg");
    p.max_height_ft = need_num("max_height_ft");
    p.range_sensors = need_bool("range_sensors");
    p.autonomous_flight = need_bool("autonomous_flight");
    p.wireless = need_bool("wireless");
    p.prop_guards = need_bool("prop_guards");
    return p;
}

std::string format_report(const SpecReport& report) {
    std::ostringstream os;
    for (const auto& v : report.verdicts) {
        os << (v.pass ? "[PASS]" : "[FAIL]") << " requirement " << v.number << ": "
           << v.description << " (" << v.detail << ")\n";
    }
    os << (report.overall_pass ? "overall: PASS" : "overall: FAIL") << "\n";
    return os.str();
}

}  // namespace quadel
