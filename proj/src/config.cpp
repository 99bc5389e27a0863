#include "quadel/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace quadel {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void apply_gains(const std::map<std::string, std::string>& kv, const std::string& prefix,
                 PidGains& g) {
    auto set = [&](const std::string& suffix, double& field) {
        auto it = kv.find(prefix + "_" + suffix);
        if (it != kv.end()) field = std::stod(it->second);
    };
    set("kp", g.kp);
    set("ki", g.ki);
    set("kd", g.kd);
    set("imin", g.integral_min);
    set("imax", g.integral_max);
    set("omin", g.output_min);
    set("omax", g.output_max);
}

void set_num(const std::map<std::string, std::string>& kv, const std::string& key,
             double& field) {
    auto it = kv.find(key);
    if (it != kv.end()) field = std::stod(it->second);
}

std::string gains_text(const std::string& prefix, const PidGains& g) {
    std::ostringstream os;
    os << prefix << "_kp = " << g.kp << "\n"
       << prefix << "_ki = " << g.ki << "\n"
       << prefix << "_kd = " << g.kd << "\n"
       << prefix << "_imin = " << g.integral_min << "\n"
       << prefix << "_imax = " << g.integral_max << "\n"
       << prefix << "_omin = " << g.output_min << "\n"
       << prefix << "_omax = " << g.output_max << "\n";
    return os.str();
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> load_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

ControllerConfig controller_config_from_map(const std::map<std::string, std::string>& kv) {
    ControllerConfig cfg = default_controller_config();
    apply_gains(kv, "att_roll", cfg.att_roll);
    apply_gains(kv, "att_pitch", cfg.att_pitch);
    apply_gains(kv, "att_yaw", cfg.att_yaw);
    apply_gains(kv, "pos_x", cfg.pos_x);
    apply_gains(kv, "pos_y", cfg.pos_y);
    apply_gains(kv, "pos_z", cfg.pos_z);
    set_num(kv, "tilt_limit", cfg.tilt_limit);
    set_num(kv, "yaw_setpoint", cfg.yaw_setpoint);
    set_num(kv, "cruise_altitude", cfg.cruise_altitude);
    set_num(kv, "capture_radius", cfg.capture_radius);
    set_num(kv, "warmup_seconds", cfg.warmup_seconds);
    set_num(kv, "leg_time_cap_seconds", cfg.leg_time_cap_seconds);
    set_num(kv, "safety_radius", cfg.safety_radius);
    cfg.validate();
    return cfg;
}

QuadParams quad_params_from_map(const std::map<std::string, std::string>& kv) {
    QuadParams p;
    set_num(kv, "mass", p.mass);
    set_num(kv, "inertia_x", p.inertia_x);
    set_num(kv, "inertia_y", p.inertia_y);
    set_num(kv, "inertia_z", p.inertia_z);
    set_num(kv, "arm_length", p.arm_length);
    set_num(kv, "thrust_coeff", p.thrust_coeff);
    set_num(kv, "drag_coeff", p.drag_coeff);
    set_num(kv, "gravity", p.gravity);
    set_num(kv, "motor_min", p.motor_min);
    set_num(kv, "motor_max", p.motor_max);
    set_num(kv, "linear_drag", p.linear_drag);
    p.validate();
    return p;
}

std::string default_config_text() {
    ControllerConfig cfg = default_controller_config();
    QuadParams p;
    std::ostringstream os;
    os << "# quadrotor airframe\n"
       << "mass = " << p.mass << "\n"
       << "inertia_x = " << p.inertia_x << "\n"
       << "inertia_y = " << p.inertia_y << "\n"
       << "inertia_z = " << p.inertia_z << "\n"
       << "arm_length = " << p.arm_length << "\n"
       << "thrust_coeff = " << p.thrust_coeff << "\n"
       << "drag_coeff = " << p.drag_coeff << "\n"
       << "gravity = " << p.gravity << "\n"
       << "motor_min = " << p.motor_min << "\n"
       << "motor_max = " << p.motor_max << "\n\n"
       << "# cascaded PID gains\n"
       << gains_text("att_roll", cfg.att_roll) << gains_text("att_pitch", cfg.att_pitch)
       << gains_text("att_yaw", cfg.att_yaw) << gains_text("pos_x", cfg.pos_x)
       << gains_text("pos_y", cfg.pos_y) << gains_text("pos_z", cfg.pos_z) << "\n"
       << "# mission shaping\n"
       << "tilt_limit = " << cfg.tilt_limit << "\n"
       << "yaw_setpoint = " << cfg.yaw_setpoint << "\n"
       << "cruise_altitude = " << cfg.cruise_altitude << "\n"
       << "capture_radius = " << cfg.capture_radius << "\n"
       << "warmup_seconds = " << cfg.warmup_seconds << "\n"
       << "leg_time_cap_seconds = " << cfg.leg_time_cap_seconds << "\n"
       << "safety_radius = " << cfg.safety_radius << "\n";
    return os.str();
}

}  // namespace quadel
