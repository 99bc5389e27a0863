#include "quadel/control.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quadel {

namespace {
double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }
}  // namespace

double pid_update(PidState& s, const PidGains& g, double error, double dt) {
    s.integral = clamp(s.integral + dt * (error + s.prev_error) / 2.0, g.integral_min,
                       g.integral_max);
    double derivative = (error - s.prev_error) / dt;
    s.prev_error = error;
    return clamp(g.kp * error + g.ki * s.integral + g.kd * derivative, g.output_min,
                 g.output_max);
}

void ControllerConfig::validate() const {
    att_roll.validate();
    att_pitch.validate();
    att_yaw.validate();
    pos_x.validate();
    pos_y.validate();
    pos_z.validate();
    if (!(tilt_limit > 0) || !(capture_radius > 0) || !(safety_radius > 0) ||
        !(cruise_altitude > 0))
        throw std::invalid_argument("controller limits must be positive");
}

ControllerConfig default_controller_config() {
    ControllerConfig cfg;
    cfg.att_roll = PidGains{0.5, 0.05, 0.09, -0.2, 0.2, -1.5, 1.5};
    cfg.att_pitch = PidGains{0.5, 0.05, 0.09, -0.2, 0.2, -1.5, 1.5};
    cfg.att_yaw = PidGains{1.0, 0.05, 0.18, -0.2, 0.2, -0.3, 0.3};
    cfg.pos_x = PidGains{2.25, 0.02, 2.7, -1.0, 1.0, -6.0, 6.0};
    cfg.pos_y = PidGains{2.25, 0.02, 2.7, -1.0, 1.0, -6.0, 6.0};
    cfg.pos_z = PidGains{4.8, 0.4, 4.32, -2.0, 2.0, -8.0, 8.0};
    return cfg;
}

Torque attitude_control(const QuadState& state, const Eigen::Vector3d& sp,
                        AttitudeState& ctl, const ControllerConfig& cfg, double dt) {
    Torque out;
    out.roll = pid_update(ctl.roll, cfg.att_roll, sp.x() - state.angles.x(), dt);
    out.pitch = pid_update(ctl.pitch, cfg.att_pitch, sp.y() - state.angles.y(), dt);
    out.yaw = pid_update(ctl.yaw, cfg.att_yaw, sp.z() - state.angles.z(), dt);
    return out;
}

PositionCommand position_control(const QuadState& state, const Eigen::Vector3d& wp,
                                 PositionState& ctl, const ControllerConfig& cfg,
                                 const QuadParams& params, double dt) {
    PositionCommand cmd;
    double fz = pid_update(ctl.z, cfg.pos_z, wp.z() - state.position.z(), dt);
    double max_thrust =
        4.0 * params.thrust_coeff * params.motor_max * params.motor_max;
    cmd.thrust = clamp(params.hover_thrust() + fz, 0.0, max_thrust);

    double ux = pid_update(ctl.x, cfg.pos_x, wp.x() - state.position.x(), dt);
    double uy = pid_update(ctl.y, cfg.pos_y, wp.y() - state.position.y(), dt);
    double psi = state.angles.z();
    double g = params.gravity;
    double theta_des = (std::cos(psi) * ux + std::sin(psi) * uy) / g;
    double phi_des = (std::sin(psi) * ux - std::cos(psi) * uy) / g;
    cmd.attitude_setpoint.x() = clamp(phi_des, -cfg.tilt_limit, cfg.tilt_limit);
    cmd.attitude_setpoint.y() = clamp(theta_des, -cfg.tilt_limit, cfg.tilt_limit);
    cmd.attitude_setpoint.z() = cfg.yaw_setpoint;
    return cmd;
}

MixResult mix_plus(double total_thrust, const Torque& tau, const QuadParams& p) {
    if (total_thrust < 0.0) throw std::invalid_argument("thrust must be non-negative");
    const double lk = p.arm_length * p.thrust_coeff;
    const double s = total_thrust / p.thrust_coeff;
    const double u1 = tau.roll / lk;
    const double u2 = tau.pitch / lk;
    const double u3 = tau.yaw / p.drag_coeff;

    std::array<double, 4> sq{};
    sq[0] = (s + u3) / 4.0 - u2 / 2.0;  // front
    sq[1] = (s - u3) / 4.0 - u1 / 2.0;  // right
    sq[2] = (s + u3) / 4.0 + u2 / 2.0;  // back
    sq[3] = (s - u3) / 4.0 + u1 / 2.0;  // left

    MixResult out;
    for (int i = 0; i < 4; ++i) {
        double q = sq[i];
        if (q < 0.0) {
            q = 0.0;
            out.saturated = true;
        }
        double w = std::sqrt(q);
        double clamped = clamp(w, p.motor_min, p.motor_max);
        if (clamped != w) out.saturated = true;
        out.speeds[i] = clamped;
    }
    return out;
}

std::vector<QuadTrajectory> fly_route(const RoutePlan& plan, const QuadParams& params,
                                      const ControllerConfig& cfg, double dt,
                                      double capture_radius) {
    params.validate();
    cfg.validate();
    if (!(dt > 0) || !(capture_radius > 0))
        throw std::invalid_argument("dt and capture radius must be positive");

    std::vector<QuadTrajectory> out;
    for (const auto& route : plan.routes) {
        QuadTrajectory traj;
        traj.quad_id = route.quad_id;

        std::vector<Eigen::Vector3d> waypoints;
        for (const auto& leg : route.legs)
            waypoints.emplace_back(leg.to_xy.x, leg.to_xy.y, cfg.cruise_altitude);

        QuadState state;
        state.position = {route.start.x, route.start.y, cfg.cruise_altitude};
        AttitudeState att{};
        PositionState pos{};

        Eigen::Vector3d hold(route.start.x, route.start.y, cfg.cruise_altitude);
        size_t next_wp = 0;
        double time_cap = cfg.warmup_seconds +
                          cfg.leg_time_cap_seconds * std::max<size_t>(1, waypoints.size());
        double t = 0.0;
        bool done = false;
        while (t < time_cap && !done) {
            Eigen::Vector3d target =
                (t < cfg.warmup_seconds || waypoints.empty()) ? hold : waypoints[next_wp];
            PositionCommand cmd = position_control(state, target, pos, cfg, params, dt);
            Torque torque = attitude_control(state, cmd.attitude_setpoint, att, cfg, dt);
            MixResult mix = mix_plus(cmd.thrust, torque, params);
            state = step(state, mix.speeds, dt, params);
            t += dt;
            traj.samples.push_back(TrajectorySample{t, state, mix.speeds});

            if (!state.position.allFinite() || state.position.norm() > cfg.safety_radius)
                throw DivergenceDetected("quadcopter '" + route.quad_id +
                                         "' left the safety sphere");

            if (t >= cfg.warmup_seconds && !waypoints.empty()) {
                if ((state.position - waypoints[next_wp]).norm() <= capture_radius) {
                    if (++next_wp == waypoints.size()) done = true;
                }
            } else if (waypoints.empty() && t >= cfg.warmup_seconds) {
                done = true;  // nothing to fly: warmup hover only
            }
        }
        traj.completed = done;
        out.push_back(std::move(traj));
    }
    return out;
}

std::string trajectory_to_csv(const QuadTrajectory& traj) {
    std::ostringstream os;
    os << "t,x,y,z,vx,vy,vz,phi,theta,psi,wx,wy,wz,m1,m2,m3,m4\n";
    os.precision(10);
    for (const auto& s : traj.samples) {
        os << s.t;
        for (int i = 0; i < 3; ++i) os << ',' << s.state.position(i);
        for (int i = 0; i < 3; ++i) os << ',' << s.state.velocity(i);
        for (int i = 0; i < 3; ++i) os << ',' << s.state.angles(i);
        for (int i = 0; i < 3; ++i) os << ',' << s.state.rates(i);
        for (int i = 0; i < 4; ++i) os << ',' << s.motors[i];
        os << '\n';
    }
    return os.str();
}

}  // namespace quadel
