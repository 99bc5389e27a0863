#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadel/dynamics.hpp"
#include "quadel/route.hpp"

namespace quadel {

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double integral_min = -1.0;
    double integral_max = 1.0;
    double output_min = -1.0;
    double output_max = 1.0;

    void validate() const {
        if (kp < 0 || ki < 0 || kd < 0 || integral_min >= integral_max ||
            output_min >= output_max)
            throw std::invalid_argument("bad PID gains/clamps");
    }
};

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
};

/// Trapezoidal integral with anti-windup clamping, derivative on error,
/// clamped output.
double pid_update(PidState& state, const PidGains& gains, double error, double dt);

struct AttitudeState {
    PidState roll, pitch, yaw;
};
struct PositionState {
    PidState x, y, z;
};

struct ControllerConfig {
    PidGains att_roll, att_pitch, att_yaw;
    PidGains pos_x, pos_y, pos_z;
    double tilt_limit = 0.3;       // rad, pitch/roll setpoint clamp
    double yaw_setpoint = 0.0;     // rad, held
    double cruise_altitude = 2.0;  // m
    double capture_radius = 0.2;   // m
    double warmup_seconds = 2.0;
    double leg_time_cap_seconds = 30.0;
    double safety_radius = 1000.0;  // m, divergence bound

    void validate() const;
};

/// Shipped defaults; tuned against the stock QuadParams.
ControllerConfig default_controller_config();

/// Three independent PID channels on the Euler-angle errors.
Torque attitude_control(const QuadState& state, const Eigen::Vector3d& setpoint,
                        AttitudeState& ctl, const ControllerConfig& cfg, double dt);

struct PositionCommand {
    Eigen::Vector3d attitude_setpoint = Eigen::Vector3d::Zero();
    double thrust = 0.0;
};

/// Outer loop: altitude PID biased around hover thrust, horizontal PIDs
/// turned into small-angle pitch/roll setpoints (rotated through the
/// current yaw), yaw setpoint held.
PositionCommand position_control(const QuadState& state, const Eigen::Vector3d& waypoint,
                                 PositionState& ctl, const ControllerConfig& cfg,
                                 const QuadParams& params, double dt);

struct MixResult {
    std::array<double, 4> speeds{};  // front, right, back, left
    bool saturated = false;          // a clamp changed the command
};

/// Inverts motor_forces on squared speeds; negative squares clamp to zero
/// and speeds clamp to the motor limits, with saturation reported.
MixResult mix_plus(double total_thrust, const Torque& torque, const QuadParams& p);

struct TrajectorySample {
    double t = 0.0;
    QuadState state;
    std::array<double, 4> motors{};
};

struct QuadTrajectory {
    std::string quad_id;
    std::vector<TrajectorySample> samples;
    bool completed = false;  // final waypoint captured before the time cap
};

struct DivergenceDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flies each route's waypoints (leg endpoints at cruise altitude)
/// through the closed loop: hover warmup, advance on capture-radius hits,
/// stop after the final capture or the time cap. Throws
/// DivergenceDetected when the state leaves the safety sphere.
std::vector<QuadTrajectory> fly_route(const RoutePlan& plan, const QuadParams& params,
                                      const ControllerConfig& cfg, double dt,
                                      double capture_radius);

/// CSV with the exact column set
/// t,x,y,z,vx,vy,vz,phi,theta,psi,wx,wy,wz,m1,m2,m3,m4.
std::string trajectory_to_csv(const QuadTrajectory& traj);

}  // namespace quadel
