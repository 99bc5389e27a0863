#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <stdexcept>

namespace quadel {

struct QuadParams {
    double mass = 1.2;       // kg
    double inertia_x = 5e-3;  // kg m^2
    double inertia_y = 5e-3;
    double inertia_z = 1e-2;
    double arm_length = 0.25;   // m
    double thrust_coeff = 3e-5;  // N s^2 (thrust = k * w^2 per rotor)
    double drag_coeff = 7.5e-7;  // N m s^2 (yaw moment = b * w^2 per rotor)
    double gravity = 9.81;
    double motor_min = 0.0;    // rad/s
    double motor_max = 500.0;
    double linear_drag = 0.0;  // N s/m, applied opposite velocity when set

    void validate() const;
    double hover_speed() const;   // per-motor speed balancing gravity
    double hover_thrust() const { return mass * gravity; }
};

/// 12-state rigid body: world position/velocity, Z-Y-X Euler angles
/// (roll, pitch, yaw), body angular rates. Angles are stored unwrapped.
struct QuadState {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
    Eigen::Vector3d angles = Eigen::Vector3d::Zero();  // phi, theta, psi
    Eigen::Vector3d rates = Eigen::Vector3d::Zero();   // body frame
};

struct Torque {
    double roll = 0.0;
    double pitch = 0.0;
    double yaw = 0.0;
};

struct GimbalProximity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Euler rigid-body equation with diagonal inertia:
/// wdot = I^-1 (tau - w x (I w)).
Eigen::Vector3d angular_acceleration(const Eigen::Vector3d& rates, const Torque& torque,
                                     const QuadParams& p);

/// World-frame acceleration of the body-z thrust vector under gravity,
/// R = Rz(psi) Ry(theta) Rx(phi).
Eigen::Vector3d translational_acceleration(const QuadState& state, double total_thrust,
                                           const QuadParams& p);

/// Body-to-world rotation and the Euler-rate transfer matrix W with
/// angles(1) = theta near +-pi/2 rejected (W is singular there).
Eigen::Matrix3d body_to_world(const Eigen::Vector3d& angles);
Eigen::Matrix3d euler_rate_matrix(const Eigen::Vector3d& angles);

/// Plus configuration, motor order [front, right, back, left]; front and
/// back spin clockwise, left and right counterclockwise.
struct MotorOutput {
    double thrust = 0.0;
    Torque torque;
};
MotorOutput motor_forces(const std::array<double, 4>& speeds, const QuadParams& p);

/// Time derivative of the full state for given rotor speeds.
struct StateDeriv {
    Eigen::Vector3d d_position, d_velocity, d_angles, d_rates;
};
StateDeriv state_derivative(const QuadState& state, const std::array<double, 4>& speeds,
                            const QuadParams& p);

using DerivFn = std::function<StateDeriv(const QuadState&, double)>;

/// Classical RK4 over an arbitrary derivative field (stage times t,
/// t+dt/2, t+dt).
QuadState rk4_step(const QuadState& state, double t, double dt, const DerivFn& f);

/// One simulation step with rotor speeds held constant over dt.
QuadState step(const QuadState& state, const std::array<double, 4>& speeds, double dt,
               const QuadParams& p);

}  // namespace quadel
