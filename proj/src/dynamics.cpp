#include "quadel/dynamics.hpp"

#include <cmath>

namespace quadel {

void QuadParams::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(mass) || !positive(inertia_x) || !positive(inertia_y) ||
        !positive(inertia_z) || !positive(arm_length) || !positive(thrust_coeff) ||
        !positive(drag_coeff) || !positive(gravity) || !(motor_max > motor_min))
        throw std::invalid_argument("quadrotor parameters must be positive");
    // Physical plausibility of a rigid body: each principal inertia is at
    // most the sum of the other two.
    if (inertia_x > inertia_y + inertia_z + 1e-12 ||
        inertia_y > inertia_x + inertia_z + 1e-12 ||
        inertia_z > inertia_x + inertia_y + 1e-12)
        throw std::invalid_argument("inertias violate the triangle condition");
}

double QuadParams::hover_speed() const {
    return std::sqrt(mass * gravity / (4.0 * thrust_coeff));
}

Eigen::Vector3d angular_acceleration(const Eigen::Vector3d& w, const Torque& tau,
                                     const QuadParams& p) {
    return {
        (tau.roll + (p.inertia_y - p.inertia_z) * w.y() * w.z()) / p.inertia_x,
        (tau.pitch + (p.inertia_z - p.inertia_x) * w.x() * w.z()) / p.inertia_y,
        (tau.yaw + (p.inertia_x - p.inertia_y) * w.x() * w.y()) / p.inertia_z,
    };
}

Eigen::Matrix3d body_to_world(const Eigen::Vector3d& angles) {
    const double cphi = std::cos(angles.x()), sphi = std::sin(angles.x());
    const double cth = std::cos(angles.y()), sth = std::sin(angles.y());
    const double cpsi = std::cos(angles.z()), spsi = std::sin(angles.z());
    Eigen::Matrix3d r;
    r << cpsi * cth, cpsi * sth * sphi - spsi * cphi, cpsi * sth * cphi + spsi * sphi,
        spsi * cth, spsi * sth * sphi + cpsi * cphi, spsi * sth * cphi - cpsi * sphi,
        -sth, cth * sphi, cth * cphi;
    return r;
}

Eigen::Matrix3d euler_rate_matrix(const Eigen::Vector3d& angles) {
    const double theta = angles.y();
    if (std::abs(theta) > M_PI / 2.0 - 1e-3)
        throw GimbalProximity("pitch too close to +-pi/2 for Euler-rate kinematics");
    const double cphi = std::cos(angles.x()), sphi = std::sin(angles.x());
    const double tth = std::tan(theta), cth = std::cos(theta);
    Eigen::Matrix3d w;
    w << 1.0, sphi * tth, cphi * tth,
        0.0, cphi, -sphi,
        0.0, sphi / cth, cphi / cth;
    return w;
}

Eigen::Vector3d translational_acceleration(const QuadState& state, double total_thrust,
                                           const QuadParams& p) {
    Eigen::Vector3d thrust_body(0.0, 0.0, total_thrust);
    Eigen::Vector3d a = body_to_world(state.angles) * thrust_body / p.mass;
    a.z() -= p.gravity;
    if (p.linear_drag > 0.0) a -= (p.linear_drag / p.mass) * state.velocity;
    return a;
}

MotorOutput motor_forces(const std::array<double, 4>& w, const QuadParams& p) {
    const double f2 = w[0] * w[0];  // front
    const double r2 = w[1] * w[1];  // right
    const double b2 = w[2] * w[2];  // back
    const double l2 = w[3] * w[3];  // left
    MotorOutput out;
    out.thrust = p.thrust_coeff * (f2 + r2 + b2 + l2);
    out.torque.roll = p.arm_length * p.thrust_coeff * (l2 - r2);
    out.torque.pitch = p.arm_length * p.thrust_coeff * (b2 - f2);
    out.torque.yaw = p.drag_coeff * (f2 + b2 - l2 - r2);
    return out;
}

StateDeriv state_derivative(const QuadState& s, const std::array<double, 4>& speeds,
                            const QuadParams& p) {
    MotorOutput mo = motor_forces(speeds, p);
    StateDeriv d;
    d.d_position = s.velocity;
    d.d_velocity = translational_acceleration(s, mo.thrust, p);
    d.d_angles = euler_rate_matrix(s.angles) * s.rates;
    d.d_rates = angular_acceleration(s.rates, mo.torque, p);
    return d;
}

namespace {

QuadState advance(const QuadState& s, const StateDeriv& d, double h) {
    QuadState out;
    out.position = s.position + h * d.d_position;
    out.velocity = s.velocity + h * d.d_velocity;
    out.angles = s.angles + h * d.d_angles;
    out.rates = s.rates + h * d.d_rates;
    return out;
}

}  // namespace

QuadState rk4_step(const QuadState& s, double t, double dt, const DerivFn& f) {
    StateDeriv k1 = f(s, t);
    StateDeriv k2 = f(advance(s, k1, dt / 2.0), t + dt / 2.0);
    StateDeriv k3 = f(advance(s, k2, dt / 2.0), t + dt / 2.0);
    StateDeriv k4 = f(advance(s, k3, dt), t + dt);
    QuadState out;
    out.position = s.position + dt / 6.0 * (k1.d_position + 2.0 * k2.d_position +
                                            2.0 * k3.d_position + k4.d_position);
    out.velocity = s.velocity + dt / 6.0 * (k1.d_velocity + 2.0 * k2.d_velocity +
                                            2.0 * k3.d_velocity + k4.d_velocity);
    out.angles = s.angles +
                 dt / 6.0 * (k1.d_angles + 2.0 * k2.d_angles + 2.0 * k3.d_angles + k4.d_angles);
    out.rates = s.rates +
                dt / 6.0 * (k1.d_rates + 2.0 * k2.d_rates + 2.0 * k3.d_rates + k4.d_rates);
    return out;
}

QuadState step(const QuadState& state, const std::array<double, 4>& speeds, double dt,
               const QuadParams& p) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    return rk4_step(state, 0.0, dt,
                    [&](const QuadState& s, double) { return state_derivative(s, speeds, p); });
}

}  // namespace quadel
