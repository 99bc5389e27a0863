#include <doctest.h>

#include <cmath>
#include <random>

#include "quadel/dynamics.hpp"
#include "helpers.hpp"

using namespace quadel;

namespace {

Eigen::Vector3d inertia_times(const QuadParams& p, const Eigen::Vector3d& w) {
    return {p.inertia_x * w.x(), p.inertia_y * w.y(), p.inertia_z * w.z()};
}

/// RK4 restricted to the rotational subsystem (the angular equation does
/// not depend on attitude or position).
Eigen::Vector3d rates_rk4(const Eigen::Vector3d& w, double dt, const QuadParams& p,
                          const Torque& tau) {
    auto f = [&](const Eigen::Vector3d& x) { return angular_acceleration(x, tau, p); };
    Eigen::Vector3d k1 = f(w);
    Eigen::Vector3d k2 = f(w + dt / 2.0 * k1);
    Eigen::Vector3d k3 = f(w + dt / 2.0 * k2);
    Eigen::Vector3d k4 = f(w + dt * k3);
    return w + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

TEST_CASE("angular acceleration follows the rigid-body equation") {
    SUBCASE("symmetric inertia cancels the gyroscopic term") {
        QuadParams p;
        p.inertia_x = p.inertia_y = p.inertia_z = 0.1;
        Eigen::Vector3d a =
            angular_acceleration({0.0, 1.0, 1.0}, Torque{0.01, 0.0, 0.0}, p);
        CHECK(a.x() == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(a.y() == doctest::Approx(0.0));
        CHECK(a.z() == doctest::Approx(0.0));
    }
    SUBCASE("rest with no torque stays at rest") {
        QuadParams p;
        Eigen::Vector3d a = angular_acceleration({0, 0, 0}, Torque{}, p);
        CHECK(a.norm() == 0.0);
    }
    SUBCASE("asymmetric inertia with unit rates") {
        QuadParams p;
        p.inertia_x = 0.1;
        p.inertia_y = 0.2;
        p.inertia_z = 0.3;
        Eigen::Vector3d a = angular_acceleration({1, 1, 1}, Torque{}, p);
        CHECK(a.x() == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(a.y() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a.z() == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("translational acceleration") {
    QuadParams p;
    QuadState s;
    SUBCASE("hover balance") {
        Eigen::Vector3d a = translational_acceleration(s, p.hover_thrust(), p);
        CHECK(a.norm() == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("free fall") {
        Eigen::Vector3d a = translational_acceleration(s, 0.0, p);
        CHECK(a.z() == doctest::Approx(-p.gravity));
        CHECK(a.x() == 0.0);
    }
    SUBCASE("rolled thrust tilts sideways") {
        s.angles = {M_PI / 6.0, 0.0, 0.0};
        Eigen::Vector3d a = translational_acceleration(s, p.hover_thrust(), p);
        CHECK(a.y() == doctest::Approx(-p.gravity / 2.0).epsilon(1e-12));
        CHECK(a.z() == doctest::Approx(p.gravity * (std::sqrt(3.0) / 2.0 - 1.0)).epsilon(1e-12));
        CHECK(a.x() == doctest::Approx(0.0));
    }
}

TEST_CASE("motor forces for the plus configuration") {
    SUBCASE("equal speeds hover with zero torque") {
        QuadParams p;
        double w = 300.0;
        MotorOutput out = motor_forces({w, w, w, w}, p);
        CHECK(out.thrust == doctest::Approx(4.0 * p.thrust_coeff * w * w));
        CHECK(out.torque.roll == 0.0);
        CHECK(out.torque.pitch == 0.0);
        CHECK(out.torque.yaw == 0.0);
    }
    SUBCASE("symmetric left/right shift in squared speed is pure roll") {
        QuadParams p;
        double base = 300.0 * 300.0, delta = 5000.0;
        MotorOutput out = motor_forces(
            {300.0, std::sqrt(base - delta), 300.0, std::sqrt(base + delta)}, p);
        CHECK(out.torque.roll > 0.0);
        CHECK(out.torque.pitch == 0.0);
        CHECK(out.torque.yaw == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("hand-substituted sample") {
        QuadParams p;
        p.thrust_coeff = 1.0;
        p.drag_coeff = 0.1;
        p.arm_length = 0.5;
        MotorOutput out = motor_forces({1.0, 2.0, 3.0, 4.0}, p);
        CHECK(out.thrust == doctest::Approx(30.0));
        CHECK(out.torque.roll == doctest::Approx(0.5 * (16.0 - 4.0)));
        CHECK(out.torque.pitch == doctest::Approx(0.5 * (9.0 - 1.0)));
        CHECK(out.torque.yaw == doctest::Approx(0.1 * (1.0 + 9.0 - 16.0 - 4.0)));
    }
    SUBCASE("linear in squared speeds") {
        QuadParams p;
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            auto r = [&] { return 100.0 + (rng() % 1000) / 5.0; };
            std::array<double, 4> a{r(), r(), r(), r()};
            std::array<double, 4> b{r(), r(), r(), r()};
            std::array<double, 4> c{};
            for (int i = 0; i < 4; ++i) c[i] = std::sqrt(a[i] * a[i] + b[i] * b[i]);
            MotorOutput fa = motor_forces(a, p), fb = motor_forces(b, p),
                        fc = motor_forces(c, p);
            CHECK(fc.thrust == doctest::Approx(fa.thrust + fb.thrust).epsilon(1e-12));
            CHECK(fc.torque.roll ==
                  doctest::Approx(fa.torque.roll + fb.torque.roll).epsilon(1e-9));
            CHECK(fc.torque.yaw ==
                  doctest::Approx(fa.torque.yaw + fb.torque.yaw).epsilon(1e-9));
        }
    }
}

TEST_CASE("hover input is a fixed point of step") {
    QuadParams p;
    double wh = p.hover_speed();
    QuadState s;
    s.position = {1.0, -2.0, 3.0};
    QuadState next = s;
    for (int i = 0; i < 100; ++i) next = step(next, {wh, wh, wh, wh}, 0.01, p);
    CHECK((next.position - s.position).norm() <= 1e-12);
    CHECK(next.velocity.norm() <= 1e-12);
    CHECK(next.angles.norm() <= 1e-12);
}

TEST_CASE("free fall from rest matches the closed form") {
    QuadParams p;
    QuadState s;
    double dt = 1e-3;
    for (int i = 0; i < 1000; ++i) s = step(s, {0, 0, 0, 0}, dt, p);
    CHECK(s.position.z() == doctest::Approx(-0.5 * p.gravity).epsilon(1e-10));
    CHECK(s.velocity.z() == doctest::Approx(-p.gravity).epsilon(1e-10));
}

TEST_CASE("pitch near the gimbal bound is rejected") {
    QuadParams p;
    QuadState s;
    s.angles = {0.0, M_PI / 2.0 - 1e-4, 0.0};
    CHECK_THROWS_AS(step(s, {0, 0, 0, 0}, 1e-3, p), GimbalProximity);
}

TEST_CASE("torque-free tumble conserves momentum and energy") {
    QuadParams p;
    p.inertia_x = 0.1;
    p.inertia_y = 0.2;
    p.inertia_z = 0.3;
    Eigen::Vector3d w(1.0, 1.0, 1.0);
    const double h0 = inertia_times(p, w).norm();
    const double e0 = 0.5 * w.dot(inertia_times(p, w));

    const double dt = 1e-3;
    for (int i = 0; i < 10000; ++i) w = rates_rk4(w, dt, p, Torque{});

    CHECK(std::abs(inertia_times(p, w).norm() - h0) / h0 < 1e-6);
    CHECK(std::abs(0.5 * w.dot(inertia_times(p, w)) - e0) / e0 < 1e-6);
}

TEST_CASE("RK4 error shrinks about sixteenfold when dt halves") {
    QuadParams p;
    // Smooth motor-speed profile around hover; stays far from gimbal lock.
    double wh = p.hover_speed();
    auto speeds_at = [&](double t) {
        return std::array<double, 4>{wh * (1.0 + 0.02 * std::sin(3.0 * t)),
                                     wh * (1.0 + 0.02 * std::cos(2.0 * t)),
                                     wh * (1.0 - 0.02 * std::sin(3.0 * t)),
                                     wh * (1.0 - 0.02 * std::cos(2.0 * t))};
    };
    DerivFn field = [&](const QuadState& s, double t) {
        return state_derivative(s, speeds_at(t), p);
    };
    auto integrate = [&](double dt) {
        QuadState s;
        double t = 0.0;
        int steps = static_cast<int>(std::llround(1.0 / dt));
        for (int i = 0; i < steps; ++i, t += dt) s = rk4_step(s, t, dt, field);
        return s;
    };

    QuadState ref = integrate(1e-5);
    auto err = [&](const QuadState& s) {
        return (s.position - ref.position).norm() + (s.velocity - ref.velocity).norm() +
               (s.angles - ref.angles).norm() + (s.rates - ref.rates).norm();
    };
    double e1 = err(integrate(4e-3));
    double e2 = err(integrate(2e-3));
    double ratio = e1 / e2;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("parameter validation") {
    QuadParams p;
    CHECK_NOTHROW(p.validate());
    p.inertia_z = 1.0;  // far beyond the other two combined
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
