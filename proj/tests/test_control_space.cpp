#include <cmath>
#include <random>

#include "doctest.h"
#include "swarmplan/control_space.hpp"

using namespace swarmplan;

namespace {

bool pose_close(const Pose& a, const Pose& b, double tol = 1e-9) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
           std::abs(normalize_angle(a.theta - b.theta)) <= tol;
}

ControlSequence constant_sequence(double l, double kappa, int steps,
                                  double dt = 0.3) {
    ControlSequence seq;
    seq.dt = dt;
    seq.controls.assign(steps, Control{l, kappa});
    return seq;
}

}  // namespace

TEST_CASE("normalize_angle maps into (-pi, pi]") {
    CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(3 * kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(2 * kPi) == doctest::Approx(0.0));
    CHECK(normalize_angle(-0.5) == doctest::Approx(-0.5));
    for (double a = -20.0; a < 20.0; a += 0.173) {
        const double w = normalize_angle(a);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        CHECK(std::abs(std::remainder(w - a, 2 * kPi)) < 1e-12);
    }
}

TEST_CASE("apply_control: straight step") {
    const Pose out = apply_control({0, 0, 0}, {1.0, 0.0});
    CHECK(pose_close(out, {1.0, 0.0, 0.0}));
}

TEST_CASE("apply_control: half-turn step lands sideways") {
    // l=1, kappa=pi: offset (cos(pi/2), sin(pi/2)), heading pi.
    const Pose out = apply_control({0, 0, 0}, {1.0, kPi});
    CHECK(pose_close(out, {0.0, 1.0, kPi}));
}

TEST_CASE("apply_control: body frame rotates with the start pose") {
    // Hand-derived: straight step from heading pi/2 moves +y.
    const Pose out = apply_control({2.0, 1.0, kPi / 2}, {1.0, 0.0});
    CHECK(pose_close(out, {2.0, 2.0, kPi / 2}));
}

TEST_CASE("rollout: repeated straight steps") {
    const auto poses = rollout({0, 0, 0}, constant_sequence(1.0, 0.0, 2));
    REQUIRE(poses.size() == 3);
    CHECK(pose_close(poses[0], {0, 0, 0}));
    CHECK(pose_close(poses[1], {1, 0, 0}));
    CHECK(pose_close(poses[2], {2, 0, 0}));
}

TEST_CASE("rollout: heading wraps after two half-turn steps") {
    const auto poses = rollout({0, 0, 0}, constant_sequence(1.0, kPi, 2));
    REQUIRE(poses.size() == 3);
    CHECK(std::abs(normalize_angle(poses[2].theta)) < 1e-12);
}

TEST_CASE("rollout: constant-curvature round trip recovers kappa") {
    const double kappa = 0.42;
    const auto poses = rollout({1.0, -2.0, 0.3}, constant_sequence(0.8, kappa, 10));
    for (std::size_t i = 0; i + 1 < poses.size(); ++i) {
        const Control c = inverse_control(poses[i], poses[i + 1]);
        CHECK(c.l == doctest::Approx(0.8).epsilon(1e-9));
        CHECK(c.kappa == doctest::Approx(kappa).epsilon(1e-9));
    }
}

TEST_CASE("inverse_control: examples") {
    SUBCASE("straight") {
        const Control c = inverse_control({0, 0, 0}, {1, 0, 0});
        CHECK(c.l == doctest::Approx(1.0));
        CHECK(c.kappa == doctest::Approx(0.0));
    }
    SUBCASE("half turn") {
        const Control c = inverse_control({0, 0, 0}, {0, 1, kPi});
        CHECK(c.l == doctest::Approx(1.0));
        CHECK(c.kappa == doctest::Approx(kPi));
    }
    SUBCASE("sideways without heading change is unreachable") {
        CHECK_THROWS_AS(inverse_control({0, 0, 0}, {0, 1, 0}), NotReachable);
    }
    SUBCASE("in-place rotation is rejected") {
        CHECK_THROWS_AS(inverse_control({0, 0, 0}, {0, 0, 1.0}),
                        ZeroLengthRotation);
    }
    SUBCASE("stationary pair maps to the zero control") {
        const Control c = inverse_control({1, 2, 0.5}, {1, 2, 0.5});
        CHECK(c.l == 0.0);
        CHECK(c.kappa == 0.0);
    }
}

TEST_CASE("inverse_control inverts apply_control over the control domain") {
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> len(1e-5, 2.0);
    std::uniform_real_distribution<double> curv(-3.0, 3.0);
    std::uniform_real_distribution<double> coord(-50.0, 50.0);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int i = 0; i < 10000; ++i) {
        const Pose p{coord(gen), coord(gen), ang(gen)};
        const Control c{len(gen), curv(gen)};
        const Control back = inverse_control(p, apply_control(p, c));
        CHECK(std::abs(back.l - c.l) < 1e-9);
        CHECK(std::abs(back.kappa - c.kappa) < 1e-9);
    }
}

TEST_CASE("round trip covers heading sweeps beyond a half turn") {
    // |kappa*l| in (pi, 2*pi): the normalized pose difference aliases and
    // the inverse must unwrap it.
    const Pose p{0.5, -0.25, 0.4};
    for (double sweep : {2.0, 3.0, -2.5, 5.0, -5.5}) {
        const Control c{1.2, sweep / 1.2};
        const Control back = inverse_control(p, apply_control(p, c));
        CHECK(std::abs(back.l - c.l) < 1e-9);
        CHECK(std::abs(back.kappa - c.kappa) < 1e-9);
    }
}

TEST_CASE("rollout is equivariant under rigid transforms") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> len(0.0, 1.5);
    std::uniform_real_distribution<double> curv(-2.0, 2.0);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int trial = 0; trial < 50; ++trial) {
        ControlSequence seq;
        seq.dt = 0.3;
        for (int i = 0; i < 12; ++i) seq.controls.push_back({len(gen), curv(gen)});

        const Pose start{coord(gen), coord(gen), ang(gen)};
        const Pose g{coord(gen), coord(gen), ang(gen)};
        auto compose = [](const Pose& a, const Pose& b) {
            const double ct = std::cos(a.theta), st = std::sin(a.theta);
            return Pose{a.x + b.x * ct - b.y * st, a.y + b.x * st + b.y * ct,
                        normalize_angle(a.theta + b.theta)};
        };
        const auto direct = rollout(compose(g, start), seq);
        const auto moved = rollout(start, seq);
        for (std::size_t i = 0; i < direct.size(); ++i) {
            CHECK(pose_close(direct[i], compose(g, moved[i]), 1e-9));
        }
    }
}

TEST_CASE("heading consistency: chord direction is half the heading change") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> len(0.05, 1.5);
    std::uniform_real_distribution<double> curv(-2.0, 2.0);
    ControlSequence seq;
    seq.dt = 0.3;
    for (int i = 0; i < 20; ++i) seq.controls.push_back({len(gen), curv(gen)});
    const auto poses = rollout({0, 0, 0}, seq);
    for (std::size_t i = 0; i + 1 < poses.size(); ++i) {
        const Pose& a = poses[i];
        const Pose& b = poses[i + 1];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double body_dir = std::atan2(-dx * std::sin(a.theta) + dy * std::cos(a.theta),
                                           dx * std::cos(a.theta) + dy * std::sin(a.theta));
        const double half_sweep = 0.5 * seq.controls[i].kappa * seq.controls[i].l;
        CHECK(std::abs(normalize_angle(body_dir - half_sweep)) < 1e-9);
    }
}

TEST_CASE("interpolate_controls") {
    SUBCASE("constant-curvature blend stays constant curvature") {
        const auto a = constant_sequence(1.0, 1.0, 24);
        const auto b = constant_sequence(1.0, -0.3, 24);
        const auto mid = interpolate_controls(a, b, 0.5);
        for (const Control& c : mid.controls) {
            CHECK(std::abs(c.kappa - 0.35) < 1e-12);
            CHECK(std::abs(c.l - 1.0) < 1e-12);
        }
    }
    SUBCASE("endpoints reproduce the inputs") {
        const auto a = constant_sequence(0.7, 0.9, 5);
        const auto b = constant_sequence(1.3, -0.2, 5);
        const auto at_a = interpolate_controls(a, b, 0.0);
        const auto at_b = interpolate_controls(a, b, 1.0);
        for (int i = 0; i < 5; ++i) {
            CHECK(at_a.controls[i] == a.controls[i]);
            CHECK(at_b.controls[i] == b.controls[i]);
        }
    }
    SUBCASE("length blend") {
        const auto mid = interpolate_controls(constant_sequence(1.0, 0.0, 4),
                                              constant_sequence(3.0, 0.0, 4),
                                              0.25);
        for (const Control& c : mid.controls) {
            CHECK(c.l == doctest::Approx(1.5));
        }
    }
    SUBCASE("mismatched inputs") {
        CHECK_THROWS_AS(interpolate_controls(constant_sequence(1, 0, 4),
                                             constant_sequence(1, 0, 5), 0.5),
                        LengthMismatch);
        auto other_dt = constant_sequence(1, 0, 4, 0.2);
        CHECK_THROWS_AS(
            interpolate_controls(constant_sequence(1, 0, 4), other_dt, 0.5),
            LengthMismatch);
    }
    SUBCASE("arbitrary constant-curvature pairs stay constant") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> curv(-2.0, 2.0);
        std::uniform_real_distribution<double> alpha(0.0, 1.0);
        for (int t = 0; t < 100; ++t) {
            const double ka = curv(gen), kb = curv(gen), al = alpha(gen);
            const auto mid = interpolate_controls(constant_sequence(1, ka, 8),
                                                  constant_sequence(1, kb, 8), al);
            const double expect = (1 - al) * ka + al * kb;
            for (const Control& c : mid.controls) {
                CHECK(std::abs(c.kappa - expect) < 1e-12);
            }
        }
    }
}
