// Shared fixtures and independent oracles for the test suite. The oracle
// code deliberately re-implements the checks it verifies (ray casting
// instead of winding, its own finite differences, its own per-step limit
// checks) and must stay independent of the library implementation paths.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "swarmplan/environment.hpp"
#include "swarmplan/evaluation.hpp"
#include "swarmplan/geometry.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/trajectory.hpp"

namespace testutil {

using namespace swarmplan;

inline Polygon rect(double x0, double y0, double x1, double y1) {
    return Polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

// ---------------------------------------------------------------------------
// Oracle: point-in-polygon by ray casting (independent of the winding code).

inline bool oracle_inside(const Vec2& p, const Polygon& poly) {
    bool in = false;
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y)) {
            const double x_cross =
                v[j].x + (p.y - v[j].y) / (v[i].y - v[j].y) * (v[i].x - v[j].x);
            if (p.x < x_cross) in = !in;
        }
    }
    return in;
}

// Oracle: distance to the polygon boundary via its own segment math.
inline double oracle_boundary_distance(const Vec2& p, const Polygon& poly) {
    double best = 1e300;
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        const double abx = b.x - a.x, aby = b.y - a.y;
        const double len2 = abx * abx + aby * aby;
        double t = len2 > 0 ? ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2 : 0.0;
        t = std::max(0.0, std::min(1.0, t));
        const double dx = p.x - (a.x + t * abx);
        const double dy = p.y - (a.y + t * aby);
        best = std::min(best, std::sqrt(dx * dx + dy * dy));
    }
    return best;
}

inline double oracle_signed_distance(const Vec2& p, const Polygon& poly) {
    const double d = oracle_boundary_distance(p, poly);
    return oracle_inside(p, poly) ? -d : d;
}

// Oracle: footprint clearance by brute force over circles and obstacles.
inline double oracle_clearance(const Pose& pose, const FootprintModel& fp,
                               const std::vector<Polygon>& obstacles) {
    if (obstacles.empty()) return 1e300;
    double worst = 1e300;
    for (const Circle& c : fp.circles()) {
        const double ct = std::cos(pose.theta), st = std::sin(pose.theta);
        const Vec2 center{pose.x + c.center.x * ct - c.center.y * st,
                          pose.y + c.center.x * st + c.center.y * ct};
        for (const Polygon& obs : obstacles) {
            worst = std::min(worst,
                             oracle_signed_distance(center, obs) - c.radius);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Oracle: independent per-step validity check of every hard constraint.

struct OracleVerdict {
    bool valid{true};
    std::string reason;
};

inline OracleVerdict oracle_check_trajectory(const Trajectory& traj,
                                             const EnvironmentSnapshot& snap,
                                             const Limits& lim) {
    OracleVerdict verdict;
    auto fail = [&](const std::string& why) {
        verdict.valid = false;
        if (verdict.reason.empty()) verdict.reason = why;
    };
    const int n = traj.size();
    const int p = traj.prefix_len;
    std::vector<double> speed(n - 1), yaw(n - 1), kap(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        const Pose& a = traj.poses[i];
        const Pose& b = traj.poses[i + 1];
        const double dist = std::sqrt((b.x - a.x) * (b.x - a.x) +
                                      (b.y - a.y) * (b.y - a.y));
        speed[i] = dist / traj.dt;
        double dth = b.theta - a.theta;
        while (dth > kPi) dth -= 2 * kPi;
        while (dth <= -kPi) dth += 2 * kPi;
        yaw[i] = dth / traj.dt;
        kap[i] = dist > 1e-6 ? dth / dist : 0.0;
    }
    for (int i = p; i + 1 < n; ++i) {
        if (speed[i] > snap.mode.speed_limit) fail("speed limit");
        if (std::abs(yaw[i]) > lim.max_yaw_rate) fail("yaw rate");
    }
    for (int i = std::max(0, p - 1); i + 2 < n; ++i) {
        const double a = (speed[i + 1] - speed[i]) / traj.dt;
        if (a > lim.max_accel) fail("accel");
        if (a < -lim.max_decel) fail("decel");
        const double dk = std::abs(kap[i + 1] - kap[i]) / traj.dt;
        if (dk > lim.max_steer_rate) fail("steer rate");
    }
    for (int i = std::max(0, p - 2); i + 3 < n; ++i) {
        const double a0 = (speed[i + 1] - speed[i]) / traj.dt;
        const double a1 = (speed[i + 2] - speed[i + 1]) / traj.dt;
        if (std::abs((a1 - a0) / traj.dt) > lim.max_jolt) fail("jolt");
    }
    for (int k = p + 1; k < n; ++k) {
        const Pose& pose = traj.poses[k];
        std::vector<Polygon> obstacles = snap.static_obstacles;
        for (const DynamicObstacle& dyn : snap.dynamic_obstacles) {
            obstacles.push_back(
                transform_polygon(dyn.shape, dyn.predicted_poses[k - p]));
        }
        if (oracle_clearance(pose, snap.footprint, obstacles) <
            lim.min_clearance) {
            fail("clearance");
        }
        // Containment: every circle center at depth >= radius inside.
        const double ct = std::cos(pose.theta), st = std::sin(pose.theta);
        for (const Circle& c : snap.footprint.circles()) {
            const Vec2 center{pose.x + c.center.x * ct - c.center.y * st,
                              pose.y + c.center.x * st + c.center.y * ct};
            if (-oracle_signed_distance(center, snap.driving_area) < c.radius) {
                fail("containment");
            }
        }
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Snapshot fixture: straight corridor along +x, optionally with obstacles.

struct WorldOptions {
    double length{120.0};
    double half_width{4.0};
    double desired_velocity{3.0};
    double speed_limit{5.0};
    std::vector<Polygon> static_obstacles;
    std::vector<DynamicObstacle> dynamic_obstacles;
    Pose ego_start{2.0, 0.0, 0.0};
};

inline EnvironmentSnapshot corridor_snapshot(const WorldOptions& opt = {}) {
    Polygon area({{0.0, -opt.half_width},
                  {opt.length, -opt.half_width},
                  {opt.length, opt.half_width},
                  {0.0, opt.half_width}});
    EnvironmentSnapshot snap{
        .driving_area = area,
        .mode = DrivingMode{opt.desired_velocity, opt.speed_limit, {}, 0.0},
        .static_obstacles = opt.static_obstacles,
        .dynamic_obstacles = opt.dynamic_obstacles,
        .ego_start = opt.ego_start,
        .ego_prefix = {},
        .timestamp = 0.0,
        .footprint = FootprintModel::for_rectangle(3.2, 1.6),
        .centerline = Centerline(area),
        .step_obstacles = {}};
    return snap;
}

// Straight constant-speed trajectory along the corridor axis.
inline Trajectory straight_trajectory(int n, double dt, double speed,
                                      Pose start = {2.0, 0.0, 0.0},
                                      int prefix_len = 3) {
    Trajectory traj;
    traj.dt = dt;
    traj.prefix_len = prefix_len;
    traj.frozen_len = 0;
    traj.t0 = -prefix_len * dt;
    Pose p = start;
    p.x -= prefix_len * speed * dt;
    for (int i = 0; i < n; ++i) {
        traj.poses.push_back(p);
        p.x += speed * dt;
    }
    return traj;
}

// Randomized 25-pose probe trajectory for oracle-agreement tests: a gentle
// jittered cruise that stays within the default limits, with occasional
// injected speed or curvature spikes so both verdicts occur.
template <typename Rng>
inline Trajectory random_probe_trajectory(Rng& gen, const Pose& start) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double v0 = 1.5 + 3.0 * u(gen);
    const int spike_speed_at = u(gen) < 0.35 ? static_cast<int>(u(gen) * 24) : -1;
    const int spike_curv_at = u(gen) < 0.35 ? static_cast<int>(u(gen) * 24) : -1;

    ControlSequence seq;
    seq.dt = 0.3;
    double v = v0;
    double kappa = 0.0;
    for (int i = 0; i < 24; ++i) {
        double dv = (u(gen) - 0.5) * 0.42;
        double dk = (u(gen) - 0.5) * 0.10;
        if (i == spike_speed_at) dv *= 4.0;
        if (i == spike_curv_at) dk += (u(gen) < 0.5 ? -0.25 : 0.25);
        v = std::max(0.0, v + dv);
        kappa += dk;
        seq.controls.push_back({v * seq.dt, kappa});
    }
    Trajectory traj;
    traj.dt = seq.dt;
    traj.prefix_len = 3;
    traj.t0 = -0.9;
    for (int i = 3; i >= 1; --i) {
        traj.poses.push_back(Pose{start.x - i * v0 * seq.dt, start.y, 0.0});
    }
    for (const Pose& p : rollout(start, seq)) traj.poses.push_back(p);
    return traj;
}

struct ScenarioOptions {
    double length{150.0};
    double half_width{4.0};
    double desired_velocity{3.0};
    double speed_limit{5.0};
    double start_speed{3.0};
    std::vector<Polygon> static_obstacles;
    int particles{24};
    int max_iterations{25};
    std::uint64_t seed{1};
};

// Straight-corridor scenario built directly (no JSON round trip).
inline Scenario corridor_scenario(const ScenarioOptions& opt = {}) {
    PlannerConfig pc;
    pc.swarm.n_particles = opt.particles;
    pc.swarm.max_iterations = opt.max_iterations;
    pc.swarm.seed = opt.seed;
    pc.weights.velocity = 1.0;
    pc.weights.acceleration = 0.2;
    pc.weights.jolt = 0.05;
    pc.weights.driving_area = 4.0;
    pc.weights.orientation = 0.5;
    pc.weights.yaw_rate = 0.3;
    pc.weights.halting = 2.0;
    pc.weights.obstacle_clearance = 4.0;
    pc.weights.lateral_bias = 0.3;

    const Pose start{4.0, 0.0, 0.0};
    std::vector<Pose> prefix;
    for (int i = pc.prefix_len; i >= 1; --i) {
        prefix.push_back(
            Pose{start.x - i * opt.start_speed * pc.dt, 0.0, 0.0});
    }
    return Scenario{
        .driving_area = Polygon({{0.0, -opt.half_width},
                                 {opt.length, -opt.half_width},
                                 {opt.length, opt.half_width},
                                 {0.0, opt.half_width}}),
        .desired_velocity = opt.desired_velocity,
        .speed_limit = opt.speed_limit,
        .stop_lines = {},
        .lateral_bias = 0.0,
        .static_obstacles = opt.static_obstacles,
        .dynamic_obstacles = {},
        .ego_start = start,
        .ego_prefix = prefix,
        .footprint_length = 3.2,
        .footprint_width = 1.6,
        .planner = pc};
}

}  // namespace testutil
