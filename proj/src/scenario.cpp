// Copyright 2026 The swarmplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swarmplan/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace swarmplan {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) parse_fail(path, std::string("missing field '") + key + "'");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) parse_fail(path, "expected a number");
    return j.get<double>();
}

Vec2 as_vec2(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) parse_fail(path, "expected [x, y]");
    return Vec2{as_number(j[0], path), as_number(j[1], path)};
}

Pose as_pose(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) parse_fail(path, "expected [x, y, theta]");
    return Pose{as_number(j[0], path), as_number(j[1], path),
                normalize_angle(as_number(j[2], path))};
}

Polygon as_polygon(const json& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected a vertex list");
    std::vector<Vec2> verts;
    verts.reserve(j.size());
    for (const auto& v : j) verts.push_back(as_vec2(v, path));
    try {
        return Polygon(std::move(verts));
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

double get_or(const json& j, const char* key, double fallback,
              const std::string& path) {
    auto it = j.find(key);
    return it == j.end() ? fallback : as_number(*it, path + "." + key);
}

OccupancyGrid parse_grid(const json& j, const std::string& path) {
    OccupancyGrid grid;
    grid.origin = as_pose(require(j, "origin", path), path + ".origin");
    grid.resolution = as_number(require(j, "resolution", path), path + ".resolution");
    grid.width = static_cast<int>(as_number(require(j, "width", path), path + ".width"));
    grid.height = static_cast<int>(as_number(require(j, "height", path), path + ".height"));
    if (!(grid.resolution > 0.0) || grid.width < 1 || grid.height < 1) {
        throw ValidationError(path + ": grid needs resolution > 0 and dimensions >= 1");
    }
    grid.occupancy.assign(static_cast<std::size_t>(grid.width) * grid.height, 0);
    if (auto rows = j.find("rows"); rows != j.end()) {
        // Row strings, top row first; '#' occupied, '.' free.
        if (!rows->is_array() || static_cast<int>(rows->size()) != grid.height) {
            parse_fail(path, "grid.rows must have `height` strings");
        }
        for (int r = 0; r < grid.height; ++r) {
            const std::string row = (*rows)[r].get<std::string>();
            if (static_cast<int>(row.size()) != grid.width) {
                parse_fail(path, "grid.rows strings must have `width` characters");
            }
            const int iy = grid.height - 1 - r;
            for (int ix = 0; ix < grid.width; ++ix) {
                grid.occupancy[static_cast<std::size_t>(iy) * grid.width + ix] =
                    row[ix] == '#' ? 255 : 0;
            }
        }
    } else if (auto data = j.find("data"); data != j.end()) {
        if (!data->is_array() ||
            data->size() != grid.occupancy.size()) {
            parse_fail(path, "grid.data must have width*height entries");
        }
        for (std::size_t i = 0; i < grid.occupancy.size(); ++i) {
            grid.occupancy[i] = static_cast<std::uint8_t>(
                (*data)[i].get<int>());
        }
    } else {
        parse_fail(path, "grid needs 'rows' or 'data'");
    }
    return grid;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("scenario: expected a JSON object");

    Scenario sc{
        .driving_area = as_polygon(require(doc, "driving_area", "scenario"),
                                   "driving_area"),
    };
    // Fails early when the boundary chains cannot be paired.
    try {
        Centerline probe(sc.driving_area);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("driving_area: ") + e.what());
    }

    const json& mode = require(doc, "mode", "scenario");
    sc.desired_velocity =
        as_number(require(mode, "desired_velocity", "mode"), "mode.desired_velocity");
    sc.speed_limit =
        as_number(require(mode, "speed_limit", "mode"), "mode.speed_limit");
    sc.lateral_bias = get_or(mode, "lateral_bias", 0.0, "mode");
    if (!(sc.desired_velocity >= 0.0) || sc.desired_velocity > sc.speed_limit) {
        throw ValidationError(
            "mode: requires 0 <= desired_velocity <= speed_limit");
    }
    if (auto lines = mode.find("stop_lines"); lines != mode.end()) {
        for (std::size_t i = 0; i < lines->size(); ++i) {
            const json& lj = (*lines)[i];
            const std::string lp = "mode.stop_lines[" + std::to_string(i) + "]";
            StopLineSpec line;
            line.p1 = as_vec2(require(lj, "p1", lp), lp + ".p1");
            line.p2 = as_vec2(require(lj, "p2", lp), lp + ".p2");
            if (auto a = lj.find("active"); a != lj.end()) {
                line.active = a->get<bool>();
            }
            line.active_from = get_or(lj, "active_from", -kInfDistance, lp);
            line.active_until = get_or(lj, "active_until", kInfDistance, lp);
            sc.stop_lines.push_back(line);
        }
    }

    if (auto statics = doc.find("static_obstacles"); statics != doc.end()) {
        for (std::size_t i = 0; i < statics->size(); ++i) {
            sc.static_obstacles.push_back(as_polygon(
                (*statics)[i], "static_obstacles[" + std::to_string(i) + "]"));
        }
    }
    if (auto gj = doc.find("grid"); gj != doc.end()) {
        const OccupancyGrid grid = parse_grid(*gj, "grid");
        const auto threshold = static_cast<std::uint8_t>(
            get_or(*gj, "threshold", 128.0, "grid"));
        for (Polygon& poly : extract_obstacle_polygons(grid, threshold)) {
            sc.static_obstacles.push_back(std::move(poly));
        }
    }

    const json& ego = require(doc, "ego", "scenario");
    sc.ego_start = as_pose(require(ego, "start", "ego"), "ego.start");
    const json& fp = require(ego, "footprint", "ego");
    sc.footprint_length = as_number(require(fp, "length", "ego.footprint"),
                                    "ego.footprint.length");
    sc.footprint_width = as_number(require(fp, "width", "ego.footprint"),
                                   "ego.footprint.width");

    const json& planner = require(doc, "planner", "scenario");
    PlannerConfig& pc = sc.planner;
    pc.dt = as_number(require(planner, "dt", "planner"), "planner.dt");
    pc.horizon_steps = static_cast<int>(as_number(
        require(planner, "horizon_steps", "planner"), "planner.horizon_steps"));
    pc.prefix_len =
        static_cast<int>(get_or(planner, "prefix_len", 3.0, "planner"));
    SwarmConfig& sw = pc.swarm;
    sw.n_particles = static_cast<int>(as_number(
        require(planner, "particles", "planner"), "planner.particles"));
    sw.max_iterations = static_cast<int>(as_number(
        require(planner, "max_iterations", "planner"), "planner.max_iterations"));
    sw.seed = static_cast<std::uint64_t>(
        get_or(planner, "seed", 0.0, "planner"));
    sw.w_v = get_or(planner, "w_v", sw.w_v, "planner");
    sw.w_p = get_or(planner, "w_p", sw.w_p, "planner");
    sw.w_g = get_or(planner, "w_g", sw.w_g, "planner");
    sw.time_budget = get_or(planner, "time_budget", 0.0, "planner");
    if (auto t = planner.find("fitness_target"); t != planner.end()) {
        sw.fitness_target = as_number(*t, "planner.fitness_target");
    }
    sw.diversity_epsilon =
        get_or(planner, "diversity_epsilon", sw.diversity_epsilon, "planner");
    sw.carryover_drop_rate = get_or(planner, "carryover_drop_rate",
                                    sw.carryover_drop_rate, "planner");
    sw.min_valid_fraction = get_or(planner, "min_valid_fraction",
                                   sw.min_valid_fraction, "planner");
    sw.retry_rounds = static_cast<int>(
        get_or(planner, "retry_rounds", sw.retry_rounds, "planner"));
    sw.threads =
        static_cast<int>(get_or(planner, "threads", sw.threads, "planner"));
    if (auto s = planner.find("scalar_u"); s != planner.end()) {
        sw.scalar_u = s->get<bool>();
    }
    if (pc.dt <= 0.0 || pc.horizon_steps < 2 || pc.prefix_len < 0 ||
        sw.n_particles < 2 || sw.max_iterations < 1) {
        throw ValidationError(
            "planner: requires dt > 0, horizon_steps >= 2, particles >= 2, "
            "max_iterations >= 1");
    }
    if (sw.carryover_drop_rate < 0.0 || sw.carryover_drop_rate > 1.0) {
        throw ValidationError("planner: carryover_drop_rate must be in [0, 1]");
    }

    const json& weights = require(planner, "weights", "planner");
    CostWeights& w = pc.weights;
    w.velocity = get_or(weights, "velocity", 0.0, "planner.weights");
    w.acceleration = get_or(weights, "acceleration", 0.0, "planner.weights");
    w.jolt = get_or(weights, "jolt", 0.0, "planner.weights");
    w.driving_area = get_or(weights, "driving_area", 0.0, "planner.weights");
    w.orientation = get_or(weights, "orientation", 0.0, "planner.weights");
    w.yaw_rate = get_or(weights, "yaw_rate", 0.0, "planner.weights");
    w.halting = get_or(weights, "halting", 0.0, "planner.weights");
    w.obstacle_clearance =
        get_or(weights, "obstacle_clearance", 0.0, "planner.weights");
    w.lateral_bias = get_or(weights, "lateral_bias", 0.0, "planner.weights");
    const double weight_sum = w.velocity + w.acceleration + w.jolt +
                              w.driving_area + w.orientation + w.yaw_rate +
                              w.halting + w.obstacle_clearance + w.lateral_bias;
    const bool non_negative =
        w.velocity >= 0.0 && w.acceleration >= 0.0 && w.jolt >= 0.0 &&
        w.driving_area >= 0.0 && w.orientation >= 0.0 && w.yaw_rate >= 0.0 &&
        w.halting >= 0.0 && w.obstacle_clearance >= 0.0 &&
        w.lateral_bias >= 0.0;
    if (!non_negative || !(weight_sum > 0.0)) {
        throw ValidationError(
            "planner.weights: all weights must be >= 0 with at least one > 0");
    }

    const json& limits = require(planner, "limits", "planner");
    Limits& lim = pc.limits;
    lim.max_accel = get_or(limits, "max_accel", lim.max_accel, "planner.limits");
    lim.max_decel = get_or(limits, "max_decel", lim.max_decel, "planner.limits");
    lim.max_jolt = get_or(limits, "max_jolt", lim.max_jolt, "planner.limits");
    lim.max_yaw_rate =
        get_or(limits, "max_yaw_rate", lim.max_yaw_rate, "planner.limits");
    lim.max_steer_rate =
        get_or(limits, "max_steer_rate", lim.max_steer_rate, "planner.limits");
    lim.min_clearance =
        get_or(limits, "min_clearance", lim.min_clearance, "planner.limits");
    if (!(lim.max_accel > 0.0) || !(lim.max_decel > 0.0) ||
        !(lim.max_jolt > 0.0) || !(lim.max_yaw_rate > 0.0) ||
        !(lim.max_steer_rate > 0.0) || !(lim.min_clearance > 0.0)) {
        throw ValidationError("planner.limits: all limits must be > 0");
    }
    if (auto shaping = planner.find("shaping"); shaping != planner.end()) {
        CostShaping& sh = pc.shaping;
        sh.area_margin = get_or(*shaping, "area_margin", sh.area_margin,
                                "planner.shaping");
        sh.clear_base = get_or(*shaping, "clear_base", sh.clear_base,
                               "planner.shaping");
        sh.clear_per_speed = get_or(*shaping, "clear_per_speed",
                                    sh.clear_per_speed, "planner.shaping");
        sh.brake_ratio = get_or(*shaping, "brake_ratio", sh.brake_ratio,
                                "planner.shaping");
    }

    if (auto prefix = ego.find("prefix"); prefix != ego.end()) {
        for (const auto& pj : *prefix) {
            sc.ego_prefix.push_back(as_pose(pj, "ego.prefix"));
        }
        if (static_cast<int>(sc.ego_prefix.size()) != pc.prefix_len) {
            throw ValidationError("ego.prefix: expected prefix_len (" +
                                  std::to_string(pc.prefix_len) + ") poses");
        }
    } else {
        // Vehicle initially at rest.
        sc.ego_prefix.assign(pc.prefix_len, sc.ego_start);
    }

    if (auto dyn = doc.find("dynamic_obstacles"); dyn != doc.end()) {
        for (std::size_t i = 0; i < dyn->size(); ++i) {
            const json& dj = (*dyn)[i];
            const std::string dp = "dynamic_obstacles[" + std::to_string(i) + "]";
            DynamicObstacleSpec spec{
                .shape = as_polygon(require(dj, "shape", dp), dp + ".shape"),
            };
            if (auto poses = dj.find("poses"); poses != dj.end()) {
                for (const auto& pj : *poses) {
                    spec.poses.push_back(as_pose(pj, dp + ".poses"));
                }
                if (static_cast<int>(spec.poses.size()) <
                    pc.horizon_steps + 1) {
                    throw ValidationError(
                        dp + ": predicted poses must cover the planning "
                             "horizon (horizon_steps + 1 entries)");
                }
                spec.start = spec.poses.front();
            } else if (auto vel = dj.find("velocity"); vel != dj.end()) {
                spec.start = as_pose(require(dj, "start", dp), dp + ".start");
                spec.velocity = as_vec2(*vel, dp + ".velocity");
                spec.has_velocity = true;
            } else {
                parse_fail(dp, "needs 'poses' or 'start' + 'velocity'");
            }
            sc.dynamic_obstacles.push_back(std::move(spec));
        }
    }

    // Ego must start strictly inside the driving area.
    if (!(point_polygon_distance({sc.ego_start.x, sc.ego_start.y},
                                 sc.driving_area) < 0.0)) {
        throw ValidationError("ego.start: not strictly inside driving_area");
    }
    // Footprint construction validates circle covering.
    FootprintModel::for_rectangle(sc.footprint_length, sc.footprint_width);

    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

EnvironmentSnapshot make_snapshot(const Scenario& scenario, double t_now,
                                  double t_anchor, const Pose& ego_start,
                                  const std::vector<Pose>& ego_prefix) {
    DrivingMode mode;
    mode.desired_velocity = scenario.desired_velocity;
    mode.speed_limit = scenario.speed_limit;
    mode.lateral_bias = scenario.lateral_bias;
    for (const StopLineSpec& line : scenario.stop_lines) {
        mode.stop_lines.push_back(StopLine{
            line.p1, line.p2,
            line.active && t_now >= line.active_from &&
                t_now < line.active_until});
    }

    const double dt = scenario.planner.dt;
    const int horizon = scenario.planner.horizon_steps;
    std::vector<DynamicObstacle> dynamic;
    for (const DynamicObstacleSpec& spec : scenario.dynamic_obstacles) {
        DynamicObstacle dyn{.shape = spec.shape, .predicted_poses = {}};
        dyn.predicted_poses.reserve(horizon + 1);
        if (spec.has_velocity) {
            for (int i = 0; i <= horizon; ++i) {
                const double t = t_anchor + i * dt;
                dyn.predicted_poses.push_back(Pose{
                    spec.start.x + spec.velocity.x * t,
                    spec.start.y + spec.velocity.y * t, spec.start.theta});
            }
        } else {
            // Explicit poses sit on the dt grid from t=0; hold the last
            // pose once the list is exhausted.
            const int base = static_cast<int>(std::lround(t_anchor / dt));
            const int last = static_cast<int>(spec.poses.size()) - 1;
            for (int i = 0; i <= horizon; ++i) {
                dyn.predicted_poses.push_back(
                    spec.poses[std::min(base + i, last)]);
            }
        }
        dynamic.push_back(std::move(dyn));
    }

    EnvironmentSnapshot snap{
        .driving_area = scenario.driving_area,
        .mode = std::move(mode),
        .static_obstacles = scenario.static_obstacles,
        .dynamic_obstacles = std::move(dynamic),
        .ego_start = ego_start,
        .ego_prefix = ego_prefix,
        .timestamp = t_now,
        .footprint = FootprintModel::for_rectangle(scenario.footprint_length,
                                                   scenario.footprint_width),
        .centerline = Centerline(scenario.driving_area),
        .step_obstacles = {}};
    if (!(point_polygon_distance({ego_start.x, ego_start.y},
                                 snap.driving_area) < 0.0)) {
        throw ValidationError("ego pose left the driving area");
    }
    cache_step_obstacles(snap, horizon);
    return snap;
}

}  // namespace swarmplan
