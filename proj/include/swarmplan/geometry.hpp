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
//
// 2D primitives for collision and clearance: simple polygons (possibly
// non-convex; obstacles traced from grids are rarely convex), the ego
// footprint as a set of covering circles, signed distances, and the
// driving-area centerline.

#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "swarmplan/control_space.hpp"
#include "swarmplan/errors.hpp"

namespace swarmplan {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline constexpr double kInfDistance = std::numeric_limits<double>::infinity();

/// Simple polygon, counter-clockwise, signed area > 0. Construction
/// normalizes orientation and rejects degenerate or self-intersecting
/// rings (edges touching at shared points are allowed, so contours
/// pinched at a grid corner remain representable).
class Polygon {
public:
    explicit Polygon(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    double signed_area() const { return area_; }

    /// Nonzero winding number; points on the boundary count as inside.
    bool contains(const Vec2& p) const;

    /// Distance to the bounding box; a lower bound on the boundary
    /// distance for points outside, 0 inside the box.
    double aabb_distance(const Vec2& p) const {
        const double dx =
            p.x < min_.x ? min_.x - p.x : (p.x > max_.x ? p.x - max_.x : 0.0);
        const double dy =
            p.y < min_.y ? min_.y - p.y : (p.y > max_.y ? p.y - max_.y : 0.0);
        return dx > 0.0 && dy > 0.0 ? std::hypot(dx, dy) : dx + dy;
    }

private:
    std::vector<Vec2> vertices_;
    double area_{0.0};
    Vec2 min_;
    Vec2 max_;
};

/// Signed distance to the polygon boundary: negative inside, positive
/// outside, zero on an edge.
double point_polygon_distance(const Vec2& p, const Polygon& poly);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

struct Circle {
    Vec2 center;  // body frame
    double radius{0.0};
};

/// Ego collision model: circles in the body frame whose union covers the
/// vehicle's length x width rectangle (verified by sampled containment at
/// construction).
class FootprintModel {
public:
    explicit FootprintModel(std::vector<Circle> circles, double length,
                            double width);

    /// Minimal covering with `count` equal circles spaced along the
    /// longitudinal axis.
    static FootprintModel for_rectangle(double length, double width,
                                        int count = 3);

    const std::vector<Circle>& circles() const { return circles_; }
    double length() const { return length_; }
    double width() const { return width_; }

private:
    std::vector<Circle> circles_;
    double length_{0.0};
    double width_{0.0};
};

/// Minimum over circles and obstacles of (distance from the world-frame
/// circle center to the obstacle boundary, signed) minus the radius.
/// Negative means penetration; +inf with no obstacles.
double footprint_clearance(const Pose& pose, const FootprintModel& fp,
                           std::span<const Polygon> obstacles);

/// Minimum over circles of (-signed distance to the area boundary - radius):
/// positive when every circle lies fully inside the area.
double containment_margin(const Pose& pose, const FootprintModel& fp,
                          const Polygon& area);

/// Driving-area centerline: midpoints of paired boundary vertices, ordered
/// along the travel direction, with arc-length bookkeeping.
class Centerline {
public:
    /// area must have an even vertex count 2m >= 4; after CCW normalization
    /// vertex i pairs with vertex 2m-1-i.
    explicit Centerline(const Polygon& area);

    struct Projection {
        double s{0.0};        // arc length of the closest point
        double lateral{0.0};  // signed offset, positive left of travel
        double heading{0.0};  // direction of the closest segment
    };

    Projection project(const Vec2& p) const;
    double length() const { return total_length_; }
    const std::vector<Vec2>& points() const { return points_; }

    /// Arc length at which a segment crosses the centerline, if it does.
    bool intersect_segment(const Vec2& a, const Vec2& b, double* s_out) const;

private:
    std::vector<Vec2> points_;
    std::vector<double> cum_length_;
    double total_length_{0.0};
};

}  // namespace swarmplan
