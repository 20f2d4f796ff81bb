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

#include "swarmplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swarmplan {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

Vec2 sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

double shoelace_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

int orientation_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d = cross(sub(b, a), sub(c, a));
    if (d > 0.0) return 1;
    if (d < 0.0) return -1;
    return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Proper crossing of segment interiors, or collinear overlap longer than a
// point. Endpoint touches do not count.
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c,
                    const Vec2& d) {
    const int o1 = orientation_sign(a, b, c);
    const int o2 = orientation_sign(a, b, d);
    const int o3 = orientation_sign(c, d, a);
    const int o4 = orientation_sign(c, d, b);
    if (o1 != o2 && o3 != o4) {
        // Shared endpoints are a touch, not a crossing.
        const bool endpoint_touch =
            (a == c) || (a == d) || (b == c) || (b == d);
        if (!endpoint_touch) return true;
        return false;
    }
    if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
        // Collinear: overlapping in more than one point?
        double lo1 = std::min(a.x, b.x), hi1 = std::max(a.x, b.x);
        double lo2 = std::min(c.x, d.x), hi2 = std::max(c.x, d.x);
        double lo_y1 = std::min(a.y, b.y), hi_y1 = std::max(a.y, b.y);
        double lo_y2 = std::min(c.y, d.y), hi_y2 = std::max(c.y, d.y);
        const double ox = std::min(hi1, hi2) - std::max(lo1, lo2);
        const double oy = std::min(hi_y1, hi_y2) - std::max(lo_y1, lo_y2);
        return ox > 0.0 || oy > 0.0;
    }
    return false;
}

}  // namespace

Polygon::Polygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) {
        throw ValidationError("polygon needs at least 3 vertices");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i] == vertices_[(i + 1) % vertices_.size()]) {
            throw ValidationError("polygon has coincident consecutive vertices");
        }
    }
    area_ = shoelace_area(vertices_);
    if (area_ < 0.0) {
        std::reverse(vertices_.begin(), vertices_.end());
        area_ = -area_;
    }
    if (!(area_ > 0.0)) {
        throw ValidationError("polygon has zero area");
    }
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Adjacent edges share a vertex by construction.
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (segments_cross(vertices_[i], vertices_[(i + 1) % n],
                               vertices_[j], vertices_[(j + 1) % n])) {
                throw ValidationError("polygon is self-intersecting");
            }
        }
    }
    min_ = max_ = vertices_.front();
    for (const Vec2& v : vertices_) {
        min_.x = std::min(min_.x, v.x);
        min_.y = std::min(min_.y, v.y);
        max_.x = std::max(max_.x, v.x);
        max_.y = std::max(max_.y, v.y);
    }
}

bool Polygon::contains(const Vec2& p) const {
    if (p.x < min_.x || p.x > max_.x || p.y < min_.y || p.y > max_.y) {
        return false;
    }
    // Winding by edge crossings; boundary points short-circuit to true.
    int winding = 0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = vertices_[i];
        const Vec2& b = vertices_[(i + 1) % n];
        const int o = orientation_sign(a, b, p);
        if (o == 0 && on_segment(a, b, p)) return true;
        if (a.y <= p.y) {
            if (b.y > p.y && o > 0) ++winding;
        } else {
            if (b.y <= p.y && o < 0) --winding;
        }
    }
    return winding != 0;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = sub(b, a);
    const Vec2 ap = sub(p, a);
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    double t = len2 > 0.0 ? (ap.x * ab.x + ap.y * ab.y) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * ab.x), p.y - (a.y + t * ab.y));
}

double point_polygon_distance(const Vec2& p, const Polygon& poly) {
    double d = kInfDistance;
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        d = std::min(d, point_segment_distance(p, v[i], v[(i + 1) % n]));
    }
    return poly.contains(p) ? -d : d;
}

FootprintModel::FootprintModel(std::vector<Circle> circles, double length,
                               double width)
    : circles_(std::move(circles)), length_(length), width_(width) {
    if (circles_.empty()) {
        throw ValidationError("footprint needs at least one circle");
    }
    for (const Circle& c : circles_) {
        if (!(c.radius > 0.0)) {
            throw ValidationError("footprint circle radius must be positive");
        }
    }
    // Sampled containment: every point of the rectangle hull must lie in
    // some circle.
    const int steps = 24;
    for (int ix = 0; ix <= steps; ++ix) {
        for (int iy = 0; iy <= steps; ++iy) {
            const double px = -0.5 * length_ + length_ * ix / steps;
            const double py = -0.5 * width_ + width_ * iy / steps;
            bool covered = false;
            for (const Circle& c : circles_) {
                if (std::hypot(px - c.center.x, py - c.center.y) <=
                    c.radius + 1e-12) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                throw ValidationError(
                    "footprint circles do not cover the vehicle rectangle");
            }
        }
    }
}

FootprintModel FootprintModel::for_rectangle(double length, double width,
                                             int count) {
    if (!(length > 0.0) || !(width > 0.0) || count < 1) {
        throw ValidationError("footprint rectangle dimensions must be positive");
    }
    // Each circle covers a length/count x width chunk; the half-diagonal of
    // a chunk is the minimal radius.
    const double half_chunk = 0.5 * length / count;
    const double radius = std::hypot(0.5 * width, half_chunk);
    std::vector<Circle> circles;
    circles.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double cx = -0.5 * length + (2 * i + 1) * half_chunk;
        circles.push_back(Circle{{cx, 0.0}, radius});
    }
    return FootprintModel(std::move(circles), length, width);
}

double footprint_clearance(const Pose& pose, const FootprintModel& fp,
                           std::span<const Polygon> obstacles) {
    if (obstacles.empty()) return kInfDistance;
    const double ct = std::cos(pose.theta);
    const double st = std::sin(pose.theta);
    double worst = kInfDistance;
    for (const Circle& c : fp.circles()) {
        const Vec2 center{pose.x + c.center.x * ct - c.center.y * st,
                          pose.y + c.center.x * st + c.center.y * ct};
        for (const Polygon& obs : obstacles) {
            // Box distance lower-bounds the boundary distance; skip
            // obstacles that cannot improve the minimum.
            if (obs.aabb_distance(center) - c.radius >= worst) continue;
            worst = std::min(worst,
                             point_polygon_distance(center, obs) - c.radius);
        }
    }
    return worst;
}

double containment_margin(const Pose& pose, const FootprintModel& fp,
                          const Polygon& area) {
    const double ct = std::cos(pose.theta);
    const double st = std::sin(pose.theta);
    double worst = kInfDistance;
    for (const Circle& c : fp.circles()) {
        const Vec2 center{pose.x + c.center.x * ct - c.center.y * st,
                          pose.y + c.center.x * st + c.center.y * ct};
        worst = std::min(worst,
                         -point_polygon_distance(center, area) - c.radius);
    }
    return worst;
}

Centerline::Centerline(const Polygon& area) {
    const auto& v = area.vertices();
    const std::size_t n = v.size();
    if (n < 4 || n % 2 != 0) {
        throw ValidationError(
            "driving area needs an even vertex count >= 4 for a centerline");
    }
    const std::size_t m = n / 2;
    points_.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[n - 1 - i];
        points_.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
    }
    cum_length_.resize(m, 0.0);
    for (std::size_t i = 1; i < m; ++i) {
        cum_length_[i] =
            cum_length_[i - 1] + std::hypot(points_[i].x - points_[i - 1].x,
                                            points_[i].y - points_[i - 1].y);
    }
    total_length_ = cum_length_.back();
    if (!(total_length_ > 0.0)) {
        throw ValidationError("driving-area centerline has zero length");
    }
}

Centerline::Projection Centerline::project(const Vec2& p) const {
    Projection best;
    double best_d2 = kInfDistance;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const Vec2& a = points_[i];
        const Vec2& b = points_[i + 1];
        const Vec2 ab = sub(b, a);
        const double len2 = ab.x * ab.x + ab.y * ab.y;
        if (len2 <= 0.0) continue;
        double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
        t = std::clamp(t, 0.0, 1.0);
        const Vec2 q{a.x + t * ab.x, a.y + t * ab.y};
        const double d2 = (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y);
        if (d2 < best_d2) {
            best_d2 = d2;
            const double seg_len = std::sqrt(len2);
            best.s = cum_length_[i] + t * seg_len;
            best.heading = std::atan2(ab.y, ab.x);
            best.lateral = cross(Vec2{ab.x / seg_len, ab.y / seg_len}, sub(p, q));
        }
    }
    return best;
}

bool Centerline::intersect_segment(const Vec2& a, const Vec2& b,
                                   double* s_out) const {
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const Vec2& c = points_[i];
        const Vec2& d = points_[i + 1];
        const Vec2 r = sub(d, c);
        const Vec2 q = sub(b, a);
        const double denom = cross(r, q);
        if (std::abs(denom) < 1e-12) continue;
        const double t = cross(sub(a, c), q) / denom;   // along centerline seg
        const double u = cross(sub(a, c), r) / denom;   // along a-b
        if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) {
            const double seg_len = std::hypot(r.x, r.y);
            if (s_out) *s_out = cum_length_[i] + t * seg_len;
            return true;
        }
    }
    return false;
}

}  // namespace swarmplan
