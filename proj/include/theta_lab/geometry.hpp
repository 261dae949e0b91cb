#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta_lab/errors.hpp"

namespace theta_lab {

inline constexpr double pi = std::numbers::pi;

// Relative tolerance for membership and incidence tests.
inline constexpr double incidence_tolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Point a, Point b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(b - a); }
inline Point lerp(Point a, Point b, double t) { return a + (b - a) * t; }
inline Point midpoint(Point a, Point b) { return lerp(a, b, 0.5); }

// Positive when (o, a, b) turns counter-clockwise, i.e. b is left of o->a.
inline constexpr double orient(Point o, Point a, Point b) { return cross(a - o, b - o); }

inline Point rotate(Point p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Unit vector at `angle` measured counter-clockwise from the negative y-axis.
inline Point direction_from_down(double angle) { return {std::sin(angle), -std::cos(angle)}; }

// Interior angle at `vertex` of the triangle (p, vertex, q), in [0, pi].
inline double angle_at(Point vertex, Point p, Point q) {
  const Point u = p - vertex;
  const Point v = q - vertex;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

inline double point_line_distance(Point p, Point a, Point b) {
  return std::abs(orient(a, b, p)) / dist(a, b);
}

// Signed side test scaled by the segment length, so the sign threshold is a
// length rather than an area.
inline double side_of(Point a, Point b, Point p) { return orient(a, b, p) / dist(a, b); }

using Triangle = std::array<Point, 3>;

inline double signed_area(const Triangle& t) { return 0.5 * orient(t[0], t[1], t[2]); }

// Largest edge length, used to scale tolerances.
inline double diameter(std::span<const Point> poly) {
  double d = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) d = std::max(d, dist(poly[i], poly[j]));
  return d;
}

// Minimum signed distance from p to the edges of a convex polygon, positive
// inside. Orientation of the vertex list does not matter.
inline double convex_depth(std::span<const Point> poly, Point p) {
  double area2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) area2 += cross(poly[i], poly[(i + 1) % poly.size()]);
  const double sign = area2 >= 0 ? 1.0 : -1.0;
  double depth = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % poly.size()];
    depth = std::min(depth, sign * side_of(a, b, p));
  }
  return depth;
}

// Closed membership with a tolerance relative to the polygon size.
inline bool contains(std::span<const Point> poly, Point p, double rel_tol = incidence_tolerance) {
  return convex_depth(poly, p) >= -rel_tol * diameter(poly);
}

// Interior membership: boundary points within tolerance are excluded.
inline bool strictly_contains(std::span<const Point> poly, Point p,
                              double rel_tol = incidence_tolerance) {
  return convex_depth(poly, p) > rel_tol * diameter(poly);
}

inline bool contains(const Triangle& t, Point p, double rel_tol = incidence_tolerance) {
  return contains(std::span<const Point>(t), p, rel_tol);
}
inline bool strictly_contains(const Triangle& t, Point p, double rel_tol = incidence_tolerance) {
  return strictly_contains(std::span<const Point>(t), p, rel_tol);
}

// Intersection of the lines through (p, q) and (r, s); nullopt when parallel.
inline std::optional<Point> line_intersection(Point p, Point q, Point r, Point s) {
  const Point d1 = q - p;
  const Point d2 = s - r;
  const double den = cross(d1, d2);
  if (std::abs(den) <= 1e-300) return std::nullopt;
  return p + d1 * (cross(r - p, d2) / den);
}

// Proper crossing of the open segments pq and rs.
inline std::optional<Point> segment_crossing(Point p, Point q, Point r, Point s) {
  const double o1 = orient(p, q, r);
  const double o2 = orient(p, q, s);
  const double o3 = orient(r, s, p);
  const double o4 = orient(r, s, q);
  if (!((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0))) return std::nullopt;
  if (!((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return std::nullopt;
  return line_intersection(p, q, r, s);
}

// ---------------------------------------------------------------------------
// Cones

// Cone C_i of k equal cones around a vertex. Cone i spans the half-open
// angular interval (2*pi*i/k, 2*pi*(i+1)/k], angles measured counter-clockwise
// from the negative y-axis.
struct ConeIndex {
  int i = 0;
  int k = 0;

  ConeIndex() = default;
  ConeIndex(int index, int cones) : i(index), k(cones) {
    if (cones < 3) throw precondition_error("cone count k must be at least 3, got " + std::to_string(cones));
    if (index < 0 || index >= cones)
      throw precondition_error("cone index " + std::to_string(index) + " outside [0, " +
                               std::to_string(cones) + ")");
  }

  double aperture() const { return 2.0 * pi / k; }
  double cw_boundary() const { return aperture() * i; }
  double ccw_boundary() const { return aperture() * (i + 1); }
  double bisector_angle() const { return aperture() * (i + 0.5); }
  Point bisector() const { return direction_from_down(bisector_angle()); }

  friend bool operator==(const ConeIndex&, const ConeIndex&) = default;
};

// Angle of v->p counter-clockwise from the negative y-axis, in (0, 2*pi].
inline double angle_from_down(Point v, Point p) {
  const Point d = p - v;
  double phi = std::atan2(d.x, -d.y);
  if (phi <= 0.0) phi += 2.0 * pi;
  return phi;
}

// Directions within this many radians of a cone ray are treated as lying on
// the ray and resolved by the half-open rule.
inline constexpr double ray_snap_tolerance = incidence_tolerance;

inline ConeIndex cone_index(Point v, Point p, int k) {
  if (k < 3) throw precondition_error("cone count k must be at least 3, got " + std::to_string(k));
  if (v == p) throw degenerate_input("cone_index: p coincides with the apex v");
  const double aperture = 2.0 * pi / k;
  const double phi = angle_from_down(v, p);
  const double ray = std::round(phi / aperture);
  int i;
  if (std::abs(phi - ray * aperture) <= ray_snap_tolerance) {
    // On ray R_j: it belongs to C_{j-1}, whose counter-clockwise side it is.
    i = static_cast<int>(ray) - 1;
  } else {
    i = static_cast<int>(std::ceil(phi / aperture)) - 1;
  }
  i = ((i % k) + k) % k;
  return ConeIndex(i, k);
}

// Projection of v->p onto the bisector of `cone`, without a membership check.
inline double bisector_projection(Point v, Point p, const ConeIndex& cone) {
  return dot(p - v, cone.bisector());
}

inline double cone_distance(Point v, Point p, const ConeIndex& cone) {
  if (v == p) throw degenerate_input("cone_distance: p coincides with the apex v");
  if (cone_index(v, p, cone.k) != cone)
    throw precondition_error("cone_distance: point is not inside cone " + std::to_string(cone.i));
  return bisector_projection(v, p, cone);
}

// Farthest distance from p to any point of the triangle. Distance from a fixed
// point is convex, so the maximum sits at a vertex.
inline double max_dist_in_triangle(Point p, const Triangle& tri) {
  const double scale = diameter(std::span<const Point>(tri));
  if (!(scale > 0.0) || std::abs(signed_area(tri)) <= incidence_tolerance * scale * scale)
    throw degenerate_input("max_dist_in_triangle: degenerate triangle");
  return std::max({dist(p, tri[0]), dist(p, tri[1]), dist(p, tri[2])});
}

}  // namespace theta_lab
