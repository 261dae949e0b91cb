#pragma once

#include <array>
#include <cmath>
#include <span>

#include "theta_lab/geometry.hpp"

namespace theta_lab {

// Everything in this header is specific to five cones.
inline constexpr int theta5 = 5;

// Named construction points of a pair (a, b) in canonical position: b lies in
// cone 2 of a (the upward cone), a lies in cone 4 of b, and alpha is the
// clockwise angle of ab from the upward vertical through a.
//
// T_ab = (a, ell, r) is the canonical triangle of a; m is the midpoint of its
// base and ell_m, r_m are where the bisectors of the two half-cones meet the
// base. The *_p points are the same construction for T_ba seen from b facing a.
struct CanonicalFrame {
  Point a, b;
  double alpha = 0.0;
  Point ell, r, m, ell_m, r_m;
  Point ell_p, r_p, m_p, ell_m_p, r_m_p;

  Triangle t_ab() const { return {a, ell, r}; }
  Triangle t_ba() const { return {b, ell_p, r_p}; }
  double ab() const { return dist(a, b); }
};

// Regular pentagon anchored on the base of T_ba: p2 = r', p3 = r'_m, p4 on the
// upper side of the line through them.
struct Pentagon {
  std::array<Point, 5> p;

  std::span<const Point> vertices() const { return p; }
  double side() const { return dist(p[0], p[1]); }
};

// Rigid motion (plus optional mirror and role swap) taking an input pair to
// canonical position: q = M * (p - origin), with M a rotation by a multiple of
// 2*pi/5 followed by x -> -x when `mirrored`. When `swapped` the canonical a is
// the second input point.
struct PairTransform {
  Point origin;
  int rotation_steps = 0;
  bool mirrored = false;
  bool swapped = false;

  double rotation() const { return rotation_steps * 2.0 * pi / theta5; }

  Point apply(Point p) const {
    Point q = rotate(p - origin, rotation());
    if (mirrored) q.x = -q.x;
    return q;
  }

  Point invert(Point q) const {
    if (mirrored) q.x = -q.x;
    return rotate(q, -rotation()) + origin;
  }

  bool is_identity() const { return rotation_steps == 0 && !mirrored && !swapped && origin == Point{}; }
};

inline CanonicalFrame canonical_frame(Point a, Point b) {
  if (a == b) throw degenerate_input("canonical_frame: a and b coincide");
  const Point d = b - a;
  const double alpha = std::atan2(d.x, d.y);
  const double slack = 1e-12;
  if (alpha < -slack || alpha > pi / 5 + slack)
    throw precondition_error("canonical_frame: pair is not in canonical position (alpha = " +
                             std::to_string(alpha) + ")");

  CanonicalFrame f;
  f.a = a;
  f.b = b;
  f.alpha = alpha;
  const double ab = norm(d);

  // T_ab: apex a, bisector straight up, base through b.
  const double h = ab * std::cos(alpha);
  const double half = std::tan(pi / 5);
  const double quarter = std::tan(pi / 10);
  f.ell = a + Point{-h * half, h};
  f.r = a + Point{h * half, h};
  f.m = a + Point{0.0, h};
  f.ell_m = a + Point{-h * quarter, h};
  f.r_m = a + Point{h * quarter, h};

  // T_ba: apex b in cone 4, whose bisector points 36 degrees left of down.
  // ell' sits on the straight-down ray and r' on the far ray.
  const ConeIndex down_left(4, theta5);
  const double hp = ab * std::cos(pi / 5 - alpha);
  f.ell_p = b + direction_from_down(down_left.ccw_boundary()) * (hp / std::cos(pi / 5));
  f.r_p = b + direction_from_down(down_left.cw_boundary()) * (hp / std::cos(pi / 5));
  f.m_p = b + down_left.bisector() * hp;
  f.ell_m_p = b + direction_from_down(down_left.bisector_angle() + pi / 10) * (hp / std::cos(pi / 10));
  f.r_m_p = b + direction_from_down(down_left.bisector_angle() - pi / 10) * (hp / std::cos(pi / 10));
  return f;
}

struct NormalizedPair {
  PairTransform transform;
  CanonicalFrame frame;
};

// Maps (a, b) into canonical position with 0 <= alpha <= pi/10. When the
// first ordering gives alpha > pi/10 the roles are swapped, which yields
// pi/5 - alpha.
inline NormalizedPair normalize_pair(Point a, Point b) {
  if (a == b) throw degenerate_input("normalize_pair: a and b coincide");
  const double alpha_slack = 1e-12;
  for (bool swapped : {false, true}) {
    const Point first = swapped ? b : a;
    const Point second = swapped ? a : b;
    PairTransform t;
    t.origin = first;
    t.swapped = swapped;
    const int cone = cone_index(first, second, theta5).i;
    t.rotation_steps = ((2 - cone) % theta5 + theta5) % theta5;
    const Point q = rotate(second - first, t.rotation());
    t.mirrored = q.x < 0.0;
    const Point bq = t.apply(second);
    const double alpha = std::atan2(bq.x, bq.y);
    if (swapped || alpha <= pi / 10 + alpha_slack) {
      return {t, canonical_frame(Point{}, bq)};
    }
  }
  throw degenerate_input("normalize_pair: unreachable");
}

inline Pentagon pentagon_pab(const CanonicalFrame& f) {
  Pentagon pg;
  const Point p2 = f.r_p;
  const Point p3 = f.r_m_p;
  const Point u = p3 - p2;
  // Turn toward the side of line p2p3 that contains the upward direction.
  const double up_side = cross(u, Point{0.0, 1.0}) >= 0 ? 1.0 : -1.0;
  const double turn = 2.0 * pi / 5 * up_side;
  pg.p[2] = p2;
  pg.p[3] = p3;
  pg.p[4] = p3 + rotate(u, turn);
  pg.p[0] = pg.p[4] + rotate(u, 2 * turn);
  pg.p[1] = pg.p[0] + rotate(u, 3 * turn);
  return pg;
}

// Slides a along the base of T_ba to ell'_m, which makes alpha = pi/10 while
// b, T_ba and the pentagon stay fixed.
inline CanonicalFrame apply_transform1(const CanonicalFrame& f) {
  if (std::abs(f.alpha - pi / 10) <= 1e-15) return f;
  CanonicalFrame g = canonical_frame(f.ell_m_p, f.b);
  // T_ba is fixed by construction; keep it bit-identical.
  g.ell_p = f.ell_p;
  g.r_p = f.r_p;
  g.m_p = f.m_p;
  g.ell_m_p = f.ell_m_p;
  g.r_m_p = f.r_m_p;
  return g;
}

}  // namespace theta_lab
