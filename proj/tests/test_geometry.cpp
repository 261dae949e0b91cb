#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "theta_lab/canonical.hpp"
#include "theta_lab/geometry.hpp"

using namespace theta_lab;

namespace {

oracle::P op(Point p) { return {p.x, p.y}; }

Point from_down(double degrees, double r = 1.0) {
  const double t = degrees * oracle::pi / 180.0;
  return {r * std::sin(t), -r * std::cos(t)};
}

}  // namespace

TEST(Cones, StraightUpIsConeTwoForFive) {
  EXPECT_EQ(cone_index({0, 0}, {0, 1}, 5).i, 2);
  EXPECT_EQ(oracle::cone({0, 0}, {0, 1}, 5), 2);
}

TEST(Cones, RayBelongsToTheConeBeforeIt) {
  // 144 degrees is ray R_2; it closes cone 1 and is excluded from cone 2.
  const Point p = from_down(144.0);
  EXPECT_EQ(oracle::cone({0, 0}, op(p), 5), 1);
  EXPECT_EQ(cone_index({0, 0}, p, 5).i, 1);
  // The ray at 0 degrees closes the last cone.
  EXPECT_EQ(cone_index({0, 0}, {0, -1}, 5).i, 4);
  EXPECT_EQ(oracle::cone({0, 0}, {0, -1}, 5), 4);
}

TEST(Cones, PartitionMatchesIntervalOracleOnBoundariesAndInteriors) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 3; k <= 12; ++k) {
    // Every ray, its immediate neighbourhood, and random interior directions.
    for (int j = 0; j < k; ++j) {
      for (double eps : {0.0, 1e-6, -1e-6, 0.3, -0.3}) {
        const double deg = 360.0 * j / k + eps;
        const Point p = from_down(deg, 2.5);
        const int expect = oracle::cone({0, 0}, op(p), k);
        ASSERT_GE(expect, 0) << "oracle not exclusive at " << deg;
        EXPECT_EQ(cone_index({0, 0}, p, k).i, expect) << "k=" << k << " deg=" << deg;
      }
    }
    for (int s = 0; s < 2000; ++s) {
      const Point v{u(rng), u(rng)}, p{u(rng), u(rng)};
      const int expect = oracle::cone(op(v), op(p), k);
      ASSERT_GE(expect, 0);
      EXPECT_EQ(cone_index(v, p, k).i, expect);
    }
  }
}

TEST(Cones, ConeIndexRejectsBadInput) {
  EXPECT_THROW(cone_index({1, 1}, {1, 1}, 5), degenerate_input);
  EXPECT_THROW(cone_index({0, 0}, {1, 1}, 2), precondition_error);
}

TEST(Cones, ConeDistanceExamples) {
  const ConeIndex c(2, 5);
  EXPECT_NEAR(cone_distance({0, 0}, {0, 3}, c), 3.0, 1e-12);
  // On the counter-clockwise ray of cone 2 (216 degrees) at distance 2.
  const Point p = from_down(216.0, 2.0);
  EXPECT_EQ(cone_index({0, 0}, p, 5), c);
  EXPECT_NEAR(cone_distance({0, 0}, p, c), 2.0 * std::cos(oracle::pi / 5), 1e-12);
  EXPECT_THROW(cone_distance({0, 0}, {0, -1}, c), precondition_error);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int s = 0; s < 1000; ++s) {
    const Point v{u(rng), u(rng)}, p{u(rng), u(rng)};
    const int i = oracle::cone(op(v), op(p), 5);
    const double d = cone_distance(v, p, ConeIndex(i, 5));
    EXPECT_NEAR(d, oracle::bisector_distance(op(v), op(p), i, 5), 1e-12);
    EXPECT_GT(d, 0.0);
  }
}

TEST(Triangles, MaxDistanceExamples) {
  const Triangle eq{Point{0, 0}, Point{1, 0}, Point{0.5, std::sqrt(3.0) / 2}};
  EXPECT_NEAR(max_dist_in_triangle(eq[0], eq), 1.0, 1e-12);
  EXPECT_NEAR(max_dist_in_triangle({0, 0}, {Point{1, 0}, Point{2, 0}, Point{1, 1}}), 2.0, 1e-12);
  EXPECT_THROW(max_dist_in_triangle({0, 0}, {Point{0, 0}, Point{1, 1}, Point{2, 2}}), degenerate_input);
}

TEST(Triangles, MaxDistanceMatchesSampling) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int s = 0; s < 100; ++s) {
    const Point p{u(rng), u(rng)};
    Triangle t{Point{u(rng), u(rng)}, Point{u(rng), u(rng)}, Point{u(rng), u(rng)}};
    if (std::abs(signed_area(t)) < 1e-3) continue;
    // 450 subdivisions give ~10^5 lattice samples including the corners.
    const double sampled = oracle::sampled_max_distance(op(p), op(t[0]), op(t[1]), op(t[2]), 450);
    EXPECT_NEAR(max_dist_in_triangle(p, t), sampled, 1e-6);
  }
}

TEST(Frame, SymmetricCase) {
  const CanonicalFrame f = canonical_frame({0, 0}, {0, 1});
  const double t = std::tan(oracle::pi / 5);
  EXPECT_NEAR(f.alpha, 0.0, 1e-15);
  EXPECT_NEAR(f.ell.x, -t, 1e-12);
  EXPECT_NEAR(f.ell.y, 1.0, 1e-12);
  EXPECT_NEAR(f.r.x, t, 1e-12);
  EXPECT_NEAR(f.m.x, 0.0, 1e-12);
  EXPECT_NEAR(f.m.y, 1.0, 1e-12);
}

TEST(Frame, TenthPiPutsBOnTheHalfConeBisector) {
  const double a = oracle::pi / 10;
  const CanonicalFrame f = canonical_frame({0, 0}, {std::sin(a) * 2, std::cos(a) * 2});
  EXPECT_NEAR(f.alpha, a, 1e-12);
  EXPECT_NEAR(dist(f.r_m, f.b), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(angle_at(f.a, f.m, f.b) - angle_at(f.a, f.b, f.r)), 0.0, 1e-12);
}

TEST(Frame, RandomFramesAgreeWithTrigConstruction) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha(0, oracle::pi / 5), len(0.1, 10), off(-3, 3);
  for (int s = 0; s < 200; ++s) {
    const double al = alpha(rng), L = len(rng);
    const Point a{off(rng), off(rng)};
    const Point b = a + Point{std::sin(al) * L, std::cos(al) * L};
    const CanonicalFrame f = canonical_frame(a, b);
    EXPECT_NEAR(f.alpha, al, 1e-12);
    // b on segment ell-r, |a ell| = |a r| = height / cos(36 degrees).
    EXPECT_NEAR(point_line_distance(b, f.ell, f.r), 0.0, 1e-9 * L);
    EXPECT_LE(f.ell.x, b.x + 1e-12);
    EXPECT_GE(f.r.x, b.x - 1e-12);
    const double h = L * std::cos(al);
    EXPECT_NEAR(dist(a, f.ell), h / std::cos(oracle::pi / 5), 1e-9 * L);
    EXPECT_NEAR(dist(a, f.r), h / std::cos(oracle::pi / 5), 1e-9 * L);
    // b's far triangle has its apex at b and contains a on its base.
    EXPECT_NEAR(point_line_distance(a, f.ell_p, f.r_p), 0.0, 1e-9 * L);
    EXPECT_EQ(oracle::cone(op(b), op(a), 5), 4);
  }
}

TEST(Frame, RejectsNonCanonicalPairs) {
  EXPECT_THROW(canonical_frame({0, 0}, {0, 0}), degenerate_input);
  EXPECT_THROW(canonical_frame({0, 0}, {0, -1}), precondition_error);
  EXPECT_THROW(canonical_frame({0, 0}, {-0.2, 1}), precondition_error);
}

TEST(Normalize, CanonicalPairIsIdentity) {
  const NormalizedPair n = normalize_pair({0, 0}, {0.1, 1});
  EXPECT_TRUE(n.transform.is_identity());
  EXPECT_NEAR(n.frame.b.x, 0.1, 1e-15);
}

TEST(Normalize, LargeAlphaSwapsRoles) {
  // alpha = 30 degrees > 18; the other ordering gives 36 - 30 = 6 degrees.
  const double al = 30.0 * oracle::pi / 180.0;
  const NormalizedPair n = normalize_pair({0, 0}, {std::sin(al), std::cos(al)});
  EXPECT_TRUE(n.transform.swapped);
  EXPECT_NEAR(n.frame.alpha, oracle::pi / 5 - al, 1e-12);
}

TEST(Normalize, RandomPairsLandInCanonicalPositionIsometrically) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int s = 0; s < 500; ++s) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const NormalizedPair n = normalize_pair(a, b);
    const PairTransform& t = n.transform;
    const Point ca = t.apply(t.swapped ? b : a), cb = t.apply(t.swapped ? a : b);
    EXPECT_NEAR(dist(ca, Point{}), 0.0, 1e-12);
    EXPECT_NEAR(dist(cb, n.frame.b), 0.0, 1e-9);
    const double al = std::atan2(cb.x, cb.y);
    EXPECT_GE(al, -1e-12);
    EXPECT_LE(al, oracle::pi / 10 + 1e-12);
    EXPECT_EQ(oracle::cone({0, 0}, op(cb), 5), 2);
    EXPECT_EQ(oracle::cone(op(cb), {0, 0}, 5), 4);
    // Distances between arbitrary points survive the transform.
    const Point c{u(rng), u(rng)}, d{u(rng), u(rng)};
    EXPECT_NEAR(dist(t.apply(c), t.apply(d)), dist(c, d), 1e-12 * 8);
    EXPECT_NEAR(dist(t.invert(t.apply(c)), c), 0.0, 1e-12 * 8);
  }
}

TEST(Pentagon, IsRegularAndAnchored) {
  for (int s = 0; s <= 1000; ++s) {
    const double al = oracle::pi / 10 * s / 1000;
    const CanonicalFrame f = canonical_frame({0, 0}, {std::sin(al), std::cos(al)});
    const Pentagon pg = pentagon_pab(f);
    const double side = dist(f.r_p, f.r_m_p);
    EXPECT_EQ(pg.p[2], f.r_p);
    EXPECT_EQ(pg.p[3], f.r_m_p);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(dist(pg.p[i], pg.p[(i + 1) % 5]), side, 1e-12);
    // Diagonals of a regular pentagon are golden-ratio times the side.
    for (int i = 0; i < 5; ++i)
      EXPECT_NEAR(dist(pg.p[i], pg.p[(i + 2) % 5]), side * (1 + std::sqrt(5.0)) / 2, 1e-12);
    // p4 above the line p2p3.
    EXPECT_GT(orient(pg.p[2], pg.p[3], pg.p[4]) * orient(pg.p[2], pg.p[3], pg.p[2] + Point{0, 1}), 0.0);
    // Anchoring facts at every alpha: p4 in T_ab, p0 on segment ell-b, p1 on line ell-b.
    EXPECT_TRUE(contains(f.t_ab(), pg.p[4]));
    EXPECT_LE(point_line_distance(pg.p[0], f.ell, f.b), 1e-9 * f.ab());
    EXPECT_LE(point_line_distance(pg.p[1], f.ell, f.b), 1e-9 * f.ab());
    EXPECT_LE(dist(f.ell, pg.p[0]) + dist(pg.p[0], f.b), dist(f.ell, f.b) * (1 + 1e-9));
  }
}

TEST(Pentagon, SymmetricLayoutHasP0P1LevelWithB) {
  const CanonicalFrame f = canonical_frame({0, 0}, {0, 1});
  const Pentagon pg = pentagon_pab(f);
  EXPECT_NEAR(pg.p[0].y, 1.0, 1e-12);
  EXPECT_NEAR(pg.p[1].y, 1.0, 1e-12);
  // |p3 f| < |p3 p4| < |p3 b| with ratios sin 18 and sin 18 / sin 54.
  const Point fpt = *line_intersection(f.a, f.ell, pg.p[3], f.b);
  const double p3b = dist(pg.p[3], f.b);
  EXPECT_NEAR(dist(pg.p[3], pg.p[4]) / p3b, std::sin(oracle::pi / 10) / std::sin(3 * oracle::pi / 10), 1e-12);
  EXPECT_NEAR(dist(pg.p[3], fpt) / p3b, std::sin(oracle::pi / 10), 1e-12);
}

TEST(Transform1, MovesAToTheLeftQuarterPointAndKeepsB) {
  const CanonicalFrame f = canonical_frame({0, 0}, {0, 1});
  const CanonicalFrame g = apply_transform1(f);
  EXPECT_NEAR(g.alpha, oracle::pi / 10, 1e-12);
  EXPECT_EQ(g.b, f.b);
  EXPECT_EQ(g.ell_p, f.ell_p);
  EXPECT_EQ(g.r_p, f.r_p);
  EXPECT_NEAR(dist(g.a, f.ell_m_p), 0.0, 1e-12);
  const CanonicalFrame h = apply_transform1(g);
  EXPECT_NEAR(dist(h.a, g.a), 0.0, 1e-12);

  // With K = 3.24, |ac| - K|ab| does not drop for c in the far triangle.
  const double K = 3.24;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int s = 0; s < 2000; ++s) {
    const double al = u(rng) * oracle::pi / 10;
    const CanonicalFrame a0 = canonical_frame({0, 0}, {std::sin(al), std::cos(al)});
    const CanonicalFrame a1 = apply_transform1(a0);
    double x = u(rng), y = u(rng);
    if (x + y > 1) x = 1 - x, y = 1 - y;
    const Point c = a0.b + (a0.ell_p - a0.b) * x + (a0.r_p - a0.b) * y;
    EXPECT_GE(dist(a1.a, c) - K * a1.ab(), dist(a0.a, c) - K * a0.ab() - 1e-9);
  }
}
