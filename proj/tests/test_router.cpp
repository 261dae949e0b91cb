#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "theta_lab/metrics.hpp"
#include "theta_lab/router.hpp"

using namespace theta_lab;

namespace {

double cross3(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Inside-or-on test for a convex polygon listed in either orientation.
bool in_convex(const std::vector<Point>& poly, Point p, double tol) {
  double area = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) area += cross3(poly[0], poly[i], poly[(i + 1) % poly.size()]);
  const double s = area > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point u = poly[i], v = poly[(i + 1) % poly.size()];
    if (s * cross3(u, v, p) / std::hypot(v.x - u.x, v.y - u.y) < -tol) return false;
  }
  return true;
}

Point in_triangle(std::mt19937_64& rng, Point a, Point b, Point c) {
  std::uniform_real_distribution<double> u(0, 1);
  double x = u(rng), y = u(rng);
  if (x + y > 1) x = 1 - x, y = 1 - y;
  return a + (b - a) * x + (c - a) * y;
}

// The breakdown restated from its definitions, for cross-checking labels.
CaseLabel expected_label(const CanonicalFrame& f, Point c, Point d, const Pentagon& pg) {
  const double tol = 1e-12 * f.ab();
  const std::vector<Point> tba{f.b, f.ell_p, f.r_p};
  const std::vector<Point> pab(pg.p.begin(), pg.p.end());
  if (cross3(f.a, f.b, c) / f.ab() < -tol) return CaseLabel::c_right_ab;
  if (cross3(f.a, f.b, d) / f.ab() < -tol) return CaseLabel::d_right_ab;
  if (in_convex(tba, c, 1e-9 * f.ab())) return CaseLabel::c_in_tba;
  if (!in_convex(pab, c, 1e-9 * f.ab())) return CaseLabel::c_not_in_pab;
  // m is straight above a, so "right of am" is x > 0.
  if (d.x > tol) return CaseLabel::d_right_am;
  if (d.y > c.y) return CaseLabel::d_left_am_above_c;
  if (!in_convex(pab, d, 1e-9 * f.ab())) return CaseLabel::d_below_c_not_in_pab;
  return CaseLabel::both_in_pab_crossing;
}

}  // namespace

TEST(Router, CaseTableAssignsTheRecordedInequalities) {
  using I = Inequality;
  const std::map<CaseLabel, std::pair<I, double>> expect{
      {CaseLabel::c_right_ab, {I::via_c, 4.53}},          {CaseLabel::d_right_ab, {I::via_d, 4.53}},
      {CaseLabel::c_in_tba, {I::via_c, 5.70}},            {CaseLabel::c_not_in_pab, {I::via_c, 4.53}},
      {CaseLabel::d_right_am, {I::via_d, 3.24}},          {CaseLabel::d_left_am_above_c, {I::via_c_and_d, 4.53}},
      {CaseLabel::d_below_c_not_in_pab, {I::via_d, 5.70}}, {CaseLabel::both_in_pab_crossing, {I::via_c_and_d, 6.16}},
  };
  for (const auto& [label, v] : expect) {
    EXPECT_EQ(case_info(label).inequality, v.first) << to_string(label);
    EXPECT_DOUBLE_EQ(case_info(label).stated_k, v.second) << to_string(label);
  }
  EXPECT_EQ(to_string(Inequality::via_c), "A");
  EXPECT_EQ(to_string(Inequality::via_d), "B");
  EXPECT_EQ(to_string(Inequality::via_c_and_d), "C");
}

TEST(Router, ClassificationIsExhaustiveAndFollowsTheDecisionOrder) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  std::map<CaseLabel, int> seen;
  for (int s = 0; s < 100000; ++s) {
    const double al = u(rng) * oracle::pi / 10;
    const CanonicalFrame f = canonical_frame({0, 0}, {std::sin(al), std::cos(al)});
    const Pentagon pg = pentagon_pab(f);
    const Point c = in_triangle(rng, f.a, f.ell, f.r);
    const Point d = in_triangle(rng, f.b, f.ell_p, f.r_p);
    const CaseLabel l = classify_case(f, c, d, pg);
    ASSERT_NE(l, CaseLabel::direct_edge);
    EXPECT_EQ(l, expected_label(f, c, d, pg)) << "alpha=" << al;
    ++seen[l];
  }
  EXPECT_EQ(seen.size(), 8u);
}

TEST(Router, ClassificationExamples) {
  const CanonicalFrame f = canonical_frame({0, 0}, {0.1, 1.0});
  const Pentagon pg = pentagon_pab(f);
  const Point d{0.05, 0.6};  // left of ab
  EXPECT_EQ(classify_case(f, {0.3, 0.9}, d, pg), CaseLabel::c_right_ab);
  // c on the left of ab and inside the far triangle of b.
  const Point c{0.0, 0.9};
  ASSERT_TRUE(contains(f.t_ab(), c));
  ASSERT_TRUE(contains(f.t_ba(), c));
  EXPECT_EQ(classify_case(f, c, d, pg), CaseLabel::c_in_tba);
}

TEST(Router, DirectEdgeCertificate) {
  const ThetaGraph g = build_theta_graph(std::vector<Point>{{0, 0}, {0.3, 1.1}}, 5);
  const PathCertificate c = inductive_path(g, 0, 1, 5.70);
  ASSERT_EQ(c.steps.size(), 1u);
  EXPECT_EQ(c.steps[0].label, CaseLabel::direct_edge);
  EXPECT_NEAR(c.total_length, std::hypot(0.3, 1.1), 1e-15);
  EXPECT_NEAR(c.bound, 5.70 * std::hypot(0.3, 1.1), 1e-12);
  EXPECT_TRUE(validate_certificate(g, c).empty());
}

TEST(Router, ThreePointDetourThroughC) {
  // c is the cone-2 neighbour of a and also b's neighbour toward a, so the
  // walk is a, c, b.
  const std::vector<Point> pts{{0, 0}, {0.1, 1.0}, {-0.1, 0.45}};
  const ThetaGraph g = build_theta_graph(pts, 5);
  ASSERT_FALSE(g.has_edge(0, 1));
  ASSERT_TRUE(g.has_edge(0, 2));
  ASSERT_TRUE(g.has_edge(2, 1));
  const PathCertificate c = inductive_path(g, 0, 1, 5.70);
  EXPECT_EQ(c.walk, (std::vector<Vertex>{0, 2, 1}));
  ASSERT_EQ(c.steps.size(), 2u);
  EXPECT_EQ(c.steps[0].inequality, Inequality::via_c);
  EXPECT_EQ(c.steps[0].label, CaseLabel::c_in_tba);
  EXPECT_TRUE(c.steps[0].c_equals_d);
  EXPECT_EQ(c.steps[1].label, CaseLabel::direct_edge);
  const auto sp = shortest_path(g, 0, 1);
  ASSERT_TRUE(sp);
  EXPECT_NEAR(c.total_length, sp->length, 1e-12);
  EXPECT_TRUE(validate_certificate(g, c).empty());
}

TEST(Router, RejectsBadArguments) {
  const ThetaGraph g5 = build_theta_graph(random_points(6, 1), 5);
  const ThetaGraph g6 = build_theta_graph(random_points(6, 1), 6);
  EXPECT_THROW(inductive_path(g6, 0, 1, 5.70), precondition_error);
  EXPECT_THROW(inductive_path(g5, 0, 0, 5.70), precondition_error);
  EXPECT_THROW(inductive_path(g5, 0, 9, 5.70), precondition_error);
}

TEST(Router, RandomInstancesCertifyEveryPair) {
  std::map<CaseLabel, int> seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 10 + 5 * (seed % 5);
    const ThetaGraph g = build_theta_graph(random_points(n, seed), 5);
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b) {
        if (a == b) continue;
        const PathCertificate c = inductive_path(g, a, b, 5.70);
        ASSERT_TRUE(validate_certificate(g, c).empty()) << "seed=" << seed << " pair " << a << "," << b;
        const double ab = dist(g.point(a), g.point(b));
        EXPECT_LE(c.total_length, 5.70 * ab * (1 + 1e-9));
        EXPECT_GE(c.total_length, shortest_path(g, a, b)->length - 1e-12 * ab);
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& s : c.steps) {
          EXPECT_FALSE(s.fallback);
          const double d = dist(g.point(s.a_role), g.point(s.b_role));
          EXPECT_LT(d, prev);
          prev = d;
          if (s.label == CaseLabel::direct_edge) continue;
          ++seen[s.label];
          // The label's inequality at that case's own constant.
          const CaseInfo& info = case_info(s.label);
          EXPECT_EQ(s.inequality, info.inequality);
          const auto v = evaluate(info.inequality, g.point(s.a_role), g.point(s.b_role), g.point(*s.c),
                                  g.point(*s.d), info.stated_k);
          EXPECT_LE(v.slack(), 1e-9 * d) << to_string(s.label);
        }
      }
  }
  EXPECT_GE(seen.size(), 5u);
}
