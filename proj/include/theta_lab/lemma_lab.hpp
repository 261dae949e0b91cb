#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "theta_lab/canonical.hpp"
#include "theta_lab/constants.hpp"
#include "theta_lab/parallel.hpp"
#include "theta_lab/router.hpp"

namespace theta_lab {

// A report passes when every potential is at most this, in units of |ab| or
// of the normalization the argument itself uses.
inline constexpr double lemma_tolerance = 1e-9;

using Params = std::vector<std::pair<std::string, double>>;

struct SubCheck {
  std::string name;
  double max_value = -std::numeric_limits<double>::infinity();
  Params argmax;
  std::size_t evaluations = 0;
  // Reported but excluded from pass/fail.
  bool informational = false;
};

struct LemmaReport {
  std::string lemma_id;
  std::string statement;
  double K_tested = 0.0;
  double max_potential = -std::numeric_limits<double>::infinity();
  Params argmax_params;
  int grid_resolution = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string frame;
  bool pass = false;
  std::vector<SubCheck> checks;
};

struct LemmaOptions {
  int grid = 500;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  // Defaults to the value the lemma is stated for.
  std::optional<double> K;
};

// ---------------------------------------------------------------------------
// Closed-form potentials

// Bound on |sw| + K|wt| - K|st| for the right triangle with apex angle pi/5,
// with |s w_l| = 1 and beta the angle between st and the right-angle leg.
inline double phi_t253(double beta, double K) {
  if (beta < 0.0 || beta > 3 * pi / 10) throw precondition_error("phi_t253: beta outside [0, 3pi/10]");
  return 1.0 + K * (std::sin(pi / 5) - std::cos(pi / 5) * std::tan(beta)) - K * std::cos(pi / 5) / std::cos(beta);
}

inline double phi_t334(double beta, double K) {
  if (beta < 0.0 || beta > pi / 10) throw precondition_error("phi_t334: beta outside [0, pi/10]");
  return std::sin(3 * pi / 10 + beta) + K * std::sin(3 * pi / 10 - beta) - K * std::sin(2 * pi / 5);
}

inline double phi_t334_derivative(double beta, double K) {
  return std::cos(3 * pi / 10 + beta) - K * std::cos(3 * pi / 10 - beta);
}

// Upper bound on |ac| - K|ab| while a slides toward ell'_m, with |b ell'_m| = 1
// and gamma the angle at b between b ell'_m and ba.
inline double psi_transform(double gamma, double K, double c_offset) {
  if (gamma < 0.0 || gamma > pi / 10) throw precondition_error("psi_transform: gamma outside [0, pi/10]");
  if (c_offset < 0.0) throw precondition_error("psi_transform: c_offset must be non-negative");
  return (std::sin(gamma) - K * std::sin(2 * pi / 5)) / std::sin(2 * pi / 5 - gamma) + c_offset;
}

// Numerator of d(psi_transform)/d(gamma); the denominator is a positive square.
inline double psi_transform_derivative_numerator(double gamma, double K) {
  return std::sin(2 * pi / 5) * (1.0 - K * std::cos(2 * pi / 5 - gamma));
}

// Numerator of the derivative of |d'p3| + K|c'd'| in theta = angle p2 p1 d'.
inline double mainlemma2_derivative(double theta, double K) {
  if (theta < 0.0 || theta > 3 * pi / 10) throw precondition_error("mainlemma2_derivative: theta outside [0, 3pi/10]");
  return K * std::cos(2 * pi / 5 - theta) * std::sin(3 * pi / 5) - std::sin(2 * pi / 5);
}

// ---------------------------------------------------------------------------
// Sampling machinery

namespace lab {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Tracker {
  double value = -inf;
  Params argmax;
  std::size_t evaluations = 0;

  template <typename MakeParams>
  void offer(double v, MakeParams&& make) {
    ++evaluations;
    if (v > value) {
      value = v;
      argmax = make();
    }
  }
};

// Runs body(i, tracker) for i in [0, n) and merges the trackers in index
// order, so the result does not depend on the thread count.
template <typename Body>
SubCheck outer_max(std::string name, std::size_t n, Body&& body, bool informational = false) {
  std::vector<Tracker> part(n);
  parallel_for(n, [&](std::size_t i) { body(i, part[i]); });
  SubCheck out;
  out.name = std::move(name);
  out.informational = informational;
  for (auto& t : part) {
    out.evaluations += t.evaluations;
    if (t.value > out.max_value) {
      out.max_value = t.value;
      out.argmax = std::move(t.argmax);
    }
  }
  return out;
}

inline double linspace(double lo, double hi, std::size_t i, std::size_t n) {
  return n <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Frame with a at the origin and |ab| = 1.
inline CanonicalFrame unit_frame(double alpha) {
  return canonical_frame(Point{}, Point{std::sin(alpha), std::cos(alpha)});
}

using Poly = std::vector<Point>;

inline Poly ccw(Poly p) {
  double area2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) area2 += cross(p[i], p[(i + 1) % p.size()]);
  if (area2 < 0) std::reverse(p.begin(), p.end());
  return p;
}

// Part of the polygon on the left of (or on) the directed line p -> q.
inline Poly clip_left(const Poly& poly, Point p, Point q) {
  Poly out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point cur = poly[i];
    const Point nxt = poly[(i + 1) % poly.size()];
    const double sc = orient(p, q, cur);
    const double sn = orient(p, q, nxt);
    if (sc >= 0) out.push_back(cur);
    if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) out.push_back(*line_intersection(p, q, cur, nxt));
  }
  return out;
}

inline Poly clip_to(Poly poly, std::span<const Point> convex) {
  const Poly c = ccw(Poly(convex.begin(), convex.end()));
  for (std::size_t i = 0; i < c.size() && poly.size() >= 3; ++i) poly = clip_left(poly, c[i], c[(i + 1) % c.size()]);
  return poly;
}

inline Poly as_poly(const Triangle& t) { return ccw(Poly(t.begin(), t.end())); }

// Barycentric lattice of resolution g on every triangle of a fan from poly[0].
// Polygon vertices are always lattice nodes.
template <typename F>
void polygon_grid(const Poly& poly, int g, F&& f) {
  if (poly.size() < 3) return;
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    const Point o = poly[0], u = poly[k] - o, v = poly[k + 1] - o;
    for (int i = 0; i <= g; ++i)
      for (int j = 0; i + j <= g; ++j) f(o + u * (double(i) / g) + v * (double(j) / g));
  }
}

inline std::vector<Point> polygon_points(const Poly& poly, int g) {
  std::vector<Point> out;
  polygon_grid(poly, g, [&](Point p) { out.push_back(p); });
  return out;
}

// "Not in X" for a closed region X: strictly outside, boundary excluded.
inline bool outside(std::span<const Point> poly, Point p) {
  return convex_depth(poly, p) < -incidence_tolerance * diameter(poly);
}
inline bool outside(const Triangle& t, Point p) { return outside(std::span<const Point>(t), p); }

inline Params point_params(std::initializer_list<std::pair<std::string_view, Point>> pts,
                           std::initializer_list<std::pair<std::string_view, double>> scalars = {}) {
  Params out;
  for (auto& [n, v] : scalars) out.emplace_back(std::string(n), v);
  for (auto& [n, p] : pts) {
    out.emplace_back(std::string(n) + ".x", p.x);
    out.emplace_back(std::string(n) + ".y", p.y);
  }
  return out;
}

// Right triangle (s, v, u) with the right angle at v and angle pi/5 at s;
// t moves from v toward u by fraction tau in [0, tau_max], w ranges over
// triangle (s, t, u). Value (|sw| + K|wt| - K|st|) / |st|.
inline SubCheck right_triangle_check(std::string name, Point s, Point v, Point u, double tau_max, std::size_t t_steps,
                                     int g, double K) {
  return outer_max(std::move(name), t_steps, [&](std::size_t i, Tracker& tr) {
    const double tau = linspace(0.0, tau_max, i, t_steps);
    const Point t = lerp(v, u, tau);
    const double st = dist(s, t);
    polygon_grid(as_poly({s, t, u}), g, [&](Point w) {
      tr.offer((dist(s, w) + K * dist(w, t) - K * st) / st,
               [&] { return point_params({{"t", t}, {"w", w}}, {{"tau", tau}}); });
    });
  });
}

// Triangle (s, v, u) with angles (3pi/10, 3pi/10, 2pi/5); t on uv with
// angle v s t = beta in [0, beta_max], w over triangle (s, t, u).
inline SubCheck cone_triangle_check(std::string name, Point s, Point v, Point u, double beta_max, std::size_t t_steps,
                                    int g, double K) {
  const double turn = orient(s, v, u) > 0 ? 1.0 : -1.0;
  return outer_max(std::move(name), t_steps, [&](std::size_t i, Tracker& tr) {
    const double beta = linspace(0.0, beta_max, i, t_steps);
    const Point dir = rotate(v - s, turn * beta);
    const Point t = i == 0 ? v : *line_intersection(s, s + dir, u, v);
    const double st = dist(s, t);
    polygon_grid(as_poly({s, t, u}), g, [&](Point w) {
      tr.offer((dist(s, w) + K * dist(w, t) - K * st) / st,
               [&] { return point_params({{"t", t}, {"w", w}}, {{"beta", beta}}); });
    });
  });
}

// Grid of a closed-form function of one angle.
template <typename F>
SubCheck scalar_check(std::string name, std::string param, double lo, double hi, std::size_t n, F&& f,
                      bool informational = false) {
  SubCheck out;
  out.name = std::move(name);
  out.informational = informational;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = linspace(lo, hi, i, n);
    const double v = f(x);
    ++out.evaluations;
    if (v > out.max_value) {
      out.max_value = v;
      out.argmax = {{param, x}};
    }
  }
  return out;
}

// Largest increase between consecutive grid values; non-positive means
// non-increasing along the grid.
template <typename F>
SubCheck decreasing_check(std::string name, std::string param, double lo, double hi, std::size_t n, F&& f) {
  SubCheck out;
  out.name = std::move(name);
  double prev = f(lo);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = linspace(lo, hi, i, n);
    const double v = f(x);
    ++out.evaluations;
    if (v - prev > out.max_value) {
      out.max_value = v - prev;
      out.argmax = {{param, x}};
    }
    prev = v;
  }
  return out;
}

inline void finalize(LemmaReport& r) {
  r.max_potential = -inf;
  r.argmax_params.clear();
  for (const auto& c : r.checks) {
    if (c.informational) continue;
    if (c.max_value > r.max_potential) {
      r.max_potential = c.max_value;
      r.argmax_params = c.argmax;
      r.argmax_params.insert(r.argmax_params.begin(), {"check:" + c.name, 0.0});
    }
  }
  r.pass = r.max_potential <= lemma_tolerance;
}

inline std::size_t alpha_steps(int grid) { return static_cast<std::size_t>(std::max(2, grid / 10)) + 1; }
inline std::size_t pair_alpha_steps(int grid) { return static_cast<std::size_t>(std::max(2, grid / 100)) + 1; }
inline int pair_grid(int grid) { return std::max(4, grid / 20); }

// Reflection across the perpendicular bisector of ab.
inline Point reflect_bisector(Point p, Point a, Point b) {
  const Point u = (b - a) * (1.0 / dist(a, b));
  const double t = dot(p - midpoint(a, b), u);
  return p - u * (2 * t);
}

inline double point_segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
  return dist(p, a + d * t);
}

}  // namespace lab

// ---------------------------------------------------------------------------
// Lemma identifiers

struct LemmaInfo {
  std::string_view id;
  std::string_view statement;
  // Value the statement is made for; 0 when no constant is involved.
  double stated_k;
};

inline constexpr std::array<LemmaInfo, 15> lemma_table{{
    {"t253", "right triangle (pi/5, pi/2, 3pi/10): |sw| + K|wt| <= K|st|", stated::right_triangle},
    {"t334", "triangle (3pi/10, 3pi/10, 2pi/5), angle vst <= pi/10: |sw| + K|wt| <= K|st|", stated::spanning_ratio},
    {"posofc", "sliding a to ell'_m maximizes |ac| - K|ab|", stated::transform},
    {"claim6", "p4 in T_ab, p0 on segment ell b, p1 on line ell b", 0.0},
    {"case1", "c right of ab", stated::right_triangle},
    {"case4", "d right of ab", stated::right_triangle},
    {"case2", "c left of ab and in T_ab and T_ba", stated::spanning_ratio},
    {"case3", "c in T_ab minus (T_ba union P_ab)", stated::right_triangle},
    {"case5", "d left of ab and right of am", stated::median},
    {"case6", "c in P_ab minus T_ba, d left of am and above c", stated::right_triangle},
    {"case7", "d left of ab, below c, outside P_ab", stated::spanning_ratio},
    {"case8", "ac and bd cross, c and d in P_ab", stated::pentagon},
    {"mainlemma1", "crossing c, d: |ac| + |bd| + K|cd| <= |ac'| + |bd'| + K|c'd'|", stated::spanning_ratio},
    {"mainlemma2", "c' on p0p1, d' on p2p3: Phi' <= Phi'' = |ap1| + K|p1p3| + |p3b| - K|ab|", stated::spanning_ratio},
    {"constants", "closed-form constants and their printed roundings", 0.0},
}};

// Accepts the identifiers above plus lemma4, lemma5, lemma7 and lemma8 ...
// lemma15 as aliases.
inline std::optional<std::string> canonical_lemma_id(std::string_view id) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 11> aliases{{
      {"lemma4", "t253"}, {"lemma5", "t334"}, {"lemma7", "posofc"}, {"lemma8", "case1"}, {"lemma9", "case4"},
      {"lemma10", "case2"}, {"lemma11", "case3"}, {"lemma12", "case5"}, {"lemma13", "case6"}, {"lemma14", "case7"},
      {"lemma15", "case8"},
  }};
  for (const auto& [alias, target] : aliases)
    if (id == alias) return std::string(target);
  for (const auto& l : lemma_table)
    if (id == l.id) return std::string(l.id);
  return std::nullopt;
}

inline const LemmaInfo& lemma_info(std::string_view id) {
  const auto canon = canonical_lemma_id(id);
  if (!canon) throw precondition_error("unknown lemma id '" + std::string(id) + "'");
  for (const auto& l : lemma_table)
    if (l.id == *canon) return l;
  throw precondition_error("unknown lemma id '" + std::string(id) + "'");
}

// Closed-form threshold K* where the lemma's bound becomes tight, when it has one.
inline std::optional<double> lemma_threshold(std::string_view id) {
  const auto k = bound_constants();
  const std::string c = std::string(lemma_info(id).id);
  if (c == "t253" || c == "case1" || c == "case4" || c == "case3" || c == "case6") return k.right_triangle_bound;
  if (c == "t334" || c == "case2" || c == "case7" || c == "mainlemma2") return k.main_bound;
  if (c == "posofc") return k.transform_bound;
  if (c == "case5") return k.median_bound;
  if (c == "case8") return k.pentagon_bound;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Verifiers

namespace lab {

inline LemmaReport start(std::string_view id, const LemmaOptions& o) {
  const auto& info = lemma_info(id);
  LemmaReport r;
  r.lemma_id = std::string(info.id);
  r.statement = std::string(info.statement);
  r.K_tested = o.K.value_or(info.stated_k);
  r.grid_resolution = o.grid;
  r.seed = o.seed;
  return r;
}

inline std::string alpha_frame(std::size_t steps) {
  return "alpha in [0, pi/10], " + std::to_string(steps) + " values, |ab| = 1";
}

// The right triangle with apex s = origin, right angle at v = (0, 1).
inline Triangle standard_right_triangle() { return {Point{}, Point{0.0, 1.0}, Point{-std::tan(pi / 5), 1.0}}; }

// The (3pi/10, 3pi/10, 2pi/5) triangle: s = origin, uv on y = 1, u left of v.
inline Triangle standard_cone_triangle() {
  return {Point{}, Point{std::tan(pi / 5), 1.0}, Point{-std::tan(pi / 10), 1.0}};
}

inline void verify_t253(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const std::size_t n = static_cast<std::size_t>(o.grid) * 20 + 1;
  r.frame = "proof normalization |s w_l| = 1; geometric samples with |sv| = 1";
  r.checks.push_back(scalar_check("phi_closed_form", "beta", 0.0, pi / 5, n, [&](double b) { return phi_t253(b, K); }));
  r.checks.push_back(decreasing_check("phi_decreasing_in_beta", "beta", 0.0, pi / 5, n,
                                      [&](double b) { return phi_t253(b, K); }));
  const auto t = standard_right_triangle();
  r.checks.push_back(right_triangle_check("geometric", t[0], t[1], t[2], 1.0, alpha_steps(o.grid), o.grid, K));
}

inline void verify_t334(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const std::size_t n = static_cast<std::size_t>(o.grid) * 20 + 1;
  r.frame = "proof normalization |s w_r| / sin(2pi/5) = 1; geometric samples with uv at height 1";
  r.checks.push_back(scalar_check("phi_closed_form", "beta", 0.0, pi / 10, n, [&](double b) { return phi_t334(b, K); }));
  // Sign of the printed derivative over K >= 1, independent of the tested K.
  SubCheck deriv;
  deriv.name = "derivative_negative";
  for (std::size_t i = 0; i < 100; ++i) {
    const double k = linspace(1.0001, 10.0, i, 100);
    for (std::size_t j = 0; j < 100; ++j) {
      const double b = linspace(0.0, pi / 10, j, 100);
      const double v = phi_t334_derivative(b, k);
      ++deriv.evaluations;
      if (v > deriv.max_value) {
        deriv.max_value = v;
        deriv.argmax = {{"K", k}, {"beta", b}};
      }
    }
  }
  r.checks.push_back(std::move(deriv));
  const auto t = standard_cone_triangle();
  r.checks.push_back(cone_triangle_check("geometric", t[0], t[1], t[2], pi / 10, alpha_steps(o.grid), o.grid, K));
}

inline void verify_posofc(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const std::size_t n = static_cast<std::size_t>(o.grid) * 20 + 1;
  r.frame = "alpha = pi/10 start, a slides from ell'_m to ell'; |b ell'_m| = 1";
  r.checks.push_back(scalar_check("derivative_numerator", "gamma", 0.0, pi / 10, n,
                                  [&](double g) { return psi_transform_derivative_numerator(g, K); }));
  r.checks.push_back(decreasing_check("psi_decreasing_in_gamma", "gamma", 0.0, pi / 10, n,
                                      [&](double g) { return psi_transform(g, K, 0.0); }));

  // For any c, |a c| - K|a b| never exceeds its value at a = ell'_m.
  const CanonicalFrame f = unit_frame(pi / 10);
  const Point lm = f.ell_m_p, lp = f.ell_p, b = f.b;
  const double ref_len = dist(lm, b);
  std::vector<Point> cs;
  const int g = o.grid;
  for (int i = 0; i <= g; ++i)
    for (int j = 0; j <= g; ++j) cs.push_back({linspace(-1.5, 1.5, i, g + 1), linspace(-0.5, 2.0, j, g + 1)});
  // Points on the line through ell' and ell'_m beyond ell'_m, where the bound is tight.
  for (int i = 0; i <= g; ++i) cs.push_back(lm + (lm - lp) * linspace(0.0, 3.0, i, g + 1));
  const std::size_t steps = alpha_steps(o.grid);
  r.checks.push_back(outer_max("geometric", steps, [&](std::size_t i, Tracker& tr) {
    const double lambda = linspace(0.0, 1.0, i, steps);
    const Point a = lerp(lm, lp, lambda);
    const double ab = dist(a, b);
    for (const Point c : cs) {
      const double v = ((dist(a, c) - K * ab) - (dist(lm, c) - K * ref_len)) / ref_len;
      tr.offer(v, [&] { return point_params({{"a", a}, {"c", c}}, {{"lambda", lambda}}); });
    }
  }));
}

inline void verify_claim6(LemmaReport& r, const LemmaOptions& o, bool flipped) {
  const std::size_t n = std::max<std::size_t>(1000, static_cast<std::size_t>(o.grid) * 2);
  r.frame = "alpha in [0, pi/10], " + std::to_string(n) + " values, |ab| = 1" + (flipped ? ", pentagon flipped" : "");
  auto pentagon_at = [&](const CanonicalFrame& f) {
    Pentagon p = pentagon_pab(f);
    if (flipped) {
      // Reflect across the line p2p3, putting p4 on the wrong side.
      const Point u = (p.p[3] - p.p[2]) * (1.0 / dist(p.p[2], p.p[3]));
      for (auto& q : p.p) {
        const Point d = q - p.p[2];
        q = p.p[2] + u * (2 * dot(d, u)) - d;
      }
    }
    return p;
  };
  auto per_alpha = [&](std::string name, auto value) {
    return outer_max(std::move(name), n, [&](std::size_t i, Tracker& tr) {
      const double alpha = linspace(0.0, pi / 10, i, n);
      const CanonicalFrame f = unit_frame(alpha);
      const Pentagon p = pentagon_at(f);
      tr.offer(value(f, p), [&] { return Params{{"alpha", alpha}}; });
    });
  };
  r.checks.push_back(per_alpha("p4_in_T_ab", [](const CanonicalFrame& f, const Pentagon& p) {
    const Triangle t = f.t_ab();
    return -convex_depth(std::span<const Point>(t), p.p[4]);
  }));
  r.checks.push_back(per_alpha("p0_on_segment_ell_b", [](const CanonicalFrame& f, const Pentagon& p) {
    return point_segment_distance(p.p[0], f.ell, f.b) - lemma_tolerance * f.ab();
  }));
  r.checks.push_back(per_alpha("p1_on_line_ell_b", [](const CanonicalFrame& f, const Pentagon& p) {
    return point_line_distance(p.p[1], f.ell, f.b) - lemma_tolerance * f.ab();
  }));
  r.checks.push_back(per_alpha("anchored_at_r_p_and_r_m_p", [](const CanonicalFrame& f, const Pentagon& p) {
    return std::max(dist(p.p[2], f.r_p), dist(p.p[3], f.r_m_p)) - lemma_tolerance;
  }));
  r.checks.push_back(per_alpha("regular", [](const CanonicalFrame&, const Pentagon& p) {
    double worst = 0.0;
    const double side = p.side();
    for (std::size_t i = 0; i < 5; ++i) {
      const Point prev = p.p[(i + 4) % 5], cur = p.p[i], next = p.p[(i + 1) % 5];
      worst = std::max(worst, std::abs(dist(cur, next) - side));
      worst = std::max(worst, std::abs(angle_at(cur, prev, next) - 3 * pi / 5));
    }
    return worst - lemma_tolerance;
  }));

  // At alpha = 0 the proof's ratios hold exactly.
  SubCheck ratios;
  ratios.name = "alpha0_ratios";
  {
    const CanonicalFrame f = unit_frame(0.0);
    const Pentagon p = pentagon_at(f);
    const Point p3 = p.p[3];
    const auto fpt = line_intersection(f.a, f.ell, p3, f.b);
    const double p3b = dist(p3, f.b);
    const double e1 = fpt ? std::abs(dist(p3, *fpt) / p3b - std::sin(pi / 10)) : 1.0;
    const double e2 = std::abs(dist(p3, p.p[4]) / p3b - std::sin(pi / 10) / std::sin(3 * pi / 10));
    ratios.max_value = std::max(e1, e2) - lemma_tolerance;
    ratios.argmax = {{"alpha", 0.0}, {"p3f_error", e1}, {"p3p4_error", e2}};
    ratios.evaluations = 1;
  }
  r.checks.push_back(std::move(ratios));
}

// Shared region helpers in the unit canonical frame.
struct Regions {
  CanonicalFrame f;
  Pentagon pab;
  Poly t_ab, t_ba, pent;
};

inline Regions regions(double alpha) {
  Regions g;
  g.f = unit_frame(alpha);
  g.pab = pentagon_pab(g.f);
  g.t_ab = as_poly(g.f.t_ab());
  g.t_ba = as_poly(g.f.t_ba());
  g.pent = ccw(Poly(g.pab.p.begin(), g.pab.p.end()));
  return g;
}

inline double phi_a(const CanonicalFrame& f, Point c, double K) { return evaluate(Inequality::via_c, f.a, f.b, c, c, K).slack(); }
inline double phi_b(const CanonicalFrame& f, Point d, double K) { return evaluate(Inequality::via_d, f.a, f.b, d, d, K).slack(); }
inline double phi_c(const CanonicalFrame& f, Point c, Point d, double K) {
  return evaluate(Inequality::via_c_and_d, f.a, f.b, c, d, K).slack();
}

// max over alpha and over the grid points of region(alpha) that pass keep().
template <typename Region, typename Keep, typename Value>
SubCheck region_check(std::string name, std::string_view var, std::size_t steps, int g, Region&& region, Keep&& keep,
                      Value&& value, double alpha_lo = 0.0, double alpha_hi = pi / 10) {
  return outer_max(std::move(name), steps, [&](std::size_t i, Tracker& tr) {
    const double alpha = linspace(alpha_lo, alpha_hi, i, steps);
    const Regions rg = regions(alpha);
    polygon_grid(region(rg), g, [&](Point p) {
      if (!keep(rg, p)) return;
      tr.offer(value(rg, p), [&] { return point_params({{var, p}}, {{"alpha", alpha}}); });
    });
  });
}

inline auto keep_all = [](const Regions&, Point) { return true; };

// Region left of ab (inclusive) inside a polygon.
inline Poly left_of_ab(const Regions& rg, Poly p) { return clip_left(p, rg.f.a, rg.f.b); }
inline Poly left_of_am(const Regions& rg, Poly p) { return clip_left(p, rg.f.a, rg.f.m); }

// The d-region shared by the median cases: d in T_ba, left of ab and of am.
inline Poly d_left_region(const Regions& rg) { return left_of_am(rg, left_of_ab(rg, rg.t_ba)); }

inline Poly c_in_pentagon_region(const Regions& rg) { return left_of_ab(rg, clip_to(rg.pent, rg.t_ab)); }

inline void verify_case1(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = alpha_steps(o.grid);
  r.frame = alpha_frame(steps);
  r.checks.push_back(region_check(
      "direct", "c", steps, o.grid, [](const Regions& rg) { return clip_left(rg.t_ab, rg.f.b, rg.f.a); }, keep_all,
      [&](const Regions& rg, Point c) { return phi_a(rg.f, c, K); }));
}

inline void verify_case4(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = alpha_steps(o.grid);
  r.frame = alpha_frame(steps) + "; bound on the right triangle (b, m', ell')";
  r.checks.push_back(region_check(
      "direct", "d", steps, o.grid, [](const Regions& rg) { return clip_left(rg.t_ba, rg.f.b, rg.f.a); }, keep_all,
      [&](const Regions& rg, Point d) { return phi_b(rg.f, d, K); }));
  const CanonicalFrame f = unit_frame(0.0);
  r.checks.push_back(right_triangle_check("bound", f.b, f.m_p, f.ell_p, 1.0, steps, o.grid, K));
}

inline void verify_case2(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = alpha_steps(o.grid);
  r.frame = alpha_frame(steps);
  r.checks.push_back(region_check(
      "direct", "c", steps, o.grid, [](const Regions& rg) { return left_of_ab(rg, clip_to(rg.t_ab, rg.t_ba)); },
      keep_all, [&](const Regions& rg, Point c) { return phi_a(rg.f, c, K); }));
}

// Corner q of the right triangle (a, b, q) used after sliding to alpha = pi/10.
inline Point case3_corner(const CanonicalFrame& f) {
  const Point ab = f.b - f.a;
  return *line_intersection(f.b, f.b + Point{-ab.y, ab.x}, f.a, f.ell_m);
}

inline void verify_case3(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = alpha_steps(o.grid);
  r.frame = alpha_frame(steps) + "; bound and reduction at alpha = pi/10";
  auto region = [](const Regions& rg) { return left_of_ab(rg, rg.t_ab); };
  auto keep = [](const Regions& rg, Point c) { return outside(rg.t_ba, c) && outside(rg.pent, c); };
  r.checks.push_back(region_check("direct", "c", steps, o.grid, region, keep,
                                  [&](const Regions& rg, Point c) { return phi_a(rg.f, c, K); }));
  const CanonicalFrame f = unit_frame(pi / 10);
  const Point q = case3_corner(f);
  r.checks.push_back(right_triangle_check("bound", f.a, f.b, q, 0.0, 1, o.grid, K));
  const Poly tri = as_poly({f.a, f.b, q});
  r.checks.push_back(region_check(
      "reduction_inside_right_triangle", "c", 1, o.grid, region, keep,
      [&](const Regions&, Point c) { return -convex_depth(tri, c); }, pi / 10, pi / 10));
}

inline void verify_case5(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = alpha_steps(o.grid);
  r.frame = alpha_frame(steps);
  auto region = [](const Regions& rg) { return clip_left(left_of_ab(rg, rg.t_ba), rg.f.m, rg.f.a); };
  r.checks.push_back(region_check("direct", "d", steps, o.grid, region, keep_all,
                                  [&](const Regions& rg, Point d) { return phi_b(rg.f, d, K); }));
  // |bd| - K|bd'| <= |bd| - K * (vertical drop from b to d), d' on ab level with d.
  r.checks.push_back(region_check("bound_vertical", "d", steps, o.grid, region, keep_all,
                                  [&](const Regions& rg, Point d) {
                                    return dist(rg.f.b, d) - K * (rg.f.b.y - d.y);
                                  }));
  r.checks.push_back(region_check("bound_median", "d", steps, o.grid, region, keep_all,
                                  [&](const Regions& rg, Point d) {
                                    const Point dp = rg.f.b * (d.y / rg.f.b.y);
                                    return K * (dist(d, rg.f.a) - dist(dp, rg.f.a));
                                  }));
}

template <typename CKeep, typename DRegion, typename PairKeep>
SubCheck pair_check(std::string name, std::size_t steps, int g, CKeep&& c_keep, DRegion&& d_region, PairKeep&& pair_keep,
                    double K, bool informational = false) {
  return outer_max(
      std::move(name), steps,
      [&](std::size_t i, Tracker& tr) {
        const double alpha = linspace(0.0, pi / 10, i, steps);
        const Regions rg = regions(alpha);
        std::vector<Point> cs, ds;
        for (Point c : polygon_points(c_in_pentagon_region(rg), g))
          if (c_keep(rg, c)) cs.push_back(c);
        for (Point d : polygon_points(d_region(rg), g)) ds.push_back(d);
        for (Point c : cs)
          for (Point d : ds) {
            if (!pair_keep(rg, c, d)) continue;
            tr.offer(phi_c(rg.f, c, d, K), [&] { return point_params({{"c", c}, {"d", d}}, {{"alpha", alpha}}); });
          }
      },
      informational);
}

inline void verify_case6(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = pair_alpha_steps(o.grid);
  const int g = pair_grid(o.grid);
  r.frame = alpha_frame(steps) + " for (c, d) pairs at lattice " + std::to_string(g) +
            "; bounds on the right triangle with t = v";
  r.checks.push_back(pair_check(
      "direct", steps, g, [](const Regions& rg, Point c) { return outside(rg.t_ba, c); }, d_left_region,
      [](const Regions&, Point c, Point d) { return d.y > c.y; }, K));
  const auto a_steps = alpha_steps(o.grid);
  r.checks.push_back(region_check("bound_vertical", "d", a_steps, o.grid, d_left_region, keep_all,
                                  [&](const Regions& rg, Point d) {
                                    return dist(rg.f.b, d) - K * (rg.f.b.y - d.y);
                                  }));
  const auto t = standard_right_triangle();
  r.checks.push_back(right_triangle_check("bound", t[0], t[1], t[2], 0.0, 1, o.grid, K));
}

inline void verify_case7(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = alpha_steps(o.grid);
  r.frame = alpha_frame(steps) + "; bound on the cone triangle (b, ell', r'_m)";
  auto keep = [](const Regions& rg, Point d) { return outside(rg.t_ab, d) && outside(rg.pent, d); };
  r.checks.push_back(region_check("direct", "d", steps, o.grid, d_left_region, keep,
                                  [&](const Regions& rg, Point d) { return phi_b(rg.f, d, K); }));
  r.checks.push_back(region_check("reduction_inside_cone_triangle", "d", steps, o.grid, d_left_region, keep,
                                  [&](const Regions& rg, Point d) {
                                    const Poly tri = as_poly({rg.f.b, rg.f.a, rg.f.r_m_p});
                                    return -convex_depth(tri, d);
                                  }));
  const CanonicalFrame f = unit_frame(0.0);
  r.checks.push_back(cone_triangle_check("bound", f.b, f.ell_p, f.r_m_p, pi / 10, steps, o.grid, K));
}

inline void verify_case8(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const auto steps = pair_alpha_steps(o.grid);
  const int g = pair_grid(o.grid);
  r.frame = alpha_frame(steps) + " for crossing (c, d) pairs at lattice " + std::to_string(g) +
            "; envelope at alpha = pi/10";
  auto c_keep = [](const Regions& rg, Point c) { return outside(rg.t_ba, c); };
  auto d_region = [](const Regions& rg) { return clip_to(d_left_region(rg), rg.pent); };
  auto crossing = [](const Regions& rg, Point c, Point d) {
    return d.y < c.y && segment_crossing(rg.f.a, c, rg.f.b, d).has_value();
  };
  r.checks.push_back(pair_check("direct", steps, g, c_keep, d_region, crossing, K));
  r.checks.push_back(pair_check("direct_at_spanning_ratio", steps, g, c_keep, d_region, crossing,
                                stated::spanning_ratio, true));

  // Longest |ac| and |bd| plus K times the pentagon diagonal.
  const CanonicalFrame f = unit_frame(pi / 10);
  const Pentagon p = pentagon_pab(f);
  SubCheck env;
  env.name = "envelope";
  env.evaluations = 1;
  const double ac = max_dist_in_triangle(f.a, f.t_ab());
  const double bd = max_dist_in_triangle(f.b, f.t_ba());
  const double diag = diameter(p.vertices());
  env.max_value = ac + bd + K * diag - K * f.ab();
  env.argmax = {{"alpha", pi / 10}, {"max_ac", ac}, {"max_bd", bd}, {"diagonal", diag}};
  r.checks.push_back(std::move(env));
}

struct MainLemma1Sample {
  double chain, cd, cpd, angle;
};

inline void verify_mainlemma1(LemmaReport& r, const LemmaOptions& o, bool out_of_domain) {
  const double K = r.K_tested;
  const CanonicalFrame f = unit_frame(pi / 10);
  const Pentagon pg = pentagon_pab(f);
  const Point a = f.a, b = f.b;
  const Point p0 = pg.p[0], p1 = pg.p[1], p2 = pg.p[2], p3 = pg.p[3];
  const Triangle t_ba = f.t_ba();
  r.frame = std::string("alpha = pi/10, |ab| = 1") + (out_of_domain ? ", c beyond c' (out of domain)" : "");

  static constexpr std::size_t block = 4096;
  static constexpr int n_checks = 4;
  static constexpr const char* names[n_checks] = {"chain", "cd_le_c'd", "c'd_le_c'd'", "angle_ed'c'_le_2pi/5"};
  struct BlockResult {
    std::array<Tracker, 2 * n_checks> t;
    std::size_t accepted = 0, accepted_outside = 0;
  };
  auto run_block = [&](std::size_t blk, BlockResult& out) {
    std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                      static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t s = 0; s < block; ++s) {
      Point cp = lerp(p0, p1, unit(rng));
      Point dp = lerp(p2, p3, unit(rng));
      const double uc = out_of_domain ? 1.0 + 0.5 * unit(rng) : unit(rng);
      Point c = lerp(a, cp, uc);
      Point d = lerp(b, dp, unit(rng));
      const auto cross_pt = segment_crossing(a, c, b, d);
      if (!cross_pt) continue;
      Point e = *cross_pt;
      // Symmetry reduction: make the angle at c the smallest of triangle dec.
      if (angle_at(c, d, e) > angle_at(d, c, e)) {
        const Point nc = reflect_bisector(d, a, b), nd = reflect_bisector(c, a, b);
        const Point ncp = reflect_bisector(dp, a, b), ndp = reflect_bisector(cp, a, b);
        c = nc, d = nd, cp = ncp, dp = ndp;
        e = reflect_bisector(e, a, b);
      }
      const double v[n_checks] = {
          (dist(a, c) + dist(b, d) + K * dist(c, d)) - (dist(a, cp) + dist(b, dp) + K * dist(cp, dp)),
          dist(c, d) - dist(cp, d),
          dist(cp, d) - dist(cp, dp),
          angle_at(dp, e, cp) - 2 * pi / 5,
      };
      const std::size_t idx = blk * block + s;
      auto params = [&] {
        return point_params({{"c", c}, {"d", d}, {"c'", cp}, {"d'", dp}}, {{"draw", double(idx)}});
      };
      ++out.accepted;
      for (int k = 0; k < n_checks; ++k) out.t[k].offer(v[k], params);
      if (outside(t_ba, c)) {
        ++out.accepted_outside;
        for (int k = 0; k < n_checks; ++k) out.t[n_checks + k].offer(v[k], params);
      }
    }
  };

  std::array<SubCheck, 2 * n_checks> checks;
  for (int k = 0; k < 2 * n_checks; ++k)
    checks[k].name = std::string(k < n_checks ? "" : "c_outside_T_ba:") + names[k % n_checks];
  std::size_t accepted = 0, next_block = 0;
  const std::size_t wave = std::max<std::size_t>(thread_count(), 1) * 4;
  while (accepted < o.samples) {
    std::vector<BlockResult> res(wave);
    parallel_for(wave, [&](std::size_t w) { run_block(next_block + w, res[w]); });
    for (auto& br : res) {
      if (accepted >= o.samples) break;
      accepted += br.accepted;
      for (int k = 0; k < 2 * n_checks; ++k) {
        checks[k].evaluations += br.t[k].evaluations;
        if (br.t[k].value > checks[k].max_value) {
          checks[k].max_value = br.t[k].value;
          checks[k].argmax = br.t[k].argmax;
        }
      }
    }
    next_block += wave;
  }
  r.samples = accepted;
  for (auto& c : checks) r.checks.push_back(std::move(c));

  SubCheck witness;
  witness.name = "tangency_witness";
  witness.evaluations = 1;
  const double ang = angle_at(p3, b, p1);
  witness.max_value = std::abs(ang - 2 * pi / 5) - lemma_tolerance;
  witness.argmax = {{"angle_b_p3_p1", ang}};
  r.checks.push_back(std::move(witness));
}

inline void verify_mainlemma2(LemmaReport& r, const LemmaOptions& o) {
  const double K = r.K_tested;
  const CanonicalFrame f = unit_frame(pi / 10);
  const Pentagon pg = pentagon_pab(f);
  const Point a = f.a, b = f.b;
  const Point p0 = pg.p[0], p1 = pg.p[1], p2 = pg.p[2], p3 = pg.p[3];
  const double phi2 = dist(a, p1) + K * dist(p1, p3) + dist(p3, b) - K * f.ab();
  const std::size_t g = static_cast<std::size_t>(o.grid) + 1;
  r.frame = "alpha = pi/10, |ab| = 1, " + std::to_string(g) + " x " + std::to_string(g) + " grid";

  r.checks.push_back(outer_max("phi'_le_phi''", g, [&](std::size_t i, Tracker& tr) {
    const Point cp = lerp(p0, p1, linspace(0.0, 1.0, i, g));
    for (std::size_t j = 0; j < g; ++j) {
      const Point dp = lerp(p2, p3, linspace(0.0, 1.0, j, g));
      if (dist(p1, cp) > dist(p2, dp) * (1 + 1e-12) + 1e-15) continue;
      const double phi1 = dist(a, cp) + K * dist(cp, dp) + dist(dp, b) - K * f.ab();
      tr.offer(phi1 - phi2, [&] { return point_params({{"c'", cp}, {"d'", dp}}); });
    }
  }));

  SubCheck endpoint;
  endpoint.name = "phi''_nonpositive";
  endpoint.evaluations = 1;
  endpoint.max_value = phi2;
  endpoint.argmax = {{"K", K}};
  r.checks.push_back(std::move(endpoint));

  // Law of sines along p2p3 with c' = p1 against coordinates.
  const double side = dist(p1, p2);
  r.checks.push_back(outer_max("law_of_sines", 1, [&](std::size_t, Tracker& tr) {
    for (std::size_t j = 0; j < g; ++j) {
      const Point dp = lerp(p2, p3, linspace(0.0, 1.0, j, g));
      const double theta = angle_at(p1, p2, dp);
      const double e1 = std::abs(dist(p2, dp) - std::sin(theta) / std::sin(2 * pi / 5 - theta) * side);
      const double e2 = std::abs(dist(p1, dp) - std::sin(3 * pi / 5) / std::sin(2 * pi / 5 - theta) * side);
      tr.offer(std::max(e1, e2) - 1e-10, [&] { return Params{{"theta", theta}}; });
    }
  }));

  r.checks.push_back(scalar_check("derivative_positive", "theta", 0.0, 3 * pi / 10, 10000,
                                  [&](double t) { return -mainlemma2_derivative(t, K); }));
}

inline void verify_constants(LemmaReport& r) {
  const auto k = bound_constants();
  r.frame = "closed forms";
  auto add = [&](std::string name, double value, Params p) {
    SubCheck c;
    c.name = std::move(name);
    c.max_value = value;
    c.argmax = std::move(p);
    c.evaluations = 1;
    r.checks.push_back(std::move(c));
  };
  // Truncation to two decimals, the way the values are printed ("4.52...").
  auto trunc2 = [](double x) { return std::floor(x * 100.0 + 1e-12) / 100.0; };
  add("main_below_spanning_ratio", k.main_bound - stated::spanning_ratio, {{"K_main", k.main_bound}});
  add("main_prints_5.69", std::abs(trunc2(k.main_bound) - 5.69) - 1e-12, {{"K_main", k.main_bound}});
  add("right_triangle_prints_4.52", std::abs(trunc2(k.right_triangle_bound) - 4.52) - 1e-12,
      {{"K_t253", k.right_triangle_bound}});
  add("transform_prints_3.23", std::abs(trunc2(k.transform_bound) - 3.23) - 1e-12, {{"K_posofc", k.transform_bound}});
  add("median_prints_3.23", std::abs(trunc2(k.median_bound) - 3.23) - 1e-12, {{"K_case5", k.median_bound}});
  add("pentagon_prints_6.15", std::abs(trunc2(k.pentagon_bound) - 6.15) - 1e-12, {{"K_case8", k.pentagon_bound}});
  add("transform_equals_median", std::abs(k.transform_bound - k.median_bound) - 1e-12, {});
  // 1/cos(2pi/5) = 1/sin(pi/10) = 1 + sqrt(5), twice the golden ratio.
  add("golden_ratio_identity", std::abs(k.transform_bound - (1.0 + std::sqrt(5.0))) - 1e-12, {});
  add("stated_values_round_up", std::max({k.right_triangle_bound - stated::right_triangle,
                                          k.transform_bound - stated::transform, k.median_bound - stated::median,
                                          k.pentagon_bound - stated::pentagon}),
      {});
}

}  // namespace lab

// Runs the verifier for one lemma identifier (or alias).
inline LemmaReport verify_lemma(std::string_view id, const LemmaOptions& o = {}) {
  if (o.grid < 2) throw precondition_error("grid must be at least 2");
  LemmaReport r = lab::start(id, o);
  const std::string& c = r.lemma_id;
  if (c == "t253") lab::verify_t253(r, o);
  else if (c == "t334") lab::verify_t334(r, o);
  else if (c == "posofc") lab::verify_posofc(r, o);
  else if (c == "claim6") lab::verify_claim6(r, o, false);
  else if (c == "case1") lab::verify_case1(r, o);
  else if (c == "case4") lab::verify_case4(r, o);
  else if (c == "case2") lab::verify_case2(r, o);
  else if (c == "case3") lab::verify_case3(r, o);
  else if (c == "case5") lab::verify_case5(r, o);
  else if (c == "case6") lab::verify_case6(r, o);
  else if (c == "case7") lab::verify_case7(r, o);
  else if (c == "case8") lab::verify_case8(r, o);
  else if (c == "mainlemma1") lab::verify_mainlemma1(r, o, false);
  else if (c == "mainlemma2") lab::verify_mainlemma2(r, o);
  else if (c == "constants") lab::verify_constants(r);
  lab::finalize(r);
  return r;
}

// Case lemmas by their position 8..15 in the argument.
inline LemmaReport verify_case_lemma(int number, const LemmaOptions& o = {}) {
  if (number < 8 || number > 15) throw precondition_error("case lemma number must be in [8, 15]");
  return verify_lemma("lemma" + std::to_string(number), o);
}

inline LemmaReport verify_case_lemma(CaseLabel label, const LemmaOptions& o = {}) {
  if (label == CaseLabel::direct_edge) throw precondition_error("DIRECT_EDGE has no lemma");
  return verify_lemma(case_info(label).id, o);
}

inline LemmaReport verify_mainlemma1(std::size_t samples, std::uint64_t seed, double K = stated::spanning_ratio,
                                     bool out_of_domain = false) {
  if (samples < 1) throw precondition_error("samples must be at least 1");
  LemmaOptions o;
  o.samples = samples;
  o.seed = seed;
  o.K = K;
  LemmaReport r = lab::start("mainlemma1", o);
  lab::verify_mainlemma1(r, o, out_of_domain);
  lab::finalize(r);
  return r;
}

inline LemmaReport verify_mainlemma2(int grid, double K = stated::spanning_ratio) {
  LemmaOptions o;
  o.grid = grid;
  o.K = K;
  return verify_lemma("mainlemma2", o);
}

// Pentagon anchoring check with the pentagon reflected to the wrong side: must fail.
inline LemmaReport verify_claim6_flipped(int grid) {
  LemmaOptions o;
  o.grid = grid;
  LemmaReport r = lab::start("claim6", o);
  lab::verify_claim6(r, o, true);
  lab::finalize(r);
  return r;
}

inline std::vector<LemmaReport> verify_all_lemmas(const LemmaOptions& o = {}) {
  std::vector<LemmaReport> out;
  for (const auto& l : lemma_table) {
    out.push_back(verify_lemma(l.id, o));
  }
  return out;
}

}  // namespace theta_lab
