#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "theta_lab/canonical.hpp"
#include "theta_lab/constants.hpp"
#include "theta_lab/theta_graph.hpp"

namespace theta_lab {

// Location of (c, d) relative to the canonical frame of a pair. c is the
// closest point to a in the cone containing b, d the closest point to b in the
// cone containing a. The enumerators follow the decision order of the case
// breakdown.
enum class CaseLabel {
  direct_edge,
  c_right_ab,
  d_right_ab,
  c_in_tba,
  c_not_in_pab,
  d_right_am,
  d_left_am_above_c,
  d_below_c_not_in_pab,
  both_in_pab_crossing,
};

// Which detour bounds the pair:
//   via_c        |ac| + K|cb|        <= K|ab|, recurse on (c, b)
//   via_d        |bd| + K|da|        <= K|ab|, recurse on (d, a)
//   via_c_and_d  |ac| + K|cd| + |db| <= K|ab|, recurse on (c, d)
enum class Inequality { edge, via_c, via_d, via_c_and_d };

struct CaseInfo {
  CaseLabel label;
  std::string_view name;
  std::string_view id;  // lemma identifier used by the command line
  Inequality inequality;
  double stated_k;
};

inline constexpr std::array<CaseInfo, 9> case_table{{
    {CaseLabel::direct_edge, "DIRECT_EDGE", "edge", Inequality::edge, 1.0},
    {CaseLabel::c_right_ab, "C_RIGHT_AB", "case1", Inequality::via_c, stated::right_triangle},
    {CaseLabel::d_right_ab, "D_RIGHT_AB", "case4", Inequality::via_d, stated::right_triangle},
    {CaseLabel::c_in_tba, "C_IN_TBA", "case2", Inequality::via_c, stated::spanning_ratio},
    {CaseLabel::c_not_in_pab, "C_NOT_IN_PAB", "case3", Inequality::via_c, stated::right_triangle},
    {CaseLabel::d_right_am, "D_RIGHT_AM", "case5", Inequality::via_d, stated::median},
    {CaseLabel::d_left_am_above_c, "D_LEFT_AM_ABOVE_C", "case6", Inequality::via_c_and_d, stated::right_triangle},
    {CaseLabel::d_below_c_not_in_pab, "D_BELOW_C_NOT_IN_PAB", "case7", Inequality::via_d, stated::spanning_ratio},
    {CaseLabel::both_in_pab_crossing, "BOTH_IN_PAB_CROSSING", "case8", Inequality::via_c_and_d, stated::pentagon},
}};

inline const CaseInfo& case_info(CaseLabel l) { return case_table[static_cast<std::size_t>(l)]; }

inline std::string_view to_string(CaseLabel l) { return case_info(l).name; }

inline std::string_view to_string(Inequality q) {
  switch (q) {
    case Inequality::edge: return "edge";
    case Inequality::via_c: return "A";
    case Inequality::via_d: return "B";
    case Inequality::via_c_and_d: return "C";
  }
  return "?";
}

// Side tests in canonical coordinates use this tolerance relative to |ab|.
inline constexpr double side_tolerance = 1e-12;

inline CaseLabel classify_case(const CanonicalFrame& f, Point c, Point d, const Pentagon& pab) {
  const double tol = side_tolerance * f.ab();
  if (side_of(f.a, f.b, c) < -tol) return CaseLabel::c_right_ab;
  if (side_of(f.a, f.b, d) < -tol) return CaseLabel::d_right_ab;
  if (contains(f.t_ba(), c)) return CaseLabel::c_in_tba;
  if (!contains(pab.vertices(), c)) return CaseLabel::c_not_in_pab;
  if (side_of(f.a, f.m, d) < -tol) return CaseLabel::d_right_am;
  if (d.y > c.y) return CaseLabel::d_left_am_above_c;
  if (!contains(pab.vertices(), d)) return CaseLabel::d_below_c_not_in_pab;
  return CaseLabel::both_in_pab_crossing;
}

// Slack lhs - rhs of an inequality; non-positive means it holds.
struct InequalityValue {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack() const { return lhs - rhs; }
};

inline InequalityValue evaluate(Inequality q, Point a, Point b, Point c, Point d, double K) {
  const double ab = dist(a, b);
  switch (q) {
    case Inequality::edge: return {ab, K * ab};
    case Inequality::via_c: return {dist(a, c) + K * dist(c, b), K * ab};
    case Inequality::via_d: return {dist(b, d) + K * dist(d, a), K * ab};
    case Inequality::via_c_and_d: return {dist(a, c) + K * dist(c, d) + dist(d, b), K * ab};
  }
  return {};
}

struct CertificateStep {
  // Pair handled by this step, in the orientation the recursion visited it.
  Vertex u = 0, v = 0;
  // Canonical roles: a_role/b_role are u/v, or v/u when the pair was swapped.
  Vertex a_role = 0, b_role = 0;
  bool swapped = false;
  CaseLabel label = CaseLabel::direct_edge;
  Inequality inequality = Inequality::edge;
  std::optional<Vertex> c, d;
  double lhs = 0.0, rhs = 0.0;
  double pair_distance = 0.0;
  bool c_equals_d = false;
  // Set when the label's own inequality failed and another one was used.
  bool fallback = false;
};

struct PathCertificate {
  Vertex a = 0, b = 0;
  double K = 0.0;
  std::vector<Vertex> walk;
  std::vector<CertificateStep> steps;
  double total_length = 0.0;
  double bound = 0.0;
};

// Relative tolerance of certificate checks, in units of the pair distance.
inline constexpr double certificate_tolerance = 1e-9;

// Builds the inductive path from a to b: an edge when ab is one, otherwise a
// detour through c and/or d chosen by the case breakdown, recursing on a
// strictly shorter pair. Throws counterexample_error if no inequality holds or
// the recursion fails to shrink.
inline PathCertificate inductive_path(const ThetaGraph& g, Vertex a, Vertex b, double K) {
  if (g.k() != theta5) throw precondition_error("inductive_path: graph must have five cones");
  if (a >= g.size() || b >= g.size()) throw precondition_error("inductive_path: vertex out of range");
  if (a == b) throw precondition_error("inductive_path: a and b must differ");

  PathCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.K = K;
  cert.bound = K * dist(g.point(a), g.point(b));

  std::vector<Vertex> left, right;
  Vertex u = a, v = b;
  double previous = std::numeric_limits<double>::infinity();
  while (true) {
    if (u == v) {
      // Reached when c == d: both flanking edges are already recorded.
      left.push_back(u);
      break;
    }
    const Point pu = g.point(u), pv = g.point(v);
    CertificateStep step;
    step.u = u;
    step.v = v;
    step.pair_distance = dist(pu, pv);
    if (!(step.pair_distance < previous)) {
      std::ostringstream msg;
      msg << "recursion did not shrink at pair (" << u << ", " << v << "): " << step.pair_distance
          << " >= " << previous;
      throw counterexample_error(msg.str());
    }
    previous = step.pair_distance;

    if (g.has_edge(u, v)) {
      step.a_role = u;
      step.b_role = v;
      const auto val = evaluate(Inequality::edge, pu, pv, pu, pv, K);
      step.lhs = val.lhs;
      step.rhs = val.rhs;
      cert.steps.push_back(step);
      left.push_back(u);
      left.push_back(v);
      break;
    }

    const NormalizedPair np = normalize_pair(pu, pv);
    step.swapped = np.transform.swapped;
    const Vertex ca = step.swapped ? v : u;
    const Vertex cb = step.swapped ? u : v;
    step.a_role = ca;
    step.b_role = cb;
    const auto c = g.cone_target(ca, cone_index(g.point(ca), g.point(cb), theta5).i);
    const auto d = g.cone_target(cb, cone_index(g.point(cb), g.point(ca), theta5).i);
    if (!c || !d || *c == cb || *d == ca)
      throw counterexample_error("inductive_path: ab is not an edge but a cone of a or b is resolved to the pair");
    step.c = c;
    step.d = d;
    step.c_equals_d = *c == *d;

    const Point qa = np.frame.a, qb = np.frame.b;
    const Point qc = np.transform.apply(g.point(*c));
    const Point qd = np.transform.apply(g.point(*d));
    step.label = classify_case(np.frame, qc, qd, pentagon_pab(np.frame));
    step.inequality = case_info(step.label).inequality;

    const double tol = certificate_tolerance * step.pair_distance;
    auto val = evaluate(step.inequality, qa, qb, qc, qd, K);
    if (val.slack() > tol) {
      step.fallback = true;
      bool found = false;
      for (Inequality alt : {Inequality::via_c, Inequality::via_d, Inequality::via_c_and_d}) {
        const auto alt_val = evaluate(alt, qa, qb, qc, qd, K);
        if (alt_val.slack() <= tol) {
          step.inequality = alt;
          val = alt_val;
          found = true;
          break;
        }
      }
      if (!found) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "no detour inequality holds at K=" << K << " for pair (" << ca << ", " << cb << ") with c=" << *c
            << ", d=" << *d << ", label " << to_string(step.label) << ", slack " << val.slack();
        throw counterexample_error(msg.str());
      }
    }
    step.lhs = val.lhs;
    step.rhs = val.rhs;
    cert.steps.push_back(step);

    // Continue on the sub-pair, keeping the walk oriented from a to b.
    switch (step.inequality) {
      case Inequality::via_c:
        if (!step.swapped) {
          left.push_back(u);
          u = *c;
        } else {
          right.push_back(v);
          v = *c;
        }
        break;
      case Inequality::via_d:
        if (!step.swapped) {
          right.push_back(v);
          v = *d;
        } else {
          left.push_back(u);
          u = *d;
        }
        break;
      case Inequality::via_c_and_d:
        left.push_back(u);
        right.push_back(v);
        if (!step.swapped) {
          u = *c;
          v = *d;
        } else {
          u = *d;
          v = *c;
        }
        break;
      case Inequality::edge: break;
    }
  }

  cert.walk = std::move(left);
  cert.walk.insert(cert.walk.end(), right.rbegin(), right.rend());
  for (std::size_t i = 1; i < cert.walk.size(); ++i)
    cert.total_length += dist(g.point(cert.walk[i - 1]), g.point(cert.walk[i]));
  return cert;
}

// Independent re-check of a certificate against the graph. Returns a list of
// problems, empty when the certificate is valid.
inline std::vector<std::string> validate_certificate(const ThetaGraph& g, const PathCertificate& cert) {
  std::vector<std::string> problems;
  const double ab = dist(g.point(cert.a), g.point(cert.b));
  const double tol = certificate_tolerance * ab;
  if (cert.walk.empty() || cert.walk.front() != cert.a || cert.walk.back() != cert.b)
    problems.push_back("walk does not run from a to b");
  double length = 0.0;
  for (std::size_t i = 1; i < cert.walk.size(); ++i) {
    if (!g.has_edge(cert.walk[i - 1], cert.walk[i]))
      problems.push_back("walk step " + std::to_string(i) + " is not a graph edge");
    length += dist(g.point(cert.walk[i - 1]), g.point(cert.walk[i]));
  }
  if (std::abs(length - cert.total_length) > tol) problems.push_back("total_length does not match the walk");
  if (std::abs(cert.bound - cert.K * ab) > tol) problems.push_back("bound is not K|ab|");
  if (length > cert.K * ab + tol) problems.push_back("walk is longer than K|ab|");

  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    const Point pa = g.point(s.a_role), pb = g.point(s.b_role);
    const double d = dist(pa, pb);
    if (!(d < previous)) problems.push_back(where + "pair distance did not decrease");
    previous = d;
    if (s.inequality == Inequality::edge) {
      if (!g.has_edge(s.u, s.v)) problems.push_back(where + "direct step on a non-edge");
      continue;
    }
    if (!s.c || !s.d) {
      problems.push_back(where + "missing c or d");
      continue;
    }
    const auto val = evaluate(s.inequality, pa, pb, g.point(*s.c), g.point(*s.d), cert.K);
    if (val.slack() > certificate_tolerance * d) problems.push_back(where + "inequality does not hold");
    if (std::abs(val.lhs - s.lhs) > 1e-9 * d || std::abs(val.rhs - s.rhs) > 1e-9 * d)
      problems.push_back(where + "recorded inequality sides do not match the coordinates");
  }
  return problems;
}

}  // namespace theta_lab
