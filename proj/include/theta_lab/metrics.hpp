#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "theta_lab/parallel.hpp"
#include "theta_lab/theta_graph.hpp"

namespace theta_lab {

struct Path {
  double length = 0.0;
  std::vector<Vertex> vertices;
};

inline constexpr double infinity = std::numeric_limits<double>::infinity();

namespace detail {

// Single-source Dijkstra; fills dist and pred (pred[s] == s, unreached ==
// size()). Neighbors are scanned in ascending index order.
inline void dijkstra(const ThetaGraph& g, Vertex s, std::vector<double>& dist_out, std::vector<Vertex>& pred) {
  const std::size_t n = g.size();
  dist_out.assign(n, infinity);
  pred.assign(n, n);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist_out[s] = 0.0;
  pred[s] = s;
  queue.emplace(0.0, s);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist_out[u]) continue;
    for (Vertex w : g.neighbors(u)) {
      const double nd = d + dist(g.point(u), g.point(w));
      if (nd < dist_out[w]) {
        dist_out[w] = nd;
        pred[w] = u;
        queue.emplace(nd, w);
      }
    }
  }
}

}  // namespace detail

// Shortest path by Euclidean edge length. nullopt when t is unreachable.
inline std::optional<Path> shortest_path(const ThetaGraph& g, Vertex s, Vertex t) {
  if (s >= g.size() || t >= g.size()) throw precondition_error("shortest_path: vertex out of range");
  if (s == t) return Path{0.0, {s}};
  std::vector<double> d;
  std::vector<Vertex> pred;
  detail::dijkstra(g, s, d, pred);
  if (!std::isfinite(d[t])) return std::nullopt;
  Path p;
  p.length = d[t];
  for (Vertex v = t; v != s; v = pred[v]) p.vertices.push_back(v);
  p.vertices.push_back(s);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

// Dense matrix of graph distances, row-major, infinity where unreachable.
inline std::vector<double> all_pairs_distances(const ThetaGraph& g) {
  const std::size_t n = g.size();
  std::vector<double> out(n * n);
  parallel_for(n, [&](std::size_t s) {
    std::vector<double> d;
    std::vector<Vertex> pred;
    detail::dijkstra(g, s, d, pred);
    std::copy(d.begin(), d.end(), out.begin() + static_cast<std::ptrdiff_t>(s * n));
  });
  return out;
}

struct StretchReport {
  double ratio = 1.0;
  std::pair<Vertex, Vertex> witness{0, 0};
  double graph_distance = 0.0;
  double euclidean_distance = 0.0;
  std::vector<Vertex> path;
  // Row-major n x n ratios (diagonal 1) when requested.
  std::optional<std::vector<double>> per_pair_ratios;
};

inline constexpr double ratio_tie_tolerance = 1e-9;

// Maximum over unordered pairs of graph distance / Euclidean distance. Near
// ties (relative 1e-9) keep the lexicographically smallest pair.
inline StretchReport spanning_ratio(const ThetaGraph& g, bool keep_matrix = false) {
  const std::size_t n = g.size();
  if (n < 2) throw precondition_error("spanning_ratio: need at least two points");
  const std::vector<double> d = all_pairs_distances(g);

  StretchReport rep;
  rep.ratio = -infinity;
  std::vector<double> matrix;
  if (keep_matrix) matrix.assign(n * n, 1.0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double e = dist(g.point(u), g.point(v));
      const double r = d[u * n + v] / e;
      if (keep_matrix) matrix[u * n + v] = matrix[v * n + u] = r;
      if (r > rep.ratio * (1.0 + ratio_tie_tolerance) || rep.ratio == -infinity) {
        rep.ratio = r;
        rep.witness = {u, v};
        rep.graph_distance = d[u * n + v];
        rep.euclidean_distance = e;
      }
    }
  }
  if (auto p = shortest_path(g, rep.witness.first, rep.witness.second)) rep.path = std::move(p->vertices);
  if (keep_matrix) rep.per_pair_ratios = std::move(matrix);
  return rep;
}

// Uniform points in the unit square.
inline std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  return pts;
}

inline bool in_general_position(std::span<const Point> pts, int k) {
  try {
    validate_general_position(pts, k);
    return true;
  } catch (const general_position_error&) {
    return false;
  }
}

struct SearchResult {
  StretchReport report;
  std::vector<Point> points;
  std::size_t accepted = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
};

// Perturb-and-accept local search for point sets with a large spanning ratio.
// Each step moves one point, or every point, by Gaussian noise whose scale is
// log-uniform in [1e-3, 0.5] times the current bounding-box diagonal; the move
// is kept only when the ratio strictly increases and the set stays in general
// position.
inline SearchResult stretch_search(std::size_t n, std::size_t iterations, std::uint64_t seed, int k = 5) {
  if (n < 3) throw precondition_error("stretch_search: need n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Point> pts(n);
  do {
    for (auto& p : pts) p = {unit(rng), unit(rng)};
  } while (!in_general_position(pts, k));

  SearchResult res;
  res.seed = seed;
  res.iterations = iterations;
  res.report = spanning_ratio(build_theta_graph(pts, k));

  std::vector<Point> cand;
  for (std::size_t it = 0; it < iterations; ++it) {
    double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
    for (const auto& p : pts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    const double diag = std::hypot(hi_x - lo_x, hi_y - lo_y);
    const double sigma = diag * std::pow(10.0, -3.0 + unit(rng) * (3.0 - 0.3));
    cand = pts;
    if (unit(rng) < 0.5) {
      const auto i = static_cast<std::size_t>(unit(rng) * static_cast<double>(n)) % n;
      cand[i].x += sigma * gauss(rng);
      cand[i].y += sigma * gauss(rng);
    } else {
      for (auto& p : cand) {
        p.x += sigma * gauss(rng);
        p.y += sigma * gauss(rng);
      }
    }
    if (!in_general_position(cand, k)) continue;
    StretchReport r = spanning_ratio(build_theta_graph(cand, k));
    if (r.ratio > res.report.ratio) {
      res.report = std::move(r);
      pts.swap(cand);
      ++res.accepted;
    }
  }
  res.points = std::move(pts);
  return res;
}

}  // namespace theta_lab
