#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "theta_lab/geometry.hpp"

namespace theta_lab {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;  // first < second

class ThetaGraph;
inline ThetaGraph build_theta_graph(std::span<const Point> points, int k);

// Theta_k graph of a point set. Vertices are indices into `points`.
class ThetaGraph {
 public:
  ThetaGraph() = default;

  int k() const { return k_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(Vertex v) const { return points_.at(v); }

  // Sorted, each edge once with first < second.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& adj = adjacency_.at(u);
    return std::binary_search(adj.begin(), adj.end(), v);
  }

  // Closest point of cone `cone` of v, or nullopt when the cone is empty.
  std::optional<Vertex> cone_target(Vertex v, int cone) const { return targets_.at(v).at(cone); }

  std::size_t out_degree(Vertex v) const {
    const auto& t = targets_.at(v);
    return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [](auto& o) { return o.has_value(); }));
  }

  friend ThetaGraph build_theta_graph(std::span<const Point> points, int k);

 private:
  int k_ = 0;
  std::vector<Point> points_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::vector<std::optional<Vertex>>> targets_;
};

// Relative gap under which two cone distances count as tied.
inline constexpr double cone_tie_tolerance = 1e-12;

// Throws general_position_error naming the offending indices when two points
// share an x or y coordinate, a coordinate is not finite, or two points tie
// for cone distance within one cone of a third point.
inline void validate_general_position(std::span<const Point> points, int k) {
  if (k < 3) throw precondition_error("cone count k must be at least 3, got " + std::to_string(k));
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!points[i].finite()) throw general_position_error("point " + std::to_string(i) + " has a non-finite coordinate", {i});

  std::vector<std::size_t> order(n);
  for (int axis = 0; axis < 2; ++axis) {
    auto coord = [&](std::size_t i) { return axis == 0 ? points[i].x : points[i].y; };
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto l, auto r) { return coord(l) < coord(r) || (coord(l) == coord(r) && l < r); });
    for (std::size_t i = 1; i < n; ++i) {
      if (coord(order[i - 1]) == coord(order[i])) {
        auto lo = std::min(order[i - 1], order[i]);
        auto hi = std::max(order[i - 1], order[i]);
        throw general_position_error(std::string("points ") + std::to_string(lo) + " and " + std::to_string(hi) +
                                         " share the same " + (axis == 0 ? "x" : "y") + " coordinate",
                                     {lo, hi});
      }
    }
  }

  struct Entry {
    int cone;
    double d;
    std::size_t w;
  };
  std::vector<Entry> entries;
  for (std::size_t v = 0; v < n; ++v) {
    entries.clear();
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v) continue;
      const ConeIndex c = cone_index(points[v], points[w], k);
      entries.push_back({c.i, bisector_projection(points[v], points[w], c), w});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
      return l.cone != r.cone ? l.cone < r.cone : l.d < r.d;
    });
    for (std::size_t i = 1; i < entries.size(); ++i) {
      const Entry& p = entries[i - 1];
      const Entry& q = entries[i];
      if (p.cone != q.cone) continue;
      if (q.d - p.d <= cone_tie_tolerance * std::max(std::abs(q.d), std::abs(p.d))) {
        auto lo = std::min(p.w, q.w);
        auto hi = std::max(p.w, q.w);
        throw general_position_error("points " + std::to_string(lo) + " and " + std::to_string(hi) +
                                         " tie for cone distance in cone " + std::to_string(p.cone) + " of point " +
                                         std::to_string(v),
                                     {v, lo, hi});
      }
    }
  }
}

// Naive O(k n^2) construction: every vertex links to the point of each
// non-empty cone with the smallest projection onto that cone's bisector.
inline ThetaGraph build_theta_graph(std::span<const Point> points, int k) {
  if (k < 3) throw precondition_error("cone count k must be at least 3, got " + std::to_string(k));
  if (points.empty()) throw precondition_error("build_theta_graph: empty point set");
  validate_general_position(points, k);

  ThetaGraph g;
  g.k_ = k;
  g.points_.assign(points.begin(), points.end());
  const std::size_t n = points.size();
  g.targets_.assign(n, std::vector<std::optional<Vertex>>(static_cast<std::size_t>(k)));
  std::vector<double> best(static_cast<std::size_t>(k));
  for (Vertex v = 0; v < n; ++v) {
    auto& tv = g.targets_[v];
    for (Vertex w = 0; w < n; ++w) {
      if (w == v) continue;
      const ConeIndex c = cone_index(points[v], points[w], k);
      const double d = bisector_projection(points[v], points[w], c);
      auto& slot = tv[static_cast<std::size_t>(c.i)];
      if (!slot || d < best[static_cast<std::size_t>(c.i)]) {
        slot = w;
        best[static_cast<std::size_t>(c.i)] = d;
      }
    }
    for (const auto& t : tv)
      if (t) g.edges_.emplace_back(std::min(v, *t), std::max(v, *t));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.adjacency_.assign(n, {});
  for (const auto& [u, v] : g.edges_) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
  return g;
}

inline ThetaGraph build_theta_graph(const std::vector<Point>& points, int k) {
  return build_theta_graph(std::span<const Point>(points), k);
}

inline std::optional<Vertex> nearest_in_cone(const ThetaGraph& g, Vertex v, const ConeIndex& cone) {
  if (cone.k != g.k()) throw precondition_error("nearest_in_cone: cone count does not match the graph");
  if (v >= g.size()) throw precondition_error("nearest_in_cone: vertex out of range");
  return g.cone_target(v, cone.i);
}

}  // namespace theta_lab
