#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "theta_lab/lemma_lab.hpp"
#include "theta_lab/metrics.hpp"
#include "theta_lab/router.hpp"
#include "theta_lab/theta_graph.hpp"

namespace theta_lab {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Point-set files

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(std::string_view tok) {
  double v = 0.0;
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

}  // namespace detail

// One point per line as two whitespace-separated numbers; blank lines and
// lines starting with '#' are skipped.
inline std::vector<Point> parse_points_text(const std::string& text) {
  std::vector<Point> pts;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = detail::trim(raw);
    if (s.empty() || s.front() == '#') continue;
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < s.size()) {
      const auto b = s.find_first_not_of(" \t", pos);
      if (b == std::string_view::npos) break;
      const auto e = std::min(s.find_first_of(" \t", b), s.size());
      tokens.push_back(s.substr(b, e - b));
      pos = e;
    }
    if (tokens.size() != 2)
      throw parse_error("line " + std::to_string(line) + ": expected two numbers, got " + std::to_string(tokens.size()) +
                            " fields",
                        line);
    const auto x = detail::parse_double(tokens[0]);
    const auto y = detail::parse_double(tokens[1]);
    if (!x || !y) throw parse_error("line " + std::to_string(line) + ": not a number: '" + std::string(s) + "'", line);
    pts.push_back({*x, *y});
  }
  return pts;
}

// {"points": [[x, y], ...]}; extra keys are ignored, so graph files re-ingest.
inline std::vector<Point> parse_points_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t line = detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw parse_error("line " + std::to_string(line) + ": invalid JSON: " + e.what(), line);
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw parse_error("JSON input must be an object with a \"points\" array", 0);
  std::vector<Point> pts;
  std::size_t i = 0;
  for (const auto& p : doc["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw parse_error("points[" + std::to_string(i) + "] is not a pair of numbers", 0);
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
    ++i;
  }
  return pts;
}

inline std::vector<Point> parse_points(const std::string& text) {
  const std::string_view s = detail::trim(text);
  if (!s.empty() && s.front() == '{') return parse_points_json(text);
  return parse_points_text(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'", 0);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON

inline json to_json(Point p) { return json::array({p.x, p.y}); }

inline json points_to_json(std::span<const Point> pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

inline json to_json(const ThetaGraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(json::array({u, v}));
  json targets = json::array();
  for (Vertex v = 0; v < g.size(); ++v) {
    json row = json::array();
    for (int c = 0; c < g.k(); ++c) {
      const auto t = g.cone_target(v, c);
      row.push_back(t ? json(*t) : json(nullptr));
    }
    targets.push_back(std::move(row));
  }
  return {{"k", g.k()}, {"points", points_to_json(g.points())}, {"edges", std::move(edges)},
          {"cone_targets", std::move(targets)}};
}

inline json to_json(const StretchReport& r) {
  json out = {{"ratio", r.ratio},
              {"witness", json::array({r.witness.first, r.witness.second})},
              {"graph_distance", r.graph_distance},
              {"euclidean_distance", r.euclidean_distance},
              {"path", r.path}};
  if (r.per_pair_ratios) out["per_pair_ratios"] = *r.per_pair_ratios;
  return out;
}

inline json to_json(const CertificateStep& s) {
  json out = {{"pair", json::array({s.u, s.v})},
              {"canonical_pair", json::array({s.a_role, s.b_role})},
              {"swapped", s.swapped},
              {"label", std::string(to_string(s.label))},
              {"inequality", std::string(to_string(s.inequality))},
              {"lhs", s.lhs},
              {"rhs", s.rhs},
              {"pair_distance", s.pair_distance}};
  out["c"] = s.c ? json(*s.c) : json(nullptr);
  out["d"] = s.d ? json(*s.d) : json(nullptr);
  if (s.c_equals_d) out["c_equals_d"] = true;
  if (s.fallback) out["fallback"] = true;
  return out;
}

inline json to_json(const PathCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  return {{"pair", json::array({c.a, c.b})}, {"K", c.K},       {"walk", c.walk},
          {"total_length", c.total_length},  {"bound", c.bound}, {"steps", std::move(steps)}};
}

inline json to_json(const Params& p) {
  json out = json::object();
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

inline json to_json(const SubCheck& c) {
  json out = {{"name", c.name}, {"max_value", c.max_value}, {"argmax", to_json(c.argmax)}, {"evaluations", c.evaluations}};
  if (c.informational) out["informational"] = true;
  return out;
}

inline json to_json(const LemmaReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"lemma_id", r.lemma_id},
          {"statement", r.statement},
          {"K_tested", r.K_tested},
          {"max_potential", r.max_potential},
          {"argmax_params", to_json(r.argmax_params)},
          {"grid_resolution", r.grid_resolution},
          {"samples", r.samples},
          {"seed", r.seed},
          {"frame", r.frame},
          {"pass", r.pass},
          {"checks", std::move(checks)}};
}

// ---------------------------------------------------------------------------
// SVG

// One <line> per edge and one <circle> per point; an optional highlighted
// path is drawn as a single <polyline>.
inline void write_svg(std::ostream& out, const ThetaGraph& g, const std::vector<Vertex>& highlight = {}) {
  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
  if (g.size() > 0) {
    lo_x = hi_x = g.point(0).x;
    lo_y = hi_y = g.point(0).y;
    for (const auto& p : g.points()) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double size = 800.0, margin = 20.0;
  const double scale = (size - 2 * margin) / span;
  auto sx = [&](double x) { return margin + (x - lo_x) * scale; };
  auto sy = [&](double y) { return size - margin - (y - lo_y) * scale; };

  out << std::setprecision(10);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
      << size << ' ' << size << "\">\n";
  out << "<g stroke=\"#555\" stroke-width=\"1\">\n";
  for (const auto& [u, v] : g.edges()) {
    const Point a = g.point(u), b = g.point(v);
    out << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x) << "\" y2=\"" << sy(b.y)
        << "\"/>\n";
  }
  out << "</g>\n";
  if (highlight.size() >= 2) {
    out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\" points=\"";
    for (std::size_t i = 0; i < highlight.size(); ++i) {
      const Point p = g.point(highlight[i]);
      out << (i ? " " : "") << sx(p.x) << ',' << sy(p.y);
    }
    out << "\"/>\n";
  }
  out << "<g fill=\"#1f77b4\">\n";
  for (const auto& p : g.points()) out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"3\"/>\n";
  out << "</g>\n</svg>\n";
}

}  // namespace theta_lab
