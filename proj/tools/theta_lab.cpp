#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "theta_lab/theta_lab.hpp"

namespace {

using namespace theta_lab;

enum Exit : int { ok = 0, internal = 1, rejected = 2, guard_rail = 3, verification_failed = 4 };

struct Input {
  std::vector<Point> points;
  std::string digest;
};

Input load(const std::string& path) {
  const std::string text = read_file(path);
  return {parse_points(text), "fnv1a64:" + fnv1a64(text)};
}

json run_report(const std::string& command, const std::string& digest, int k, std::optional<std::uint64_t> seed,
                json results) {
  json r = {{"command", command}, {"input_digest", digest.empty() ? json(nullptr) : json(digest)},
            {"k", k},             {"version", std::string(version)},
            {"results", std::move(results)}};
  r["seed"] = seed ? json(*seed) : json(nullptr);
  return r;
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << doc.dump(2) << '\n';
}

void emit_svg(const std::string& path, const ThetaGraph& g, const std::vector<Vertex>& highlight) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_svg(out, g, highlight);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta-graph construction, spanning ratios, inductive path certificates and lemma checks"};
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: THETA_LAB_THREADS or all cores)");

  std::string input, out_path, svg_path;
  int k = 5;
  double K = stated::spanning_ratio;
  int grid = 500;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::vector<std::size_t> pair;
  std::string lemma;
  std::size_t n = 5, iterations = 10000;

  auto* build = app.add_subcommand("build", "build the Theta_k graph of a point set");
  build->add_option("input", input, "point-set file (text or JSON)")->required();
  build->add_option("--k", k, "number of cones");
  build->add_option("--out", out_path, "write JSON here instead of stdout");
  build->add_option("--svg", svg_path, "also write an SVG drawing");

  auto* ratio = app.add_subcommand("ratio", "spanning ratio of the Theta_k graph");
  ratio->add_option("input", input, "point-set file (text or JSON)")->required();
  ratio->add_option("--k", k, "number of cones");
  ratio->add_option("--out", out_path, "write JSON here instead of stdout");
  ratio->add_option("--svg", svg_path, "SVG with the witness pair's shortest path highlighted");

  auto* certify = app.add_subcommand("certify", "inductive path certificates in Theta_5");
  certify->add_option("input", input, "point-set file (text or JSON)")->required();
  certify->add_option("--K", K, "bound to certify (at least 5.70)");
  certify->add_option("--pair", pair, "certify a single pair A B")->expected(2);
  certify->add_option("--out", out_path, "write JSON here instead of stdout");
  certify->add_option("--svg", svg_path, "SVG with the certified walk (with --pair)");

  auto* verify = app.add_subcommand("verify-lemmas", "numeric verification of the lemmas and constants");
  verify->add_option("--grid", grid, "grid resolution per dimension")->check(CLI::Range(2, 100000));
  verify->add_option("--samples", samples, "accepted samples for the crossing-configuration sampler");
  verify->add_option("--seed", seed, "sampler seed");
  verify->add_option("--lemma", lemma, "run one lemma (t253, t334, posofc, claim6, case1..case8, lemma8..lemma15, "
                                       "mainlemma1, mainlemma2, constants)");
  auto* verify_k = verify->add_option("--K", K, "override the tested constant");
  verify->add_option("--out", out_path, "write JSON here instead of stdout");

  auto* search = app.add_subcommand("search", "local search for point sets with a large spanning ratio");
  search->add_option("--n", n, "number of points")->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
  search->add_option("--iterations", iterations, "perturbation steps");
  search->add_option("--seed", seed, "random seed");
  search->add_option("--k", k, "number of cones");
  search->add_option("--out", out_path, "write JSON here instead of stdout");
  search->add_option("--svg", svg_path, "SVG of the best instance with its witness path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rejected;
  }

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

  try {
    if (threads > 0) set_thread_count(threads);

    if (build->parsed()) {
      const Input in = load(input);
      const ThetaGraph g = build_theta_graph(in.points, k);
      emit(to_json(g), out_path);
      emit_svg(svg_path, g, {});
      return ok;
    }

    if (ratio->parsed()) {
      const Input in = load(input);
      const ThetaGraph g = build_theta_graph(in.points, k);
      const StretchReport r = spanning_ratio(g);
      emit(run_report(command, in.digest, k, std::nullopt, to_json(r)), out_path);
      emit_svg(svg_path, g, r.path);
      return ok;
    }

    if (certify->parsed()) {
      if (!(K >= stated::spanning_ratio)) {
        std::cerr << "refusing to certify with K = " << K << " below the proven bound " << stated::spanning_ratio
                  << '\n';
        return guard_rail;
      }
      const Input in = load(input);
      const ThetaGraph g = build_theta_graph(in.points, theta5);
      std::vector<std::pair<Vertex, Vertex>> pairs;
      if (!pair.empty()) {
        if (pair[0] >= g.size() || pair[1] >= g.size() || pair[0] == pair[1]) {
          std::cerr << "--pair needs two distinct vertex indices below " << g.size() << '\n';
          return rejected;
        }
        pairs.emplace_back(pair[0], pair[1]);
      } else {
        for (Vertex a = 0; a < g.size(); ++a)
          for (Vertex b = a + 1; b < g.size(); ++b) pairs.emplace_back(a, b);
      }
      json certs = json::array();
      bool all_valid = true;
      std::vector<Vertex> last_walk;
      for (const auto& [a, b] : pairs) {
        try {
          const PathCertificate c = inductive_path(g, a, b, K);
          const auto problems = validate_certificate(g, c);
          json j = to_json(c);
          j["valid"] = problems.empty();
          if (!problems.empty()) {
            all_valid = false;
            j["problems"] = problems;
          }
          certs.push_back(std::move(j));
          last_walk = c.walk;
        } catch (const counterexample_error& e) {
          all_valid = false;
          certs.push_back({{"pair", json::array({a, b})}, {"valid", false}, {"error", e.what()}});
        }
      }
      json results = {{"K", K}, {"pairs", pairs.size()}, {"all_valid", all_valid}, {"certificates", std::move(certs)}};
      results["graph"] = to_json(g);
      emit(run_report(command, in.digest, theta5, std::nullopt, std::move(results)), out_path);
      emit_svg(svg_path, g, pairs.size() == 1 ? last_walk : std::vector<Vertex>{});
      if (!all_valid) {
        std::cerr << "certificate validation failed\n";
        return verification_failed;
      }
      return ok;
    }

    if (verify->parsed()) {
      LemmaOptions o;
      o.grid = grid;
      o.samples = samples;
      o.seed = seed;
      if (*verify_k) o.K = K;
      std::vector<LemmaReport> reports;
      if (!lemma.empty()) {
        if (!canonical_lemma_id(lemma)) {
          std::cerr << "unknown lemma id '" << lemma << "'\n";
          return rejected;
        }
        reports.push_back(verify_lemma(lemma, o));
      } else {
        reports = verify_all_lemmas(o);
      }
      bool all_pass = true;
      json list = json::array();
      for (const auto& r : reports) {
        all_pass = all_pass && r.pass;
        list.push_back(to_json(r));
      }
      json results = {{"all_pass", all_pass}, {"grid", grid}, {"samples", samples}, {"lemmas", std::move(list)}};
      emit(run_report(command, "", theta5, seed, std::move(results)), out_path);
      return all_pass ? ok : verification_failed;
    }

    if (search->parsed()) {
      const SearchResult s = stretch_search(n, iterations, seed, k);
      json results = {{"n", n},
                      {"iterations", s.iterations},
                      {"accepted", s.accepted},
                      {"stretch", to_json(s.report)},
                      {"points", points_to_json(s.points)}};
      emit(run_report(command, "", k, seed, std::move(results)), out_path);
      if (!svg_path.empty()) emit_svg(svg_path, build_theta_graph(s.points, k), s.report.path);
      return ok;
    }
  } catch (const general_position_error& e) {
    std::cerr << "input rejected: " << e.what() << " (indices:";
    for (auto i : e.indices) std::cerr << ' ' << i;
    std::cerr << ")\n";
    return rejected;
  } catch (const parse_error& e) {
    std::cerr << "input rejected: " << e.what() << '\n';
    return rejected;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input rejected: " << e.what() << '\n';
    return rejected;
  } catch (const counterexample_error& e) {
    std::cerr << "counterexample candidate: " << e.what() << '\n';
    return verification_failed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  }
  return internal;
}
