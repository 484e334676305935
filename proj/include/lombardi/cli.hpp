#pragma once

// Command-line driver: read a graph, build an initial drawing, run the solver
// and write SVG/JSON outputs plus a convergence trace.
//
// Exit codes: 0 success (converged or not; convergence is data, not failure),
// 1 input or usage error, 2 a vertex had to be frozen after repeated
// degeneracies.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lombardi/engine.hpp"
#include "lombardi/io.hpp"
#include "lombardi/layout_init.hpp"

namespace lombardi {

namespace detail {

inline Layout regular_polygon_layout(int n) {
  Layout layout;
  for (int v = 0; v < n; ++v) {
    const double a = n > 0 ? kTwoPi * v / n : 0.0;
    layout.positions.push_back({std::cos(a), std::sin(a)});
  }
  return layout;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"lombardi: redraw a graph with circular-arc edges and perfect "
               "angular resolution at each processed vertex"};
  std::string input;
  std::string out_svg;
  std::string out_json;
  std::string init = "tutte";
  SolverConfig cfg;
  int fr_iters = 500;
  bool quiet = false;

  app.add_option("--input", input, "graph file: 'u v' edge list or JSON")->required();
  app.add_option("--out-svg", out_svg, "write the drawing as SVG");
  app.add_option("--out-json", out_json, "write drawing + report as JSON");
  app.add_option("--init", init, "initial layout method")
      ->check(CLI::IsMember({"tutte", "fr"}))
      ->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "stop when max displacement / diagonal < epsilon")
      ->capture_default_str();
  app.add_option("--max-passes", cfg.max_passes, "outer pass limit")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for boundary pick, FR init and perturbations")
      ->capture_default_str();
  app.add_option("--fr-iters", fr_iters, "Fruchterman-Reingold iterations")
      ->capture_default_str();
  app.add_flag("--quiet", quiet, "suppress the per-pass trace on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::ifstream in(input, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open '" << input << "'\n";
    return 1;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  ParsedGraph parsed;
  try {
    parsed = parse_graph(buffer.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << input << ": " << e.what() << "\n";
    return 1;
  }
  const Graph& g = parsed.graph;

  Layout start;
  TutteStats init_stats;
  bool used_tutte = false;
  try {
    if (init == "fr") {
      start = fruchterman_reingold(g, cfg.seed, fr_iters, 1.0);
    } else if (g.n < 3) {
      // Too small for a pinned barycentric boundary; place directly.
      start = detail::regular_polygon_layout(g.n);
    } else {
      const BoundarySpec boundary =
          parsed.boundary ? *parsed.boundary : pick_boundary(g, cfg.seed);
      start = tutte_layout(g, boundary, 1e-9, 100000, &init_stats);
      used_tutte = true;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  RunResult result;
  try {
    result = run(g, start, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const RunReport& rep = result.report;

  if (!quiet) {
    for (int i = 0; i < rep.passes; ++i)
      std::fprintf(stderr, "pass %3d  energy %.9g  max-disp %.9g\n", i + 1,
                   rep.total_energy[static_cast<size_t>(i)],
                   rep.max_displacement[static_cast<size_t>(i)]);
    std::fprintf(stderr, "%s after %d pass(es)\n",
                 rep.converged ? "converged" : "not converged", rep.passes);
  }

  try {
    const QualityReport quality =
        quality_report(g, result.layout, result.arcs, result.final_fans, cfg);

    if (!out_json.empty()) {
      nlohmann::json doc = drawing_to_json(result.layout, result.arcs);
      doc["report"] = report_to_json(rep, quality);
      if (used_tutte) {
        doc["report"]["init_converged"] = init_stats.converged;
        doc["report"]["init_sweeps"] = init_stats.sweeps;
      }
      doc["config"] = config_to_json(cfg);
      doc["config"]["init"] = init;
      doc["config"]["fr_iters"] = fr_iters;
      std::ofstream out(out_json, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << out_json << "'\n";
        return 1;
      }
      out << doc.dump(2) << "\n";
    }

    if (!out_svg.empty()) {
      std::ofstream out(out_svg, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << out_svg << "'\n";
        return 1;
      }
      out << svg_document(result.layout, result.arcs);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  return rep.frozen_vertices.empty() ? 0 : 2;
}

}  // namespace lombardi
