#pragma once

// The outer procedure: visit vertices in descending degree order, prescribe a
// tangent fan at each, move the vertex to the minimum of the fan's arc-length
// energy, redraw its incident edges from the prescribed tangents, and sweep
// until vertex displacements fall below a fraction of the drawing diagonal.

#include <limits>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lombardi/geometry.hpp"
#include "lombardi/graph.hpp"
#include "lombardi/metrics.hpp"
#include "lombardi/nelder_mead.hpp"
#include "lombardi/tangent_fan.hpp"

namespace lombardi {

// Moves v to a position of no greater local energy, holding the fan's tangent
// directions fixed. Candidates that collapse a chord evaluate as +inf so the
// simplex backs away from them instead of crashing.
inline Point minimize_vertex(int v, const TangentFan& fan, const Layout& layout,
                             const SolverConfig& cfg) {
  const Point entry = layout[v];
  double mean_chord = 0.0;
  int live = 0;
  for (int w : fan.neighbors) {
    const double d = distance(entry, layout[w]);
    if (d > cfg.min_chord) {
      mean_chord += d;
      ++live;
    }
  }
  if (live == 0) throw DegeneracyError("minimize_vertex: every neighbor within min_chord");
  mean_chord /= static_cast<double>(live);

  auto objective = [&](Point p) {
    try {
      return local_objective(p, fan, layout, cfg);
    } catch (const DegeneracyError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const double scale = 0.1 * mean_chord;
  const double entry_value = objective(entry);
  const auto found = nelder_mead_2d(objective, entry, scale, cfg.inner_tol, cfg.inner_max_evals);
  // Accept only strict improvement. The energy is flat along a whole segment
  // at degree-2 vertices; chasing sub-rounding "gains" there would walk the
  // vertex along the valley and the outer loop would never reach a fixpoint.
  if (found.value >= entry_value - 1e-12 * std::max(1.0, std::fabs(entry_value))) return entry;
  return found.point;
}

// Redraws every edge incident to v from the fan's prescribed tangents at v's
// current position. An edge whose neighbor has ended up nearly behind its
// tangent cannot be drawn as an arc; it falls back to a straight segment and
// is counted in *fallback_count.
inline std::vector<ArcEdge> rebuild_arcs(int v, const TangentFan& fan, const Layout& layout,
                                         int* fallback_count = nullptr) {
  std::vector<ArcEdge> arcs;
  arcs.reserve(fan.neighbors.size());
  const Point p0 = layout[v];
  for (size_t k = 0; k < fan.neighbors.size(); ++k) {
    const int w = fan.neighbors[k];
    const Point p1 = layout[w];
    if (tangent_chord_angle(p0, p1, fan.angles[k]) >= kThetaMax) {
      arcs.push_back(straight_edge(v, w, p0, p1));
      if (fallback_count) ++*fallback_count;
    } else {
      arcs.push_back(arc_through_tangent(p0, p1, fan.angles[k], v, w));
    }
  }
  return arcs;
}

struct RunReport {
  int passes = 0;
  std::vector<double> max_displacement;  // per pass
  std::vector<double> total_energy;      // per pass, over current edge geometry
  bool converged = false;
  std::vector<double> angular_deviation;       // per vertex, on the final arcs
  std::vector<double> post_rebuild_deviation;  // per vertex, right after its last rebuild
  std::vector<int> frozen_vertices;  // gave up after repeated degeneracies
  int perturbations = 0;
  int fallback_edges = 0;
};

struct RunResult {
  Layout layout;
  std::vector<ArcEdge> arcs;
  RunReport report;
  std::vector<TangentFan> final_fans;  // per vertex; invalid if never processed
};

inline RunResult run(const Graph& g, const Layout& init, const SolverConfig& cfg) {
  if (init.size() != g.n) throw std::invalid_argument("run: layout size mismatch");
  for (Point p : init.positions)
    if (!finite(p)) throw std::invalid_argument("run: non-finite initial position");
  if (!(cfg.epsilon > 0.0) || cfg.max_passes < 1 || !(cfg.inner_tol > 0.0) ||
      cfg.inner_max_evals < 3 || !(cfg.min_chord > 0.0))
    throw std::invalid_argument("run: solver configuration values must be positive");

  RunResult result;
  result.layout = init;
  Layout& layout = result.layout;

  // Edge geometry store, canonical order; starts as the straight drawing.
  const auto edges = g.edge_list();
  std::map<std::pair<int, int>, size_t> edge_index;
  for (size_t i = 0; i < edges.size(); ++i) {
    auto [u, w] = edges[i];
    result.arcs.push_back(straight_edge(u, w, layout[u], layout[w]));
    edge_index[edges[i]] = i;
  }

  RunReport& rep = result.report;
  rep.post_rebuild_deviation.assign(static_cast<size_t>(g.n), 0.0);
  result.final_fans.assign(static_cast<size_t>(g.n), TangentFan{});

  const auto order = degree_ordering(g);
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> angle_dist(0.0, kTwoPi);
  std::vector<int> strikes(static_cast<size_t>(g.n), 0);
  std::vector<char> frozen(static_cast<size_t>(g.n), 0);

  for (int pass = 1; pass <= cfg.max_passes; ++pass) {
    double max_disp = 0.0;
    for (int v : order) {
      // Degree-0 vertices have no springs; a degree-1 vertex's minimizer
      // collapses onto its neighbor, so those never move either.
      if (g.degree(v) < 2 || frozen[static_cast<size_t>(v)]) continue;
      const Point before = layout[v];
      while (true) {
        try {
          TangentFan fan = build_tangent_fan(layout, v, g, cfg.min_chord);
          layout[v] = minimize_vertex(v, fan, layout, cfg);
          auto rebuilt = rebuild_arcs(v, fan, layout, &rep.fallback_edges);
          for (const ArcEdge& e : rebuilt) result.arcs[edge_index.at({e.u, e.v})] = e;
          rep.post_rebuild_deviation[static_cast<size_t>(v)] =
              angular_resolution_deviation(v, rebuilt, layout);
          result.final_fans[static_cast<size_t>(v)] = std::move(fan);
          break;
        } catch (const DegeneracyError&) {
          if (++strikes[static_cast<size_t>(v)] >= 3) {
            frozen[static_cast<size_t>(v)] = 1;
            rep.frozen_vertices.push_back(v);
            layout[v] = before;  // keep its previously built arcs consistent
            break;
          }
          const double diag = bounding_box(layout).diagonal();
          const double mag = 1e-6 * (diag > 0.0 ? diag : 1.0);
          const double ang = angle_dist(rng);
          layout[v] = layout[v] + Point{mag * std::cos(ang), mag * std::sin(ang)};
          ++rep.perturbations;
        }
      }
      max_disp = std::max(max_disp, distance(before, layout[v]));
    }

    rep.passes = pass;
    rep.max_displacement.push_back(max_disp);
    rep.total_energy.push_back(total_arc_energy(result.arcs));
    const double diag = bounding_box(layout).diagonal();
    if (max_disp == 0.0 || max_disp < cfg.epsilon * diag) {
      rep.converged = true;
      break;
    }
  }

  rep.angular_deviation.assign(static_cast<size_t>(g.n), 0.0);
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) >= 1)
      rep.angular_deviation[static_cast<size_t>(v)] =
          angular_resolution_deviation(v, result.arcs, layout);

  return result;
}

}  // namespace lombardi
