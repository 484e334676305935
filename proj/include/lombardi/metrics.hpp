#pragma once

// Drawing-quality measurements: angular resolution, total arc energy, the
// finite-difference force residual, and the tangent deviation at each edge's
// non-owner endpoint. The procedure only guarantees perfect resolution at the
// endpoint that last rebuilt an edge; these metrics report what the other
// endpoint actually got rather than hiding it.

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "lombardi/geometry.hpp"
#include "lombardi/graph.hpp"
#include "lombardi/tangent_fan.hpp"

namespace lombardi {

// Direction in which edge e departs from vertex w.
inline double arc_tangent_at(const ArcEdge& e, int w, const Layout& layout) {
  const int other = e.u == w ? e.v : e.u;
  if (e.u != w && e.v != w) throw std::invalid_argument("arc_tangent_at: vertex not on edge");
  return edge_tangent_at(e, w == e.owner, layout[w], layout[other]);
}

// Max |gap - 2pi/d| over consecutive tangent gaps at v. Uses the prescribed
// tangent for arcs owned by v and the actual geometric tangent for the rest.
inline double angular_resolution_deviation(int v, std::span<const ArcEdge> arcs,
                                           const Layout& layout) {
  std::vector<double> dirs;
  for (const ArcEdge& e : arcs) {
    if (e.u != v && e.v != v) continue;
    dirs.push_back(e.owner == v ? e.owner_tangent : arc_tangent_at(e, v, layout));
  }
  if (dirs.empty()) throw std::invalid_argument("angular_resolution_deviation: no incident arcs");
  const double ideal = kTwoPi / static_cast<double>(dirs.size());
  if (dirs.size() == 1) return 0.0;
  std::sort(dirs.begin(), dirs.end());
  double worst = 0.0;
  for (size_t i = 0; i < dirs.size(); ++i) {
    const double gap = i + 1 < dirs.size() ? dirs[i + 1] - dirs[i]
                                           : kTwoPi - dirs.back() + dirs.front();
    worst = std::max(worst, std::fabs(gap - ideal));
  }
  return worst;
}

// Sum of arc lengths, each edge counted once.
inline double total_arc_energy(std::span<const ArcEdge> arcs) {
  double total = 0.0;
  for (const ArcEdge& e : arcs) total += e.arc_length;
  return total;
}

// Norm of the central finite-difference gradient of the local energy at v's
// current position; zero exactly where the circular-spring forces balance.
inline double force_residual(int v, const Layout& layout, const TangentFan& fan,
                             const SolverConfig& cfg) {
  const Point p = layout[v];
  double mean_chord = 0.0;
  for (int w : fan.neighbors) mean_chord += distance(p, layout[w]);
  mean_chord /= static_cast<double>(fan.neighbors.size());
  const double h = 1e-6 * mean_chord;
  if (h <= 0.0) throw DegeneracyError("force_residual: zero mean chord");

  auto f = [&](Point q) { return local_objective(q, fan, layout, cfg); };
  const double gx = (f({p.x + h, p.y}) - f({p.x - h, p.y})) / (2.0 * h);
  const double gy = (f({p.x, p.y + h}) - f({p.x, p.y - h})) / (2.0 * h);
  return std::hypot(gx, gy);
}

struct QualityReport {
  std::vector<double> angular_deviation;   // per vertex; 0 for degree < 1
  double total_energy = 0.0;
  std::vector<double> nonowner_residual;   // per arc, aligned with the arc list
  double max_force_residual = 0.0;         // over smooth, processed vertices
};

namespace detail {

// Smoothness guard: the energy has kinks where an edge is straight, where a
// neighbor coincides with the vertex, and a barrier where an arc nearly
// closes. The gradient is only meaningful clear of all three, so angles must
// stay away from 0 and pi and chords above a drawing-scale floor.
inline bool smooth_frames(Point p, const TangentFan& fan, const Layout& layout,
                          double min_chord, double chord_floor) {
  try {
    for (const ChordFrame& frame : chord_frames(p, fan, layout, min_chord))
      if (frame.theta < 0.01 || frame.theta > kPi - 0.01 || frame.chord < chord_floor)
        return false;
  } catch (const DegeneracyError&) {
    return false;
  }
  return true;
}

}  // namespace detail

// final_fans holds, per vertex, the fan from its last processing (invalid fan
// for vertices that were never processed).
inline QualityReport quality_report(const Graph& g, const Layout& layout,
                                    std::span<const ArcEdge> arcs,
                                    std::span<const TangentFan> final_fans,
                                    const SolverConfig& cfg) {
  QualityReport q;
  q.total_energy = total_arc_energy(arcs);

  q.angular_deviation.assign(static_cast<size_t>(g.n), 0.0);
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) >= 1)
      q.angular_deviation[static_cast<size_t>(v)] = angular_resolution_deviation(v, arcs, layout);

  for (const ArcEdge& e : arcs) {
    const int w = e.u == e.owner ? e.v : e.u;
    double residual = 0.0;
    if (w < static_cast<int>(final_fans.size()) && final_fans[static_cast<size_t>(w)].valid()) {
      const TangentFan& fan = final_fans[static_cast<size_t>(w)];
      const auto it = std::find(fan.neighbors.begin(), fan.neighbors.end(), e.owner);
      if (it != fan.neighbors.end()) {
        const double prescribed =
            fan.angles[static_cast<size_t>(it - fan.neighbors.begin())];
        residual = std::fabs(angle_diff(arc_tangent_at(e, w, layout), prescribed));
      }
    }
    q.nonowner_residual.push_back(residual);
  }

  // Chords below ~10x the convergence displacement cannot stay fresh: a
  // neighbor's last admissible move dwarfs them and drags the local frame.
  const double chord_floor = 10.0 * cfg.epsilon * bounding_box(layout).diagonal();
  for (int v = 0; v < g.n; ++v) {
    const auto& fan = final_fans[static_cast<size_t>(v)];
    if (!fan.valid()) continue;
    if (!detail::smooth_frames(layout[v], fan, layout, cfg.min_chord, chord_floor)) continue;
    try {
      q.max_force_residual = std::max(q.max_force_residual, force_residual(v, layout, fan, cfg));
    } catch (const DegeneracyError&) {
      // a probe step collapsed a chord; the gradient is not defined there
    }
  }
  return q;
}

}  // namespace lombardi
