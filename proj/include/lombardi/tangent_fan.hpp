#pragma once

// Per-vertex tangent fans and the local arc-length energy.
//
// Processing a vertex of degree d prescribes d tangent directions spaced
// exactly 2pi/d: the first points along the chord to the farthest neighbor
// (that edge starts straight), the rest follow the neighbors in clockwise
// order. The vertex is then moved to minimize the sum of the arc lengths
// those tangents force, with the directions held fixed in the plane.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lombardi/geometry.hpp"
#include "lombardi/graph.hpp"

namespace lombardi {

struct TangentFan {
  int center = -1;
  std::vector<int> neighbors;  // clockwise; [0] is the farthest neighbor
  double base_angle = 0.0;     // direction center -> farthest neighbor
  std::vector<double> angles;  // angles[k] = base_angle - k*2pi/d, in [0, 2pi)

  bool valid() const { return center >= 0; }
  int degree() const { return static_cast<int>(neighbors.size()); }
};

// One neighbor's contribution seen from a candidate center position.
struct ChordFrame {
  int neighbor = -1;
  double chord = 0.0;  // Euclidean distance candidate -> neighbor
  double phi = 0.0;    // prescribed tangent direction
  double perp = 0.0;   // perpendicular distance neighbor -> tangent line
  double theta = 0.0;  // tangent-chord angle, [0, pi]
};

struct SolverConfig {
  double epsilon = 1e-4;      // outer stop: max displacement / bbox diagonal
  int max_passes = 200;
  double inner_tol = 1e-8;    // simplex diameter / initial scale
  int inner_max_evals = 500;
  double min_chord = kMinChord;
  unsigned seed = 0;
};

// Vertices sorted by descending degree, ties by ascending id.
inline std::vector<int> degree_ordering(const Graph& g) {
  std::vector<int> order(static_cast<size_t>(g.n));
  for (int v = 0; v < g.n; ++v) order[static_cast<size_t>(v)] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  return order;
}

// Neighbor of v at maximal straight-line distance, ties by ascending id.
inline int farthest_neighbor(const Layout& layout, int v, const Graph& g) {
  if (g.adj[v].empty()) throw std::invalid_argument("farthest_neighbor: isolated vertex");
  int best = -1;
  double best_dist = -1.0;
  for (int w : g.adj[v]) {
    const double d = distance(layout[v], layout[w]);
    if (d > best_dist) {
      best_dist = d;
      best = w;
    }
  }
  return best;
}

// Neighbors of v sorted clockwise by the bearing of the straight segment
// v -> neighbor, starting at `start`. Equal bearings break by ascending id.
inline std::vector<int> clockwise_neighbor_order(const Layout& layout, int v, int start,
                                                 const Graph& g, double min_chord = kMinChord) {
  const auto& nbrs = g.adj[v];
  if (nbrs.size() < 2)
    throw std::invalid_argument("clockwise_neighbor_order: degree must be >= 2");
  if (std::find(nbrs.begin(), nbrs.end(), start) == nbrs.end())
    throw std::invalid_argument("clockwise_neighbor_order: start is not a neighbor");

  for (int w : nbrs)
    if (distance(layout[v], layout[w]) <= min_chord)
      throw DegeneracyError("clockwise_neighbor_order: neighbor coincides with center");

  const double start_bearing = bearing(layout[v], layout[start]);
  struct Keyed {
    double key;
    int id;
  };
  std::vector<Keyed> rest;
  for (int w : nbrs) {
    if (w == start) continue;
    // Clockwise gap from the start bearing, in [0, 2pi).
    rest.push_back({normalize_angle(start_bearing - bearing(layout[v], layout[w])), w});
  }
  std::sort(rest.begin(), rest.end(), [](const Keyed& a, const Keyed& b) {
    return a.key < b.key || (a.key == b.key && a.id < b.id);
  });

  std::vector<int> order{start};
  for (const Keyed& k : rest) order.push_back(k.id);
  return order;
}

// Assembles the fan at v: farthest neighbor first (its tangent along the
// chord), then clockwise, with tangents stepping by exactly 2pi/d.
inline TangentFan build_tangent_fan(const Layout& layout, int v, const Graph& g,
                                    double min_chord = kMinChord) {
  if (g.degree(v) < 2) throw std::invalid_argument("build_tangent_fan: degree must be >= 2");
  TangentFan fan;
  fan.center = v;
  const int far = farthest_neighbor(layout, v, g);
  fan.neighbors = clockwise_neighbor_order(layout, v, far, g, min_chord);
  fan.base_angle = normalize_angle(bearing(layout[v], layout[far]));
  const double d = static_cast<double>(fan.neighbors.size());
  for (size_t k = 0; k < fan.neighbors.size(); ++k)
    fan.angles.push_back(normalize_angle(fan.base_angle - kTwoPi * static_cast<double>(k) / d));
  return fan;
}

// Chord frames for a candidate center position against the fixed fan.
inline std::vector<ChordFrame> chord_frames(Point candidate, const TangentFan& fan,
                                            const Layout& layout, double min_chord = kMinChord) {
  std::vector<ChordFrame> frames;
  frames.reserve(fan.neighbors.size());
  for (size_t k = 0; k < fan.neighbors.size(); ++k) {
    const Point p1 = layout[fan.neighbors[k]];
    ChordFrame frame;
    frame.neighbor = fan.neighbors[k];
    frame.chord = distance(candidate, p1);
    if (frame.chord <= min_chord)
      throw DegeneracyError("chord_frames: neighbor within min_chord of candidate");
    frame.phi = fan.angles[k];
    frame.perp = tangent_perp_distance(p1 - candidate, frame.phi);
    frame.theta = tangent_chord_angle(candidate, p1, frame.phi);
    frames.push_back(frame);
  }
  return frames;
}

// Sum of arc lengths the fan forces at this candidate position. Terms past
// the near-degenerate angle get a steep finite penalty instead of the
// diverging arc, so the minimizer stays defined everywhere.
inline double local_objective(Point candidate, const TangentFan& fan, const Layout& layout,
                              const SolverConfig& cfg) {
  double energy = 0.0;
  for (const ChordFrame& frame : chord_frames(candidate, fan, layout, cfg.min_chord)) {
    if (frame.theta > kThetaMax)
      energy += arc_from_chord(frame.chord, kThetaMax) +
                frame.chord * (frame.theta - kThetaMax) * kBarrierSlope;
    else
      energy += arc_from_chord(frame.chord, frame.theta);
  }
  return energy;
}

}  // namespace lombardi
