#pragma once

// Initial (non-Lombardi) drawings: Tutte barycentric relaxation with a pinned
// convex boundary, and Fruchterman-Reingold as an alternative for inputs
// where no useful boundary exists.

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "lombardi/geometry.hpp"
#include "lombardi/graph.hpp"

namespace lombardi {

namespace detail {

// True iff every point is a vertex of the convex hull (strict turns).
inline bool in_convex_position(std::vector<Point> pts) {
  const size_t k = pts.size();
  if (k < 3) return false;
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  auto turn = [](Point o, Point a, Point b) { return cross(a - o, b - o); };
  std::vector<Point> hull;
  for (int phase = 0; phase < 2; ++phase) {
    const size_t base = hull.size();
    for (Point p : pts) {
      while (hull.size() >= base + 2 &&
             turn(hull[hull.size() - 2], hull.back(), p) <= 0.0)
        hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return hull.size() == k;
}

}  // namespace detail

// Finds a cycle by depth-first search (start vertex chosen from the seed) and
// pins its vertices, in cycle order, on a regular polygon of circumradius 1.
// Acyclic graphs fall back to pinning the 3 highest-degree vertices.
inline BoundarySpec pick_boundary(const Graph& g, unsigned seed) {
  if (g.n < 3) throw std::invalid_argument("pick_boundary: need at least 3 vertices");

  std::vector<int> cycle;
  {
    const int start = static_cast<int>(seed % static_cast<unsigned>(g.n));
    std::vector<int> parent(static_cast<size_t>(g.n), -2);
    std::vector<char> on_path(static_cast<size_t>(g.n), 0);
    std::vector<int> path;
    // (vertex, next neighbor index) stack; neighbors visited in ascending id.
    std::vector<std::pair<int, size_t>> stack;
    for (int offset = 0; offset < g.n && cycle.empty(); ++offset) {
      const int root = (start + offset) % g.n;
      if (parent[root] != -2) continue;
      parent[root] = -1;
      on_path[root] = 1;
      path.push_back(root);
      stack.emplace_back(root, 0);
      while (!stack.empty() && cycle.empty()) {
        auto& [u, i] = stack.back();
        if (i >= g.adj[u].size()) {
          on_path[u] = 0;
          path.pop_back();
          stack.pop_back();
          continue;
        }
        const int w = g.adj[u][i++];
        if (w == parent[u]) continue;
        if (on_path[w]) {
          auto it = std::find(path.begin(), path.end(), w);
          cycle.assign(it, path.end());
          break;
        }
        if (parent[w] == -2) {
          parent[w] = u;
          on_path[w] = 1;
          path.push_back(w);
          stack.emplace_back(w, 0);
        }
      }
      path.clear();
      stack.clear();
    }
  }

  if (cycle.empty()) {
    // Acyclic: pin the 3 highest-degree vertices (ties by ascending id).
    std::vector<int> ids(static_cast<size_t>(g.n));
    for (int v = 0; v < g.n; ++v) ids[static_cast<size_t>(v)] = v;
    std::stable_sort(ids.begin(), ids.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    cycle.assign(ids.begin(), ids.begin() + 3);
  }

  BoundarySpec spec;
  const size_t k = cycle.size();
  for (size_t j = 0; j < k; ++j) {
    const double ang = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
    spec.pinned.emplace_back(cycle[j], Point{std::cos(ang), std::sin(ang)});
  }
  return spec;
}

struct TutteStats {
  int sweeps = 0;
  bool converged = false;
};

// Barycentric relaxation: pinned vertices stay fixed, every free vertex is
// repeatedly replaced by the mean of its neighbors (Gauss-Seidel sweeps in
// ascending id order) until the largest per-sweep displacement drops below
// tol. Returns the best iterate even when max_iters is exhausted. Free
// vertices start at warm_start positions when given, else at the origin;
// feeding a converged layout back in converges within the first sweep.
inline Layout tutte_layout(const Graph& g, const BoundarySpec& boundary, double tol = 1e-9,
                           int max_iters = 100000, TutteStats* stats = nullptr,
                           const Layout* warm_start = nullptr) {
  if (!(tol > 0.0)) throw std::invalid_argument("tutte_layout: tol must be positive");
  if (!is_connected(g)) throw std::invalid_argument("tutte_layout: graph must be connected");
  if (boundary.pinned.size() < 3)
    throw std::invalid_argument("tutte_layout: need at least 3 pinned vertices");

  std::vector<char> pinned(static_cast<size_t>(g.n), 0);
  Layout layout;
  if (warm_start && warm_start->size() == g.n)
    layout = *warm_start;
  else
    layout.positions.assign(static_cast<size_t>(g.n), Point{});
  std::vector<Point> pin_points;
  for (auto& [v, p] : boundary.pinned) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("tutte_layout: pinned id out of range");
    if (pinned[static_cast<size_t>(v)])
      throw std::invalid_argument("tutte_layout: duplicate pinned vertex");
    pinned[static_cast<size_t>(v)] = 1;
    layout[v] = p;
    pin_points.push_back(p);
  }
  if (!detail::in_convex_position(pin_points))
    throw std::invalid_argument("tutte_layout: pinned points not in convex position");

  TutteStats local;
  for (local.sweeps = 0; local.sweeps < max_iters; ++local.sweeps) {
    double max_disp = 0.0;
    for (int v = 0; v < g.n; ++v) {
      if (pinned[static_cast<size_t>(v)] || g.adj[v].empty()) continue;
      Point sum{};
      for (int w : g.adj[v]) sum = sum + layout[w];
      const Point next = sum * (1.0 / static_cast<double>(g.degree(v)));
      max_disp = std::max(max_disp, distance(layout[v], next));
      layout[v] = next;
    }
    if (max_disp < tol) {
      local.converged = true;
      ++local.sweeps;
      break;
    }
  }
  if (stats) *stats = local;
  return layout;
}

// Standard Fruchterman-Reingold: attraction d^2/k on edges, repulsion k^2/d
// on all pairs, k = sqrt(area/n), displacement capped by a linearly cooling
// temperature. Deterministic for a fixed seed.
inline Layout fruchterman_reingold(const Graph& g, unsigned seed, int iters, double area = 1.0) {
  if (g.n < 1) throw std::invalid_argument("fruchterman_reingold: need at least 1 vertex");
  if (iters < 0) throw std::invalid_argument("fruchterman_reingold: iters must be >= 0");

  const double side = std::sqrt(area);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-side / 2.0, side / 2.0);
  Layout layout;
  layout.positions.reserve(static_cast<size_t>(g.n));
  for (int v = 0; v < g.n; ++v) {
    const double x = coord(rng);
    const double y = coord(rng);
    layout.positions.push_back({x, y});
  }
  if (g.n == 1 || iters == 0) return layout;

  const double k = std::sqrt(area / static_cast<double>(g.n));
  const double t0 = side / 10.0;
  const auto edges = g.edge_list();
  std::vector<Point> disp(static_cast<size_t>(g.n));

  for (int iter = 0; iter < iters; ++iter) {
    std::fill(disp.begin(), disp.end(), Point{});
    for (int v = 0; v < g.n; ++v) {
      for (int w = v + 1; w < g.n; ++w) {
        Point delta = layout[v] - layout[w];
        double d = norm(delta);
        if (d < kMinChord) {  // coincident pair: push apart along a fixed axis
          delta = {kMinChord, 0.0};
          d = kMinChord;
        }
        const Point push = delta * (k * k / (d * d));
        disp[static_cast<size_t>(v)] = disp[static_cast<size_t>(v)] + push;
        disp[static_cast<size_t>(w)] = disp[static_cast<size_t>(w)] - push;
      }
    }
    for (auto [u, w] : edges) {
      Point delta = layout[u] - layout[w];
      double d = norm(delta);
      if (d < kMinChord) continue;
      const Point pull = delta * (d / k);
      disp[static_cast<size_t>(u)] = disp[static_cast<size_t>(u)] - pull;
      disp[static_cast<size_t>(w)] = disp[static_cast<size_t>(w)] + pull;
    }
    const double t = t0 * (1.0 - static_cast<double>(iter) / static_cast<double>(iters));
    for (int v = 0; v < g.n; ++v) {
      const Point d = disp[static_cast<size_t>(v)];
      const double len = norm(d);
      if (len <= 0.0) continue;
      layout[v] = layout[v] + d * (std::min(len, t) / len);
    }
  }
  return layout;
}

}  // namespace lombardi
