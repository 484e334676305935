#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lombardi/geometry.hpp"

namespace lombardi {

// Undirected simple graph over vertex ids 0..n-1.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists

  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  // Canonical edge list: (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int w : adj[u])
        if (u < w) edges.emplace_back(u, w);
    return edges;
  }

  // Builds and validates: rejects out-of-range ids, self-loops and duplicates.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
    Graph g;
    g.n = n;
    g.adj.assign(static_cast<size_t>(n), {});
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                    " has a vertex id outside [0, " + std::to_string(n) + ")");
      if (u == v)
        throw std::invalid_argument("self-loop " + std::to_string(u) + "-" + std::to_string(v));
      g.adj[u].push_back(v);
      g.adj[v].push_back(u);
    }
    for (int u = 0; u < n; ++u) {
      auto& nbrs = g.adj[u];
      std::sort(nbrs.begin(), nbrs.end());
      if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
        throw std::invalid_argument("duplicate edge at vertex " + std::to_string(u));
    }
    return g;
  }
};

inline bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  std::vector<char> seen(static_cast<size_t>(g.n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == g.n;
}

// Vertex positions, indexed by vertex id.
struct Layout {
  std::vector<Point> positions;

  Point& operator[](int v) { return positions[static_cast<size_t>(v)]; }
  Point operator[](int v) const { return positions[static_cast<size_t>(v)]; }
  int size() const { return static_cast<int>(positions.size()); }
};

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double diagonal() const { return std::hypot(width(), height()); }
  void include(Point p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
};

inline BoundingBox bounding_box(const Layout& layout) {
  BoundingBox box;
  if (layout.positions.empty()) return box;
  box.min_x = box.max_x = layout.positions[0].x;
  box.min_y = box.max_y = layout.positions[0].y;
  for (Point p : layout.positions) box.include(p);
  return box;
}

// Fixed placements for the outer vertices of a barycentric layout.
struct BoundarySpec {
  std::vector<std::pair<int, Point>> pinned;
};

}  // namespace lombardi
