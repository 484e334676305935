#pragma once

// Derivative-free 2D simplex minimizer (Nelder-Mead with reflection 1,
// expansion 2, contraction 0.5, shrink 0.5). The per-vertex arc-length
// energy is nonsmooth on the straight-edge set, so no gradients.

#include <algorithm>
#include <array>

#include "lombardi/geometry.hpp"

namespace lombardi {

struct NelderMeadResult {
  Point point{};
  double value = 0.0;
  int evals = 0;
  bool converged = false;  // simplex diameter dropped below tol * scale
};

// Minimizes f over the plane starting from an axis-aligned simplex of the
// given scale. Fully deterministic; never returns a point worse than start.
template <typename F>
NelderMeadResult nelder_mead_2d(F&& f, Point start, double scale, double tol, int max_evals) {
  std::array<Point, 3> xs{start, Point{start.x + scale, start.y}, Point{start.x, start.y + scale}};
  std::array<double, 3> fs{f(xs[0]), f(xs[1]), f(xs[2])};
  int evals = 3;
  const double stop_diameter = tol * scale;

  auto order = [&] {
    if (fs[0] > fs[1]) { std::swap(fs[0], fs[1]); std::swap(xs[0], xs[1]); }
    if (fs[1] > fs[2]) { std::swap(fs[1], fs[2]); std::swap(xs[1], xs[2]); }
    if (fs[0] > fs[1]) { std::swap(fs[0], fs[1]); std::swap(xs[0], xs[1]); }
  };

  NelderMeadResult result;
  while (true) {
    order();
    const double diameter = std::max({distance(xs[0], xs[1]), distance(xs[0], xs[2]),
                                      distance(xs[1], xs[2])});
    if (diameter < stop_diameter) {
      result.converged = true;
      break;
    }
    if (evals >= max_evals) break;

    const Point centroid = (xs[0] + xs[1]) * 0.5;
    const Point reflected = centroid + (centroid - xs[2]);
    const double fr = f(reflected);
    ++evals;

    if (fr < fs[0]) {
      const Point expanded = centroid + (reflected - centroid) * 2.0;
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) { xs[2] = expanded; fs[2] = fe; }
      else         { xs[2] = reflected; fs[2] = fr; }
    } else if (fr < fs[1]) {
      xs[2] = reflected;
      fs[2] = fr;
    } else {
      const bool outside = fr < fs[2];
      const Point contracted = centroid + ((outside ? reflected : xs[2]) - centroid) * 0.5;
      const double fc = f(contracted);
      ++evals;
      if (fc < (outside ? fr : fs[2])) {
        xs[2] = contracted;
        fs[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          xs[i] = xs[0] + (xs[i] - xs[0]) * 0.5;
          fs[i] = f(xs[i]);
          ++evals;
        }
      }
    }
  }

  order();
  result.point = xs[0];
  result.value = fs[0];
  result.evals = evals;
  return result;
}

}  // namespace lombardi
