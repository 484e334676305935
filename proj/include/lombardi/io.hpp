#pragma once

// Input graph formats (plain edge list or JSON with optional boundary pins),
// the JSON drawing document, and the SVG renderer.

#include <cstdio>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lombardi/engine.hpp"
#include "lombardi/geometry.hpp"
#include "lombardi/graph.hpp"
#include "lombardi/metrics.hpp"

namespace lombardi {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedGraph {
  Graph graph;
  std::optional<BoundarySpec> boundary;
};

namespace detail {

inline ParsedGraph parse_edge_list(std::string_view text) {
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<long, long>> seen;
  long max_id = -1;
  int line_no = 0;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream iss(line);
    long u, v;
    if (!(iss >> u >> v))
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
    std::string extra;
    if (iss >> extra)
      throw ParseError("line " + std::to_string(line_no) + ": trailing content '" + extra + "'");
    if (u < 0 || v < 0)
      throw ParseError("line " + std::to_string(line_no) + ": vertex ids must be non-negative");
    if (u == v)
      throw ParseError("line " + std::to_string(line_no) + ": self-loop " + std::to_string(u) +
                       "-" + std::to_string(v));
    const std::pair<long, long> key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second)
      throw ParseError("line " + std::to_string(line_no) + ": duplicate edge " +
                       std::to_string(key.first) + "-" + std::to_string(key.second));
    max_id = std::max({max_id, u, v});
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  ParsedGraph out;
  out.graph = Graph::from_edges(static_cast<int>(max_id + 1), edges);
  return out;
}

inline ParsedGraph parse_json_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
    throw ParseError("JSON graph must be an object with \"n\" and \"edges\"");
  const long n = doc["n"].is_number_integer() ? doc["n"].get<long>() : -1;
  if (n < 0) throw ParseError("\"n\" must be a non-negative integer");

  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<long, long>> seen;
  for (const auto& item : doc["edges"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer())
      throw ParseError("each edge must be a pair of integers");
    const long u = item[0].get<long>();
    const long v = item[1].get<long>();
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                       " has a vertex id outside [0, " + std::to_string(n) + ")");
    if (u == v) throw ParseError("self-loop " + std::to_string(u) + "-" + std::to_string(v));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw ParseError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }

  ParsedGraph out;
  out.graph = Graph::from_edges(static_cast<int>(n), edges);
  if (doc.contains("boundary") && !doc["boundary"].is_null()) {
    BoundarySpec spec;
    std::set<long> pinned_ids;
    for (const auto& pin : doc["boundary"]) {
      if (!pin.is_array() || pin.size() != 3 || !pin[0].is_number_integer() ||
          !pin[1].is_number() || !pin[2].is_number())
        throw ParseError("each boundary entry must be [vertex, x, y]");
      const long v = pin[0].get<long>();
      if (v < 0 || v >= n) throw ParseError("boundary vertex " + std::to_string(v) +
                                            " outside [0, " + std::to_string(n) + ")");
      if (!pinned_ids.insert(v).second)
        throw ParseError("boundary vertex " + std::to_string(v) + " pinned twice");
      spec.pinned.emplace_back(static_cast<int>(v),
                               Point{pin[1].get<double>(), pin[2].get<double>()});
    }
    out.boundary = std::move(spec);
  }
  return out;
}

}  // namespace detail

// Detects the format from the first non-space byte: '{' means JSON, anything
// else the plain "u v" edge list.
inline ParsedGraph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{')
    return detail::parse_json_graph(text);
  return detail::parse_edge_list(text);
}

// ---------------------------------------------------------------------------
// JSON drawing document

inline nlohmann::json arc_to_json(const ArcEdge& e) {
  nlohmann::json j{{"u", e.u},
                   {"v", e.v},
                   {"kind", e.kind == ArcKind::Circular ? "circular" : "straight"},
                   {"arc_length", e.arc_length},
                   {"owner", e.owner},
                   {"owner_tangent", e.owner_tangent},
                   {"tangent_chord_angle", e.tangent_chord_angle}};
  if (e.kind == ArcKind::Circular) {
    j["center"] = {e.center.x, e.center.y};
    j["radius"] = e.radius;
    j["start_angle"] = e.start_angle;
    j["end_angle"] = e.end_angle;
    j["ccw"] = e.ccw;
  }
  return j;
}

inline ArcEdge arc_from_json(const nlohmann::json& j) {
  ArcEdge e;
  e.u = j.at("u").get<int>();
  e.v = j.at("v").get<int>();
  e.kind = j.at("kind").get<std::string>() == "circular" ? ArcKind::Circular : ArcKind::Straight;
  e.arc_length = j.at("arc_length").get<double>();
  e.owner = j.at("owner").get<int>();
  e.owner_tangent = j.at("owner_tangent").get<double>();
  e.tangent_chord_angle = j.at("tangent_chord_angle").get<double>();
  if (e.kind == ArcKind::Circular) {
    e.center = {j.at("center")[0].get<double>(), j.at("center")[1].get<double>()};
    e.radius = j.at("radius").get<double>();
    e.start_angle = j.at("start_angle").get<double>();
    e.end_angle = j.at("end_angle").get<double>();
    e.ccw = j.at("ccw").get<bool>();
  }
  return e;
}

inline nlohmann::json layout_to_json(const Layout& layout) {
  nlohmann::json j = nlohmann::json::array();
  for (Point p : layout.positions) j.push_back({p.x, p.y});
  return j;
}

inline Layout layout_from_json(const nlohmann::json& j) {
  Layout layout;
  for (const auto& item : j) layout.positions.push_back({item[0].get<double>(), item[1].get<double>()});
  return layout;
}

struct Drawing {
  Layout layout;
  std::vector<ArcEdge> arcs;
};

inline nlohmann::json drawing_to_json(const Layout& layout, std::span<const ArcEdge> arcs) {
  nlohmann::json doc;
  doc["layout"] = layout_to_json(layout);
  doc["arcs"] = nlohmann::json::array();
  for (const ArcEdge& e : arcs) doc["arcs"].push_back(arc_to_json(e));
  return doc;
}

inline Drawing drawing_from_json(const nlohmann::json& doc) {
  Drawing d;
  d.layout = layout_from_json(doc.at("layout"));
  for (const auto& item : doc.at("arcs")) d.arcs.push_back(arc_from_json(item));
  return d;
}

inline nlohmann::json report_to_json(const RunReport& rep, const QualityReport& quality) {
  return nlohmann::json{{"passes", rep.passes},
                        {"max_displacement", rep.max_displacement},
                        {"total_energy", rep.total_energy},
                        {"converged", rep.converged},
                        {"angular_deviation", rep.angular_deviation},
                        {"post_rebuild_deviation", rep.post_rebuild_deviation},
                        {"frozen_vertices", rep.frozen_vertices},
                        {"perturbations", rep.perturbations},
                        {"fallback_edges", rep.fallback_edges},
                        {"final_energy", quality.total_energy},
                        {"nonowner_residual", quality.nonowner_residual},
                        {"max_force_residual", quality.max_force_residual}};
}

inline nlohmann::json config_to_json(const SolverConfig& cfg) {
  return nlohmann::json{{"epsilon", cfg.epsilon},
                        {"max_passes", cfg.max_passes},
                        {"inner_tol", cfg.inner_tol},
                        {"inner_max_evals", cfg.inner_max_evals},
                        {"min_chord", cfg.min_chord},
                        {"seed", cfg.seed}};
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// True if circle angle a lies on the arc's sweep.
inline bool angle_on_arc(const ArcEdge& e, double a) {
  const double sweep = arc_sweep(e);
  const double off = e.ccw ? normalize_angle(a - e.start_angle)
                           : normalize_angle(e.start_angle - a);
  return off <= sweep;
}

// Bounding box of the whole drawing, including arc bulges.
inline BoundingBox drawing_bounds(const Layout& layout, std::span<const ArcEdge> arcs) {
  BoundingBox box = bounding_box(layout);
  for (const ArcEdge& e : arcs) {
    if (e.kind != ArcKind::Circular) continue;
    for (int q = 0; q < 4; ++q) {
      const double a = q * kPi / 2.0;
      if (angle_on_arc(e, a))
        box.include(e.center + Point{std::cos(a) * e.radius, std::sin(a) * e.radius});
    }
  }
  return box;
}

}  // namespace detail

// Renders the drawing. The y axis is flipped on output so counterclockwise in
// drawing coordinates stays counterclockwise on screen.
inline std::string svg_document(const Layout& layout, std::span<const ArcEdge> arcs) {
  const BoundingBox box = detail::drawing_bounds(layout, arcs);
  const double diag = box.diagonal() > 0.0 ? box.diagonal() : 1.0;
  const double pad = 0.1 * diag;
  const double vertex_r = 0.01 * diag;
  auto fy = [](double y) { return 0.0 - y; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
      << detail::fmt(box.min_x - pad) << " " << detail::fmt(fy(box.max_y) - pad) << " "
      << detail::fmt(box.width() + 2.0 * pad) << " " << detail::fmt(box.height() + 2.0 * pad)
      << "\">\n";
  svg << "  <g fill=\"none\" stroke=\"#1a1a1a\" stroke-width=\"" << detail::fmt(0.004 * diag)
      << "\">\n";
  for (const ArcEdge& e : arcs) {
    const int from = e.owner;
    const int to = e.u == e.owner ? e.v : e.u;
    const Point a = layout[from];
    const Point b = layout[to];
    if (e.kind == ArcKind::Straight) {
      svg << "    <line x1=\"" << detail::fmt(a.x) << "\" y1=\"" << detail::fmt(fy(a.y))
          << "\" x2=\"" << detail::fmt(b.x) << "\" y2=\"" << detail::fmt(fy(b.y)) << "\"/>\n";
    } else {
      const int large_arc = arc_sweep(e) > kPi ? 1 : 0;
      const int sweep_flag = e.ccw ? 0 : 1;  // flipped y reverses orientation
      svg << "    <path d=\"M " << detail::fmt(a.x) << " " << detail::fmt(fy(a.y)) << " A "
          << detail::fmt(e.radius) << " " << detail::fmt(e.radius) << " 0 " << large_arc << " "
          << sweep_flag << " " << detail::fmt(b.x) << " " << detail::fmt(fy(b.y)) << "\"/>\n";
    }
  }
  svg << "  </g>\n";
  svg << "  <g font-family=\"sans-serif\" font-size=\"" << detail::fmt(0.03 * diag)
      << "\" text-anchor=\"middle\">\n";
  for (int v = 0; v < layout.size(); ++v) {
    const Point p = layout[v];
    svg << "    <circle cx=\"" << detail::fmt(p.x) << "\" cy=\"" << detail::fmt(fy(p.y))
        << "\" r=\"" << detail::fmt(vertex_r) << "\" fill=\"#d84315\"/>\n";
    svg << "    <text x=\"" << detail::fmt(p.x + 1.8 * vertex_r) << "\" y=\""
        << detail::fmt(fy(p.y) - 1.8 * vertex_r) << "\">" << v << "</text>\n";
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

}  // namespace lombardi
