#pragma once

// 2D primitives for circular-arc edges: chord/arc conversions, tangent-chord
// angles, perpendicular distances, and the one-tangent arc construction.
// All functions are pure and thread-safe.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lombardi {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Chords shorter than this are treated as degenerate (below coordinate noise).
inline constexpr double kMinChord = 1e-12;
// Below this angle sin(t)/t is evaluated by its series limit.
inline constexpr double kThetaSeries = 1e-8;
// Tangent-chord angles at or beyond this describe a near-full circle; callers
// must not ask for the arc itself.
inline constexpr double kThetaMax = std::numbers::pi - 1e-6;
// Slope of the finite penalty applied past kThetaMax in the energy.
inline constexpr double kBarrierSlope = 1e6;

// Thrown when a construction collapses (coincident points, zero-length line,
// neighbor behind the tangent). The solver catches this to trigger its
// perturbation path; everything else propagates.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Direction of the segment a -> b, in (-pi, pi].
inline double bearing(Point a, Point b) { return std::atan2(b.y - a.y, b.x - a.x); }

// Normalizes an angle into [0, 2pi).
inline double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Signed difference a - b folded into [-pi, pi].
inline double angle_diff(double a, double b) { return std::remainder(a - b, kTwoPi); }

// Clockwise rotation about the origin by phi.
inline Point rotate_point(Point p, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {p.x * c + p.y * s, -p.x * s + p.y * c};
}

// Chord subtended by an arc of length t whose tangent-chord angle is theta.
// x = t sin(theta)/theta, with the series limit x = t at theta -> 0.
inline double chord_from_arc(double t, double theta) {
  if (!(t >= 0.0)) throw std::domain_error("chord_from_arc: arc length must be >= 0");
  if (std::fabs(theta) < kThetaSeries) return t * (1.0 - theta * theta / 6.0);
  if (!(theta > 0.0 && theta < kPi))
    throw std::domain_error("chord_from_arc: tangent-chord angle outside (0, pi)");
  return t * std::sin(theta) / theta;
}

// Inverse of chord_from_arc: arc length t = x theta/sin(theta). Diverges as
// theta -> pi, so that end of the domain is excluded.
inline double arc_from_chord(double x, double theta) {
  if (!(x >= 0.0)) throw std::domain_error("arc_from_chord: chord must be >= 0");
  if (std::fabs(theta) < kThetaSeries) return x * (1.0 + theta * theta / 6.0);
  if (!(theta > 0.0 && theta < kPi))
    throw std::domain_error("arc_from_chord: tangent-chord angle outside [0, pi)");
  return x * theta / std::sin(theta);
}

// Distance from point a to the infinite line through p0 and pb.
inline double point_to_line_distance(Point a, Point p0, Point pb) {
  const double dx = pb.x - p0.x;
  const double dy = pb.y - p0.y;
  const double len = std::hypot(dx, dy);
  if (len <= kMinChord) throw DegeneracyError("point_to_line_distance: degenerate line");
  return std::fabs(dx * (p0.y - a.y) - (p0.x - a.x) * dy) / len;
}

// Perpendicular distance from rel (a position relative to the candidate
// center) to the line through the origin with direction phi. Equivalent to
// the tan-based form but finite at phi = pi/2.
inline double tangent_perp_distance(Point rel, double phi) {
  return std::fabs(rel.x * std::sin(phi) - rel.y * std::cos(phi));
}

// Unsigned angle in [0, pi] between direction phi and the chord p0 -> p1.
inline double tangent_chord_angle(Point p0, Point p1, double phi) {
  if (distance(p0, p1) <= kMinChord)
    throw DegeneracyError("tangent_chord_angle: coincident points");
  return std::fabs(angle_diff(bearing(p0, p1), phi));
}

enum class ArcKind { Straight, Circular };

// One edge's drawn geometry: a straight segment or a circular arc, carrying
// the endpoint ("owner") whose prescribed tangent produced it.
struct ArcEdge {
  int u = -1;  // smaller endpoint id
  int v = -1;  // larger endpoint id
  ArcKind kind = ArcKind::Straight;
  Point center{};            // circular only
  double radius = 0.0;       // circular only
  double start_angle = 0.0;  // circle angle of the owner endpoint, [0, 2pi)
  double end_angle = 0.0;    // circle angle of the far endpoint, [0, 2pi)
  bool ccw = true;           // orientation leaving the owner
  double arc_length = 0.0;
  int owner = -1;
  double owner_tangent = 0.0;       // prescribed tangent direction at the owner
  double tangent_chord_angle = 0.0; // theta at the owner, [0, pi)
};

inline ArcEdge straight_edge(int owner, int other, Point p_owner, Point p_other) {
  ArcEdge e;
  e.u = owner < other ? owner : other;
  e.v = owner < other ? other : owner;
  e.kind = ArcKind::Straight;
  e.arc_length = distance(p_owner, p_other);
  e.owner = owner;
  e.owner_tangent = normalize_angle(bearing(p_owner, p_other));
  e.tangent_chord_angle = 0.0;
  return e;
}

// The unique arc from p0 to p1 whose tangent at p0 has direction phi.
// theta = 0 degenerates to a straight segment; theta near pi (the neighbor
// almost behind the tangent) is rejected because the arc diverges.
inline ArcEdge arc_through_tangent(Point p0, Point p1, double phi, int owner, int other) {
  const double chord = distance(p0, p1);
  if (chord <= kMinChord) throw DegeneracyError("arc_through_tangent: coincident endpoints");
  const double theta = tangent_chord_angle(p0, p1, phi);
  if (theta >= kThetaMax)
    throw DegeneracyError("arc_through_tangent: neighbor nearly behind the tangent");

  if (theta < 1e-9) {
    // Degenerate to a straight segment but keep the prescribed direction,
    // which differs from the chord bearing by less than 1e-9 rad here.
    ArcEdge e = straight_edge(owner, other, p0, p1);
    e.owner_tangent = normalize_angle(phi);
    return e;
  }

  ArcEdge e;
  e.u = owner < other ? owner : other;
  e.v = owner < other ? other : owner;
  e.kind = ArcKind::Circular;
  e.owner = owner;
  e.owner_tangent = normalize_angle(phi);
  e.tangent_chord_angle = theta;
  e.radius = chord / (2.0 * std::sin(theta));

  // Center sits on the perpendicular to phi at p0, on the side of the chord.
  const Point dir{std::cos(phi), std::sin(phi)};
  const double side = cross(dir, p1 - p0);
  const Point left_normal{-dir.y, dir.x};
  e.ccw = side >= 0.0;
  e.center = p0 + left_normal * (e.ccw ? e.radius : -e.radius);
  e.start_angle = normalize_angle(std::atan2(p0.y - e.center.y, p0.x - e.center.x));
  e.end_angle = normalize_angle(std::atan2(p1.y - e.center.y, p1.x - e.center.x));
  // Inscribed-angle theorem: the central angle is twice the tangent-chord angle.
  e.arc_length = e.radius * 2.0 * theta;
  return e;
}

// Sweep of a circular arc in radians, in (0, 2pi).
inline double arc_sweep(const ArcEdge& e) {
  return e.kind == ArcKind::Circular ? e.arc_length / e.radius : 0.0;
}

// Direction in which the edge departs from one of its endpoints.
// at_owner selects the endpoint; positions are needed for straight edges.
inline double edge_tangent_at(const ArcEdge& e, bool at_owner, Point p_here, Point p_other) {
  if (e.kind == ArcKind::Straight) return normalize_angle(bearing(p_here, p_other));
  const double radial = at_owner ? e.start_angle : e.end_angle;
  const double quarter = (e.ccw == at_owner) ? kPi / 2.0 : -kPi / 2.0;
  return normalize_angle(radial + quarter);
}

}  // namespace lombardi
