#pragma once

// Klein-disk figure of one realized face.

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "hdcs/hexagon.hpp"
#include "hdcs/lorentz.hpp"

namespace hdcs {

namespace svg_detail {

inline constexpr double kCanvas = 1000.0;
inline constexpr double kRadius = 400.0;
inline constexpr double kMid = 500.0;

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x == 0.0 ? 0.0 : x);
  return buf;
}

inline double sx(double u) { return kMid + kRadius * u; }
inline double sy(double v) { return kMid - kRadius * v; }

/// Lorentz boost sending the unit time-like vector c to (0, 0, 1).
struct Boost {
  double u1 = 0.0, u2 = 0.0, gamma = 1.0;
  LorentzVector operator()(const LorentzVector& x) const {
    const double uu = u1 * u1 + u2 * u2;
    if (uu == 0.0) return x;
    const double ux = u1 * x.x1 + u2 * x.x2;
    const double k = (gamma - 1.0) / uu;
    return {x.x1 + k * ux * u1 - u1 * x.x3, x.x2 + k * ux * u2 - u2 * x.x3, gamma * x.x3 - ux};
  }
};

/// Chord of the line {x : x . n = 0}, clipped to the unit disk; empty if it misses.
inline std::optional<std::string> chord(const LorentzVector& n, const char* cls) {
  const double a = n.x1, b = n.x2, c = n.x3;
  const double ab = a * a + b * b;
  if (ab <= 0.0) return std::nullopt;
  const double d2 = c * c / ab;
  if (d2 >= 1.0) return std::nullopt;
  const double px = c * a / ab, py = c * b / ab;
  const double half = std::sqrt(1.0 - d2);
  const double inv = 1.0 / std::sqrt(ab);
  const double dx = -b * inv * half, dy = a * inv * half;
  return "  <line class=\"" + std::string(cls) + "\" x1=\"" + fmt(sx(px - dx)) + "\" y1=\"" + fmt(sy(py - dy)) +
         "\" x2=\"" + fmt(sx(px + dx)) + "\" y2=\"" + fmt(sy(py + dy)) + "\"/>\n";
}

inline std::string marker(const LorentzVector& x, const CausalClass& cls, const char* role) {
  if (std::abs(x.x3) < kZeroTolerance * euclidean_norm(x)) return "";
  const auto [u, v] = klein_project(x);
  const std::string X = fmt(sx(u)), Y = fmt(sy(v));
  const std::string klass = std::string(role) + " " + std::string(to_string(cls.tag));
  if (cls.tag == Causality::SpaceLike) {
    return "  <rect class=\"" + klass + "\" x=\"" + fmt(sx(u) - 6.0) + "\" y=\"" + fmt(sy(v) - 6.0) +
           "\" width=\"12.000000\" height=\"12.000000\"/>\n";
  }
  return "  <circle class=\"" + klass + "\" cx=\"" + X + "\" cy=\"" + Y + "\" r=\"6.000000\"/>\n";
}

}  // namespace svg_detail

/// SVG document: unit circle, polar chords of the poles, edge chords, perpendiculars through
/// the edge centers and center markers. A time-like face center is moved to the origin.
inline std::string render_face(const HexRealization& hex, const CenterReport& centers) {
  using namespace svg_detail;
  Boost boost;
  if (centers.face_class.tag == Causality::TimeLike) {
    const LorentzVector c = lorentz_normalize(centers.face_center);
    boost = Boost{c.x1, c.x2, c.x3};
  }
  std::array<LorentzVector, 3> v;
  for (int r = 0; r < 3; ++r) v[static_cast<std::size_t>(r)] = boost(hex.pole(r));

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  out += "  <style>\n"
         "    .disk { fill: none; stroke: #000; stroke-width: 2; }\n"
         "    .polar { stroke: #1f5fbf; stroke-width: 3; }\n"
         "    .edge { stroke: #444; stroke-width: 1.5; }\n"
         "    .perp { stroke: #c03030; stroke-width: 1; stroke-dasharray: 6 4; }\n"
         "    .time-like { fill: #c03030; }\n"
         "    .light-like { fill: #fff; stroke: #c03030; stroke-width: 2; }\n"
         "    .space-like { fill: none; stroke: #7a3fbf; stroke-width: 2; }\n"
         "    .face-center { stroke: #000; stroke-width: 1; }\n"
         "  </style>\n";
  out += "  <circle class=\"disk\" cx=\"" + fmt(kMid) + "\" cy=\"" + fmt(kMid) + "\" r=\"" + fmt(kRadius) + "\"/>\n";
  for (const LorentzVector& p : v) {
    if (auto line = chord(p, "polar")) out += *line;
  }
  for (std::size_t s = 0; s < 3; ++s) {
    const LorentzVector& vr = v[s];
    const LorentzVector& vs = v[(s + 1) % 3];
    const LorentzVector edge_normal = lorentz_cross(vr, vs);
    if (auto line = chord(edge_normal, "edge")) out += *line;
    const LorentzVector c = boost(centers.edge_centers[s].c);
    if (auto line = chord(lorentz_cross(c, edge_normal), "perp")) out += *line;
  }
  for (const EdgeCenter& ec : centers.edge_centers) out += marker(boost(ec.c), ec.cls, "edge-center");
  out += marker(boost(centers.face_center), centers.face_class, "face-center");
  out += "</svg>\n";
  return out;
}

}  // namespace hdcs
