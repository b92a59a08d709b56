#pragma once

// Lorentzian 3-space with the inner product of signature (+,+,-), the
// hyperboloid model of the hyperbolic plane and its Klein projection.

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "hdcs/error.hpp"

namespace hdcs {

/// Default relative tolerance separating the three causal classes.
inline constexpr double kLightTolerance = 1e-10;
/// Components below this magnitude count as zero.
inline constexpr double kZeroTolerance = 1e-14;

struct LorentzVector {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend constexpr LorentzVector operator+(const LorentzVector& a, const LorentzVector& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
  }
  friend constexpr LorentzVector operator-(const LorentzVector& a, const LorentzVector& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
  }
  friend constexpr LorentzVector operator-(const LorentzVector& a) { return {-a.x1, -a.x2, -a.x3}; }
  friend constexpr LorentzVector operator*(double s, const LorentzVector& a) {
    return {s * a.x1, s * a.x2, s * a.x3};
  }
  friend constexpr LorentzVector operator*(const LorentzVector& a, double s) { return s * a; }
  friend constexpr LorentzVector operator/(const LorentzVector& a, double s) {
    return {a.x1 / s, a.x2 / s, a.x3 / s};
  }
  friend constexpr bool operator==(const LorentzVector&, const LorentzVector&) = default;

  constexpr std::array<double, 3> to_array() const { return {x1, x2, x3}; }
};

/// x1*y1 + x2*y2 - x3*y3
constexpr double minkowski_inner(const LorentzVector& x, const LorentzVector& y) {
  return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3;
}

inline double euclidean_norm(const LorentzVector& x) {
  return std::sqrt(x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3);
}

constexpr double determinant(const LorentzVector& x, const LorentzVector& y, const LorentzVector& z) {
  return x.x1 * (y.x2 * z.x3 - y.x3 * z.x2) - x.x2 * (y.x1 * z.x3 - y.x3 * z.x1) +
         x.x3 * (y.x1 * z.x2 - y.x2 * z.x1);
}

/// J (x × y), with J = diag(1, 1, -1).
constexpr LorentzVector lorentz_cross(const LorentzVector& x, const LorentzVector& y) {
  return {x.x2 * y.x3 - x.x3 * y.x2, x.x3 * y.x1 - x.x1 * y.x3, -(x.x1 * y.x2 - x.x2 * y.x1)};
}

enum class Causality { SpaceLike, LightLike, TimeLike };

struct CausalClass {
  Causality tag = Causality::LightLike;
  /// Sign of x3 for time-like vectors (+1 upper sheet, -1 lower); 0 otherwise.
  int sheet = 0;

  friend constexpr bool operator==(const CausalClass&, const CausalClass&) = default;
};

constexpr std::string_view to_string(Causality c) {
  switch (c) {
    case Causality::SpaceLike: return "space-like";
    case Causality::LightLike: return "light-like";
    case Causality::TimeLike: return "time-like";
  }
  return "?";
}

inline bool is_zero(const LorentzVector& x) {
  return std::abs(x.x1) < kZeroTolerance && std::abs(x.x2) < kZeroTolerance &&
         std::abs(x.x3) < kZeroTolerance;
}

inline CausalClass causal_class(const LorentzVector& x, double light_tol = kLightTolerance) {
  if (is_zero(x)) {
    throw Error(ErrorCode::ZeroVector, "causal class of the zero vector");
  }
  const double q = minkowski_inner(x, x);
  const double scale = x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3;
  if (q < -light_tol * scale) {
    return {Causality::TimeLike, x.x3 > 0.0 ? 1 : -1};
  }
  if (q > light_tol * scale) {
    return {Causality::SpaceLike, 0};
  }
  return {Causality::LightLike, 0};
}

/// Scales x to self-product +1 (space-like) or -1 on the upper sheet (time-like).
inline LorentzVector lorentz_normalize(const LorentzVector& x, double light_tol = kLightTolerance) {
  const CausalClass cls = causal_class(x, light_tol);
  if (cls.tag == Causality::LightLike) {
    throw Error(ErrorCode::LightLikeInput, "cannot normalize a light-like vector");
  }
  const double norm = std::sqrt(std::abs(minkowski_inner(x, x)));
  if (cls.tag == Causality::TimeLike) {
    return (cls.sheet > 0 ? 1.0 : -1.0) / norm * x;
  }
  return x / norm;
}

enum class PairingKind { PointPointDistance, PointLineDistance, LineLineDistance, LineLineAngle };

struct PairingInterpretation {
  PairingKind kind{};
  /// Hyperbolic distance, or the angle in radians for LineLineAngle.
  double value = 0.0;
  /// PointLine: point and pole lie on opposite sides of the polar line.
  /// LineLine: poles are oppositely oriented along the common perpendicular.
  bool sign_flag = false;
};

/// Geometric meaning of the pairing of two non-null vectors (hyperboloid model).
inline PairingInterpretation pairing_interpret(const LorentzVector& x, const LorentzVector& y,
                                               double light_tol = kLightTolerance) {
  const CausalClass cx = causal_class(x, light_tol);
  const CausalClass cy = causal_class(y, light_tol);
  if (cx.tag == Causality::LightLike || cy.tag == Causality::LightLike) {
    throw Error(ErrorCode::LightLikeInput, "pairing with a light-like vector");
  }
  const LorentzVector cross = lorentz_cross(x, y);
  if (euclidean_norm(cross) <= 1e-12 * euclidean_norm(x) * euclidean_norm(y)) {
    throw Error(ErrorCode::DegeneratePair, "parallel vectors");
  }
  const LorentzVector u = lorentz_normalize(x, light_tol);
  const LorentzVector w = lorentz_normalize(y, light_tol);
  const double p = minkowski_inner(u, w);

  const bool x_time = cx.tag == Causality::TimeLike;
  const bool y_time = cy.tag == Causality::TimeLike;
  if (x_time && y_time) {
    return {PairingKind::PointPointDistance, std::acosh(std::max(1.0, -p)), false};
  }
  if (x_time != y_time) {
    return {PairingKind::PointLineDistance, std::asinh(std::abs(p)), p < 0.0};
  }
  // Gram determinant of the plane Span(u, w): negative iff it meets the hyperboloid.
  const double gram = 1.0 - p * p;
  if (gram < -light_tol) {
    return {PairingKind::LineLineDistance, std::acosh(std::abs(p)), p < 0.0};
  }
  return {PairingKind::LineLineAngle, std::acos(std::clamp(p, -1.0, 1.0)), false};
}

/// Central projection to the plane x3 = 1.
inline std::pair<double, double> klein_project(const LorentzVector& x) {
  if (std::abs(x.x3) <= kZeroTolerance * std::max(1.0, euclidean_norm(x))) {
    throw Error(ErrorCode::ProjectionAtInfinity, "x3 vanishes");
  }
  return {x.x1 / x.x3, x.x2 / x.x3};
}

}  // namespace hdcs
