#pragma once

// Generalized hyperbolic cosine laws of the ten lateral triangle
// constructions (types I-V and their twisted counterparts VI-X) and their
// substitutions into the discrete conformal families.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "hdcs/dcs.hpp"
#include "hdcs/error.hpp"

namespace hdcs {

enum class TriangleKind { I, II, III, IV, V, VI, VII, VIII, IX, X };

inline constexpr std::array<TriangleKind, 10> kAllTriangleKinds = {
    TriangleKind::I,  TriangleKind::II,  TriangleKind::III,  TriangleKind::IV, TriangleKind::V,
    TriangleKind::VI, TriangleKind::VII, TriangleKind::VIII, TriangleKind::IX, TriangleKind::X};

constexpr std::string_view to_string(TriangleKind k) {
  constexpr std::array<std::string_view, 10> names = {"I",  "II",  "III",  "IV", "V",
                                                      "VI", "VII", "VIII", "IX", "X"};
  return names[static_cast<int>(k)];
}

/// The untwisted counterpart of a twisted kind (VI -> I, ..., X -> V); identity otherwise.
constexpr TriangleKind untwisted(TriangleKind k) {
  const int n = static_cast<int>(k);
  return static_cast<TriangleKind>(n >= 5 ? n - 5 : n);
}

constexpr bool is_twisted(TriangleKind k) { return static_cast<int>(k) >= 5; }

/// omega: distances, horocycle arcs or angles depending on the kind; tau likewise.
struct GeometryParams {
  double omega_i = 0.0;
  double omega_j = 0.0;
  double tau = 0.0;
};

namespace detail {

enum class Quantity { Distance, HorocycleArc, Angle, RightAngleOpen, AnyReal };

struct KindDomain {
  Quantity omega;
  Quantity tau;
};

constexpr KindDomain kind_domain(TriangleKind k) {
  switch (untwisted(k)) {
    case TriangleKind::I: return {Quantity::Distance, Quantity::Angle};
    case TriangleKind::II: return {Quantity::AnyReal, Quantity::HorocycleArc};
    case TriangleKind::III: return {Quantity::Distance, Quantity::Distance};
    case TriangleKind::IV: return {Quantity::HorocycleArc, Quantity::AnyReal};
    case TriangleKind::V: return {Quantity::RightAngleOpen, Quantity::Distance};
    default: break;
  }
  return {Quantity::AnyReal, Quantity::AnyReal};
}

inline bool admits(Quantity q, double v) {
  if (!std::isfinite(v)) return false;
  switch (q) {
    case Quantity::Distance:
    case Quantity::HorocycleArc: return v > 0.0;
    case Quantity::Angle: return v > 0.0 && v < std::numbers::pi;
    case Quantity::RightAngleOpen: return v > 0.0 && v <= std::numbers::pi / 2;
    case Quantity::AnyReal: return true;
  }
  return false;
}

inline void check_domain(TriangleKind k, const GeometryParams& p) {
  const KindDomain d = kind_domain(k);
  if (!admits(d.omega, p.omega_i) || !admits(d.omega, p.omega_j) || !admits(d.tau, p.tau)) {
    throw Error(ErrorCode::DomainViolation,
                "parameters outside the domain of kind " + std::string(to_string(k)));
  }
}

}  // namespace detail

struct CosineLawValue {
  double cosh_l = 0.0;
  /// cosh_l <= 1: no geometric side; the raw value is still reported.
  bool degenerate_side = false;
};

/// cosh of the side opposite the third vertex, by the kind's cosine law.
inline CosineLawValue cosine_law(TriangleKind kind, const GeometryParams& p) {
  detail::check_domain(kind, p);
  const double wi = p.omega_i;
  const double wj = p.omega_j;
  const double t = p.tau;
  double v = 0.0;
  switch (kind) {
    case TriangleKind::I:
      v = std::sinh(wi) * std::sinh(wj) - std::cos(t) * std::cosh(wi) * std::cosh(wj);
      break;
    case TriangleKind::II:
      v = -std::cosh(wi - wj) + 0.5 * t * t * std::exp(wi + wj);
      break;
    case TriangleKind::III:
      v = -std::cosh(wi) * std::cosh(wj) + std::cosh(t) * std::sinh(wi) * std::sinh(wj);
      break;
    case TriangleKind::IV:
      v = -1.0 + 2.0 * std::exp(t) * wi * wj;
      break;
    case TriangleKind::V:
      v = -std::cos(wi) * std::cos(wj) + std::cosh(t) * std::sin(wi) * std::sin(wj);
      break;
    case TriangleKind::VI:
      v = -std::sinh(wi) * std::sinh(wj) + std::cos(t) * std::cosh(wi) * std::cosh(wj);
      break;
    case TriangleKind::VII:
      v = std::cosh(wi - wj) - 0.5 * t * t * std::exp(wi + wj);
      break;
    case TriangleKind::VIII:
      v = std::cosh(wi) * std::cosh(wj) + std::cosh(t) * std::sinh(wi) * std::sinh(wj);
      break;
    case TriangleKind::IX:
      v = 1.0 + 2.0 * std::exp(t) * wi * wj;
      break;
    case TriangleKind::X:
      v = std::cos(wi) * std::cos(wj) + std::cosh(t) * std::sin(wi) * std::sin(wj);
      break;
  }
  return {v, is_degenerate_length(v)};
}

/// Edge parameters (C = 0) whose family length equals the kind's cosine law.
inline EdgeParams dcs_params_from_geometry(TriangleKind kind, const GeometryParams& p) {
  detail::check_domain(kind, p);
  const double wi = p.omega_i;
  const double wj = p.omega_j;
  const double t = p.tau;
  const bool twisted = is_twisted(kind);
  EdgeParams e;
  switch (untwisted(kind)) {
    case TriangleKind::I:  // e^f = cosh w
      e = {twisted ? Family::B1n : Family::A1n, -1.0, -1.0, std::log(std::cosh(wi)),
           std::log(std::cosh(wj)), twisted ? std::cos(t) : -std::cos(t), 0.0};
      break;
    case TriangleKind::II:  // f = w
      e = {twisted ? Family::B2 : Family::A2, 0.0, 0.0, wi, wj,
           twisted ? -0.5 * t * t : 0.5 * t * t, 0.0};
      break;
    case TriangleKind::III:  // e^f = sinh w
      e = {twisted ? Family::B1p : Family::A1p, 1.0, 1.0, std::log(std::sinh(wi)),
           std::log(std::sinh(wj)), std::cosh(t), 0.0};
      break;
    case TriangleKind::IV:  // e^f = w
      e = {twisted ? Family::B1p : Family::A1p, 0.0, 0.0, std::log(wi), std::log(wj),
           2.0 * std::exp(t), 0.0};
      break;
    case TriangleKind::V:  // e^f = sin w
      e = {twisted ? Family::B1p : Family::A1p, -1.0, -1.0, std::log(std::sin(wi)),
           std::log(std::sin(wj)), std::cosh(t), 0.0};
      break;
    default:
      break;
  }
  return e;
}

/// cosh of the boundary arc at i of the right-angled hexagon with the given alternate sides.
inline double hexagon_side_arc(double cosh_l_ij, double cosh_l_ik, double cosh_l_jk) {
  constexpr double eps = 1e-12;
  if (!(cosh_l_ij > 1.0 + eps && cosh_l_ik > 1.0 + eps && cosh_l_jk > 1.0 + eps)) {
    throw Error(ErrorCode::DegenerateSide, "hexagon side with cosh l <= 1");
  }
  const double sinh_ij = std::sqrt((cosh_l_ij - 1.0) * (cosh_l_ij + 1.0));
  const double sinh_ik = std::sqrt((cosh_l_ik - 1.0) * (cosh_l_ik + 1.0));
  return (cosh_l_jk + cosh_l_ij * cosh_l_ik) / (sinh_ij * sinh_ik);
}

}  // namespace hdcs
