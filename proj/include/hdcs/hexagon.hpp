#pragma once

// Right-angled hexagons (hyper-ideal triangles) in the hyperboloid model:
// pole realization from three alternate side lengths, edge centers, the
// perpendicular matrix, face centers and boundary arcs.
//
// Poles and sides are indexed 0, 1, 2 (i, j, k); side s joins poles s and s+1 mod 3,
// so side 0 is ij, side 1 is jk and side 2 is ki.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hdcs/error.hpp"
#include "hdcs/lorentz.hpp"

namespace hdcs {

using Matrix3 = std::array<std::array<double, 3>, 3>;

struct HexRealization {
  /// Unit space-like poles of the three boundary geodesics.
  std::array<LorentzVector, 3> poles;
  /// Gram matrix requested at construction: 1 on the diagonal, -cosh l off it.
  Matrix3 gram{};

  const LorentzVector& pole(int r) const { return poles[static_cast<std::size_t>(r)]; }
};

/// Realizes the hexagon from cosh of its sides (ij, jk, ki).
///
/// Gauge: v_i = (1,0,0), v_j = (-cosh l_ij, 0, sinh l_ij), det(v_i, v_j, v_k) > 0.
/// With this gauge the hexagon lies on the upper sheet and points inside it
/// pair negatively with every pole.
inline HexRealization realize_cosh(double cosh_ij, double cosh_jk, double cosh_ki) {
  const Matrix3 gram = {{{1.0, -cosh_ij, -cosh_ki}, {-cosh_ij, 1.0, -cosh_jk}, {-cosh_ki, -cosh_jk, 1.0}}};
  // Signature (2,1) by Sylvester's rule on the leading minors 1, 1 - cosh_ij^2, det.
  const double minor2 = (1.0 - cosh_ij) * (1.0 + cosh_ij);
  const double minor3 = 1.0 - cosh_ij * cosh_ij - cosh_jk * cosh_jk - cosh_ki * cosh_ki -
                        2.0 * cosh_ij * cosh_jk * cosh_ki;
  if (!(minor2 < 0.0) || !(minor3 < 0.0) || !(cosh_jk >= 1.0) || !(cosh_ki >= 1.0)) {
    throw Error(ErrorCode::NonRealizable, "Gram matrix does not have signature (2,1)");
  }
  const double sinh_ij = std::sqrt(-minor2);

  HexRealization hex;
  hex.gram = gram;
  hex.poles[0] = {1.0, 0.0, 0.0};
  hex.poles[1] = {-cosh_ij, 0.0, sinh_ij};
  const double a = -cosh_ki;
  const double c = (cosh_jk + cosh_ij * cosh_ki) / sinh_ij;
  const double b2 = 1.0 - a * a + c * c;
  if (!(b2 > 0.0)) {
    throw Error(ErrorCode::NonRealizable, "third pole has no real solution");
  }
  hex.poles[2] = {a, -std::sqrt(b2), c};
  return hex;
}

inline HexRealization realize(double l_ij, double l_jk, double l_ki) {
  if (!(l_ij > 0.0 && l_jk > 0.0 && l_ki > 0.0)) {
    throw Error(ErrorCode::NonRealizable, "hexagon sides must be positive");
  }
  return realize_cosh(std::cosh(l_ij), std::cosh(l_jk), std::cosh(l_ki));
}

struct EdgeCenter {
  LorentzVector c;
  CausalClass cls;
};

/// Point c of Span(v_r, v_s) with (c.v_s)/(c.v_r) = rho.
///
/// Time-like centers are unit points of the upper sheet, so -c.v_r = sinh d_rs.
/// Space-like (virtual) centers have c.c = +1 and c.v_r < 0; light-like ones are
/// left at c.v_r = -1.
inline EdgeCenter edge_center(const HexRealization& hex, int r, int s, double rho) {
  if (rho == 0.0) throw Error(ErrorCode::ZeroRatio, "edge center with rho = 0");
  const LorentzVector& vr = hex.pole(r);
  const LorentzVector& vs = hex.pole(s);
  const double g = minkowski_inner(vr, vs);
  const double det = (1.0 - g) * (1.0 + g);
  if (std::abs(det) < 1e-14 || euclidean_norm(lorentz_cross(vr, vs)) < 1e-14) {
    throw Error(ErrorCode::DegenerateEdgePlane, "edge poles are parallel");
  }
  const double p = -1.0;
  const double q = -rho;
  const double a = (p - g * q) / det;
  const double b = (q - g * p) / det;
  LorentzVector c = a * vr + b * vs;
  const CausalClass cls = causal_class(c);
  if (cls.tag != Causality::LightLike) c = lorentz_normalize(c);
  return {c, causal_class(c)};
}

/// Rows w_ij = v_j - rho_ij v_i, w_jk = v_k - rho_jk v_j, w_ki = v_i - rho_ki v_k.
inline std::array<LorentzVector, 3> perpendicular_matrix(const HexRealization& hex,
                                                        const std::array<double, 3>& rho) {
  std::array<LorentzVector, 3> rows;
  for (int s = 0; s < 3; ++s) {
    const int t = (s + 1) % 3;
    rows[static_cast<std::size_t>(s)] = hex.pole(t) - rho[static_cast<std::size_t>(s)] * hex.pole(s);
  }
  return rows;
}

inline double compatibility_residual(const std::array<double, 3>& rho) {
  return rho[0] * rho[1] * rho[2] - 1.0;
}

/// Product of the Euclidean row norms; the natural scale of det M.
inline double row_norm_product(const std::array<LorentzVector, 3>& rows) {
  return euclidean_norm(rows[0]) * euclidean_norm(rows[1]) * euclidean_norm(rows[2]);
}

inline constexpr double kCompatTolerance = 1e-8;

struct CenterReport {
  std::array<EdgeCenter, 3> edge_centers;
  LorentzVector face_center;
  CausalClass face_class;
  double det_m = 0.0;
  double det_m_scale = 0.0;
  double compat_residual = 0.0;
  /// |c . w| / (|c| |w|) for the row not used to build c.
  double orthogonality_residual = 0.0;
  /// max over sides of |(c x c_rs).(v_r x v_s)| / (|c| |c_rs| |v_r| |v_s|).
  double perpendicular_residual = 0.0;
};

/// Scaled value of (c x c_rs).(v_r x v_s): zero iff c lies on the perpendicular at c_rs.
inline double perpendicularity(const LorentzVector& c, const LorentzVector& c_rs, const LorentzVector& vr,
                               const LorentzVector& vs) {
  const double value = minkowski_inner(lorentz_cross(c, c_rs), lorentz_cross(vr, vs));
  return value / (euclidean_norm(c) * euclidean_norm(c_rs) * euclidean_norm(vr) * euclidean_norm(vs));
}

/// Common point of the perpendiculars of sides `first` and `first + 1` (unnormalized).
inline LorentzVector perpendicular_intersection(const std::array<LorentzVector, 3>& rows, int first) {
  return lorentz_cross(rows[static_cast<std::size_t>(first)], rows[static_cast<std::size_t>((first + 1) % 3)]);
}

namespace detail {

/// Normalizes a face-center candidate by causal class.
inline LorentzVector normalize_face_center(LorentzVector c, const HexRealization& hex) {
  const CausalClass cls = causal_class(c);
  switch (cls.tag) {
    case Causality::TimeLike:
      return lorentz_normalize(c);
    case Causality::SpaceLike: {
      c = lorentz_normalize(c);
      const LorentzVector sum = hex.pole(0) + hex.pole(1) + hex.pole(2);
      return minkowski_inner(c, sum) > 0.0 ? -c : c;
    }
    case Causality::LightLike:
      c = c / euclidean_norm(c);
      return c.x3 < 0.0 ? -c : c;
  }
  return c;
}

}  // namespace detail

/// Geometric center of the face: common point of the three edge perpendiculars.
inline CenterReport face_center(const HexRealization& hex, const std::array<double, 3>& rho,
                                double tol_compat = kCompatTolerance) {
  CenterReport report;
  report.compat_residual = compatibility_residual(rho);
  if (!(std::abs(report.compat_residual) <= tol_compat)) {
    throw Error(ErrorCode::IncompatibleSplits,
                "rho_ij rho_jk rho_ki - 1 = " + std::to_string(report.compat_residual));
  }
  const auto rows = perpendicular_matrix(hex, rho);
  report.det_m = determinant(rows[0], rows[1], rows[2]);
  report.det_m_scale = row_norm_product(rows);

  int best = -1;
  double best_quality = 0.0;
  for (int first = 0; first < 3; ++first) {
    const LorentzVector k = perpendicular_intersection(rows, first);
    const double quality =
        euclidean_norm(k) / (euclidean_norm(rows[static_cast<std::size_t>(first)]) *
                             euclidean_norm(rows[static_cast<std::size_t>((first + 1) % 3)]));
    if (quality > best_quality) {
      best_quality = quality;
      best = first;
    }
  }
  if (best < 0 || best_quality < 1e-12) {
    throw Error(ErrorCode::NumericallyParallelRows, "perpendicular rows are parallel");
  }
  const LorentzVector c = detail::normalize_face_center(perpendicular_intersection(rows, best), hex);
  report.face_center = c;
  report.face_class = causal_class(c);

  const LorentzVector& third = rows[static_cast<std::size_t>((best + 2) % 3)];
  report.orthogonality_residual =
      std::abs(minkowski_inner(c, third)) / (euclidean_norm(c) * euclidean_norm(third));

  for (int s = 0; s < 3; ++s) {
    const int t = (s + 1) % 3;
    const EdgeCenter ec = edge_center(hex, s, t, rho[static_cast<std::size_t>(s)]);
    report.edge_centers[static_cast<std::size_t>(s)] = ec;
    report.perpendicular_residual =
        std::max(report.perpendicular_residual,
                 std::abs(perpendicularity(c, ec.c, hex.pole(s), hex.pole(t))));
  }
  return report;
}

/// Length of the hexagon's arc on each boundary geodesic, from the perpendicular feet.
///
/// The foot of side (r, x) on v_r^perp is v_x - (v_x.v_r) v_r. Pairings of feet are
/// expanded in the pole pairings using the unit norm of the poles: far from the
/// gauge origin the coordinates are large and direct products would cancel.
inline std::array<double, 3> boundary_arcs(const HexRealization& hex) {
  std::array<double, 3> arcs{};
  for (int r = 0; r < 3; ++r) {
    const int s = (r + 1) % 3;
    const int t = (r + 2) % 3;
    const double g_rs = minkowski_inner(hex.pole(r), hex.pole(s));
    const double g_rt = minkowski_inner(hex.pole(r), hex.pole(t));
    const double g_st = minkowski_inner(hex.pole(s), hex.pole(t));
    const double feet = g_st - g_rs * g_rt;
    const double norms = std::sqrt((g_rs * g_rs - 1.0) * (g_rt * g_rt - 1.0));
    arcs[static_cast<std::size_t>(r)] = std::acosh(std::max(1.0, -feet / norms));
  }
  return arcs;
}

}  // namespace hdcs
