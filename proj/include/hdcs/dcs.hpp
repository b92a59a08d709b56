#pragma once

// The six classified discrete conformal structure families on ideally
// triangulated surfaces with boundary: edge length closed forms, split
// ratios, coth values of the partial lengths, and the alpha reparameterization.
//
// The per-edge formulas are templates over the scalar type so that the
// verification module can evaluate finite-difference stencils in extended
// precision.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdcs/error.hpp"

namespace hdcs {

/// A-families have positive split ratio, B-families negative.
/// A1p/B1p: 1 + alpha e^{2f} > 0; A1n/B1n: 1 + alpha e^{2f} < 0; A2/B2: C-twisted.
enum class Family { A1p, A1n, A2, B1p, B1n, B2 };

inline constexpr std::array<Family, 6> kAllFamilies = {Family::A1p, Family::A1n, Family::A2,
                                                       Family::B1p, Family::B1n, Family::B2};

constexpr std::string_view to_string(Family f) {
  switch (f) {
    case Family::A1p: return "A1p";
    case Family::A1n: return "A1n";
    case Family::A2: return "A2";
    case Family::B1p: return "B1p";
    case Family::B1n: return "B1n";
    case Family::B2: return "B2";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

constexpr bool is_a_family(Family f) {
  return f == Family::A1p || f == Family::A1n || f == Family::A2;
}

/// The A-family paired with f in the allowed mixed types (A1p-B1p, A1n-B1n, A2-B2).
constexpr Family partner_a(Family f) {
  switch (f) {
    case Family::B1p: return Family::A1p;
    case Family::B1n: return Family::A1n;
    case Family::B2: return Family::A2;
    default: return f;
  }
}

constexpr bool uses_alpha(Family f) { return f != Family::A2 && f != Family::B2; }
constexpr bool is_negative_branch(Family f) { return f == Family::A1n || f == Family::B1n; }

/// Parameters of one oriented edge (i, j). C is the oriented constant C_ij.
template <class Real>
struct BasicEdgeParams {
  Family family = Family::A1p;
  Real alpha_i = 0;
  Real alpha_j = 0;
  Real f_i = 0;
  Real f_j = 0;
  Real eta = 0;
  Real C = 0;

  /// The same edge seen from j: swaps endpoints and negates C.
  BasicEdgeParams reversed() const { return {family, alpha_j, alpha_i, f_j, f_i, eta, -C}; }

  template <class Other>
  BasicEdgeParams<Other> cast() const {
    return {family,          static_cast<Other>(alpha_i), static_cast<Other>(alpha_j),
            static_cast<Other>(f_i), static_cast<Other>(f_j), static_cast<Other>(eta),
            static_cast<Other>(C)};
  }
};

using EdgeParams = BasicEdgeParams<double>;

namespace detail {

template <class Real>
Real boundary_factor(Real alpha, Real f) {
  return 1 + alpha * std::exp(2 * f);
}

/// Positive rearrangement -(1 + alpha e^{2f}) for the negative branch.
template <class Real>
Real negative_boundary_factor(Real alpha, Real f) {
  return -alpha * std::exp(2 * f) - 1;
}

template <class Real>
Real sinh_from_cosh(Real c) {
  return std::sqrt((c - 1) * (c + 1));
}

/// |P_j / P_i|, square-rooted; the magnitude of the split ratio for the alpha families.
template <class Real>
Real alpha_ratio_magnitude(const BasicEdgeParams<Real>& p) {
  if (is_negative_branch(p.family)) {
    return std::sqrt(negative_boundary_factor(p.alpha_j, p.f_j) /
                     negative_boundary_factor(p.alpha_i, p.f_i));
  }
  const Real pi = boundary_factor(p.alpha_i, p.f_i);
  if (pi == 0) {
    throw Error(ErrorCode::PoleAtZero, "1 + alpha_i e^{2 f_i} = 0 (ratio infinite; rho_ji = 0)");
  }
  return std::sqrt(boundary_factor(p.alpha_j, p.f_j) / pi);
}

}  // namespace detail

/// Throws InvalidParameters when the boundary data violate the family's domain.
template <class Real>
void validate_edge(const BasicEdgeParams<Real>& p) {
  if (!uses_alpha(p.family)) return;
  if (is_negative_branch(p.family)) {
    if (!(p.alpha_i < 0 && p.alpha_j < 0)) {
      throw Error(ErrorCode::InvalidParameters,
                  std::string(to_string(p.family)) + " requires negative alpha at both ends");
    }
    if (!(detail::negative_boundary_factor(p.alpha_i, p.f_i) > 0 &&
          detail::negative_boundary_factor(p.alpha_j, p.f_j) > 0)) {
      throw Error(ErrorCode::InvalidParameters,
                  std::string(to_string(p.family)) + " requires 1 + alpha e^{2f} < 0 at both ends");
    }
    return;
  }
  if (!(detail::boundary_factor(p.alpha_i, p.f_i) >= 0 &&
        detail::boundary_factor(p.alpha_j, p.f_j) >= 0)) {
    throw Error(ErrorCode::InvalidParameters,
                std::string(to_string(p.family)) + " requires 1 + alpha e^{2f} >= 0 at both ends");
  }
}

/// cosh of the edge length. Values <= 1 are returned unchanged; see is_degenerate_length.
template <class Real>
Real cosh_length(const BasicEdgeParams<Real>& p) {
  validate_edge(p);
  const Real scaled_eta = p.eta * std::exp(p.f_i + p.f_j);
  switch (p.family) {
    case Family::A1p:
    case Family::B1p: {
      const Real root = std::sqrt(detail::boundary_factor(p.alpha_i, p.f_i) *
                                  detail::boundary_factor(p.alpha_j, p.f_j));
      return (p.family == Family::A1p ? -root : root) + scaled_eta;
    }
    case Family::A1n:
    case Family::B1n: {
      const Real root = std::sqrt(detail::negative_boundary_factor(p.alpha_i, p.f_i) *
                                  detail::negative_boundary_factor(p.alpha_j, p.f_j));
      return (p.family == Family::A1n ? root : -root) + scaled_eta;
    }
    case Family::A2:
      return -std::cosh(p.f_j - p.f_i - p.C) + scaled_eta;
    case Family::B2:
      return std::cosh(p.f_j - p.f_i - p.C) + scaled_eta;
  }
  return scaled_eta;
}

template <class Real>
constexpr bool is_degenerate_length(Real cosh_l) {
  return !(cosh_l > 1);
}

/// rho_ij = sinh d_ji / sinh d_ij.
template <class Real>
Real edge_ratio(const BasicEdgeParams<Real>& p) {
  validate_edge(p);
  Real magnitude;
  if (uses_alpha(p.family)) {
    magnitude = detail::alpha_ratio_magnitude(p);
  } else {
    magnitude = std::exp(p.f_j - p.f_i - p.C);
  }
  return is_a_family(p.family) ? magnitude : -magnitude;
}

/// coth d_ij from the classification's closed form (independent of edge_ratio's route).
template <class Real>
Real coth_d(const BasicEdgeParams<Real>& p) {
  const Real c = cosh_length(p);
  if (is_degenerate_length(c)) {
    throw Error(ErrorCode::DegenerateEdge, "cosh l <= 1");
  }
  const Real sinh_l = detail::sinh_from_cosh(c);
  const Real scaled_eta = p.eta * std::exp(p.f_i + p.f_j);
  const Real sign = is_a_family(p.family) ? Real(-1) : Real(1);
  if (uses_alpha(p.family)) {
    const Real root = detail::alpha_ratio_magnitude(p);
    return (sign * p.alpha_i * std::exp(2 * p.f_i) * root + scaled_eta) / sinh_l;
  }
  return (-sign * std::sinh(p.f_j - p.f_i - p.C) + scaled_eta) / sinh_l;
}

/// Split of one oriented edge into partial lengths, driven by the ratio rho.
struct EdgeSplit {
  double cosh_l = 0.0;
  double l = 0.0;
  double rho = 0.0;
  double t_ij = 0.0;  ///< coth d_ij
  double t_ji = 0.0;  ///< coth d_ji
  std::optional<double> d_ij;
  std::optional<double> d_ji;
  bool real_split = false;
};

inline constexpr double kCothGuard = 1.0 + 1e-13;

inline double arccoth(double t) { return 0.5 * std::log((t + 1.0) / (t - 1.0)); }

inline EdgeSplit split_edge(double cosh_l, double rho) {
  if (is_degenerate_length(cosh_l)) {
    throw Error(ErrorCode::DegenerateEdge, "cosh l = " + std::to_string(cosh_l) + " <= 1");
  }
  if (rho == 0.0 || !std::isfinite(rho)) {
    throw Error(ErrorCode::ZeroRatio, "split ratio must be finite and nonzero");
  }
  EdgeSplit s;
  s.cosh_l = cosh_l;
  s.l = std::acosh(cosh_l);
  s.rho = rho;
  const double sinh_l = detail::sinh_from_cosh(cosh_l);
  s.t_ij = (cosh_l + rho) / sinh_l;
  s.t_ji = (cosh_l + 1.0 / rho) / sinh_l;
  s.real_split = std::abs(s.t_ij) > kCothGuard && std::abs(s.t_ji) > kCothGuard;
  if (s.real_split) {
    s.d_ij = arccoth(s.t_ij);
    s.d_ji = s.l - *s.d_ij;
  }
  return s;
}

inline EdgeSplit split_edge(const EdgeParams& p) { return split_edge(cosh_length(p), edge_ratio(p)); }

// ---------------------------------------------------------------------------
// Alpha reparameterization: arbitrary real alpha -> alpha in {-1, 0, 1}.

struct AlphaEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double eta = 0.0;
};

struct AlphaNormalization {
  std::vector<int> alpha;
  std::vector<double> g;
  std::vector<double> eta;
};

/// g_r = f_r + log|alpha_r| / 2 and eta_ij / sqrt(|alpha_i alpha_j|); the edge lengths are unchanged.
inline AlphaNormalization normalize_alpha(const std::vector<double>& alpha_raw,
                                          const std::vector<double>& f,
                                          const std::vector<AlphaEdge>& edges) {
  if (alpha_raw.size() != f.size()) {
    throw Error(ErrorCode::InvalidParameters, "alpha and f sizes differ");
  }
  AlphaNormalization out;
  out.alpha.reserve(f.size());
  out.g.reserve(f.size());
  for (std::size_t r = 0; r < f.size(); ++r) {
    const double a = alpha_raw[r];
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidParameters, "non-finite alpha");
    out.alpha.push_back(a > 0 ? 1 : (a < 0 ? -1 : 0));
    out.g.push_back(a == 0.0 ? f[r] : f[r] + 0.5 * std::log(std::abs(a)));
  }
  out.eta.reserve(edges.size());
  for (const AlphaEdge& e : edges) {
    if (e.i >= f.size() || e.j >= f.size()) {
      throw Error(ErrorCode::InvalidParameters, "edge endpoint out of range");
    }
    const double ai = alpha_raw[e.i];
    const double aj = alpha_raw[e.j];
    if ((ai == 0.0) != (aj == 0.0)) {
      throw Error(ErrorCode::MixedSignAlpha, "edge {" + std::to_string(e.i) + "," +
                                                 std::to_string(e.j) +
                                                 "} joins zero and nonzero alpha");
    }
    out.eta.push_back(ai == 0.0 ? e.eta : e.eta / std::sqrt(std::abs(ai * aj)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coexistence of families on one face.

struct FaceFamilyReport {
  bool ok = true;
  std::string rule;  ///< Violated rule; empty when ok.
};

/// Allowed faces: three equal A-families, or one A plus two B of the matching kind.
inline FaceFamilyReport validate_face_families(const std::array<Family, 3>& families) {
  int b_count = 0;
  for (Family f : families) b_count += is_a_family(f) ? 0 : 1;

  if (b_count == 3) {
    return {false, "all-B face: rho product is negative"};
  }
  if (b_count == 0) {
    if (families[0] == families[1] && families[1] == families[2]) return {};
    return {false, "mixed A families " + std::string(to_string(families[0])) + "/" +
                       std::string(to_string(families[1])) + "/" +
                       std::string(to_string(families[2])) +
                       " on one face"};
  }
  if (b_count == 1) {
    return {false, "a single B side makes the rho product negative"};
  }
  // Exactly two B edges.
  Family a = Family::A1p;
  for (Family f : families) {
    if (is_a_family(f)) a = f;
  }
  for (Family f : families) {
    if (!is_a_family(f) && partner_a(f) != a) {
      return {false, std::string(to_string(f)) + " cannot mix with " +
                         std::string(to_string(a))};
    }
  }
  return {};
}

}  // namespace hdcs
