#pragma once

// Numerical certificates: finite-difference checks of the defining
// variational equation, locality, the H-function identities, the
// conformal-variation coplanarity of a face, and the Lorentzian identity
// battery. Every randomized check is reproducible from (seed, check name).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hdcs/dcs.hpp"
#include "hdcs/error.hpp"
#include "hdcs/hexagon.hpp"
#include "hdcs/lorentz.hpp"
#include "hdcs/surface.hpp"
#include "json.hpp"

namespace hdcs {

struct CheckReport {
  std::string name;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  /// Auxiliary numbers (contraction ratios, analytic values, ...).
  std::map<std::string, double> metrics;

  void finish(bool extra_condition = true) {
    max_residual = residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
    pass = max_residual <= tolerance && extra_condition;
  }
};

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  j["samples"] = r.residuals.size();
  j["residuals"] = r.residuals;
  j["metrics"] = r.metrics;
  return j;
}

// ---------------------------------------------------------------------------
// Seeded streams and random draws.

using Rng = std::mt19937_64;

/// Stream seed derived from the suite seed and the check name (FNV-1a, then splitmix64).
inline std::uint64_t stream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t z = seed ^ h;
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::string_view name) { return Rng(stream_seed(seed, name)); }

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

namespace detail {

inline double sample_alpha(Family fam, Rng& rng) {
  if (!uses_alpha(fam)) return 0.0;
  if (is_negative_branch(fam)) return -1.0;
  return static_cast<double>(std::uniform_int_distribution<int>(-1, 1)(rng));
}

inline double sample_f(Family fam, double alpha, Rng& rng) {
  if (is_negative_branch(fam)) return uniform(rng, 0.2, 2.0);
  if (uses_alpha(fam) && alpha < 0.0) return uniform(rng, -3.0, -0.2);
  return uniform(rng, -1.5, 1.5);
}

/// Chooses eta so that cosh l equals target.
inline void solve_eta(EdgeParams& p, double target) {
  p.eta = 0.0;
  const double base = cosh_length(p);
  p.eta = (target - base) / std::exp(p.f_i + p.f_j);
}

}  // namespace detail

/// Valid random edge of the family with cosh l in [cosh_lo, cosh_hi].
inline EdgeParams sample_edge(Family fam, Rng& rng, double cosh_lo = 1.2, double cosh_hi = 8.0) {
  EdgeParams p;
  p.family = fam;
  p.alpha_i = detail::sample_alpha(fam, rng);
  p.alpha_j = detail::sample_alpha(fam, rng);
  p.f_i = detail::sample_f(fam, p.alpha_i, rng);
  p.f_j = detail::sample_f(fam, p.alpha_j, rng);
  p.C = uses_alpha(fam) ? 0.0 : uniform(rng, -1.0, 1.0);
  detail::solve_eta(p, uniform(rng, cosh_lo, cosh_hi));
  return p;
}

/// Random compatible face: three sides of A-family `a`, or (mixed) one side of `a`
/// and two of its B partner. Corner data and the C cocycle are shared consistently.
inline FaceConformalData sample_face(Family a, bool mixed, Rng& rng) {
  const Family b = a == Family::A1p ? Family::B1p : (a == Family::A1n ? Family::B1n : Family::B2);
  std::array<double, 3> alpha{};
  std::array<double, 3> f{};
  for (std::size_t r = 0; r < 3; ++r) {
    alpha[r] = detail::sample_alpha(a, rng);
    f[r] = detail::sample_f(a, alpha[r], rng);
  }
  std::array<double, 3> c{};
  if (!uses_alpha(a)) {
    c[0] = uniform(rng, -1.0, 1.0);
    c[1] = uniform(rng, -1.0, 1.0);
    c[2] = -(c[0] + c[1]);
  }
  const int a_side = std::uniform_int_distribution<int>(0, 2)(rng);
  FaceConformalData fd;
  for (std::size_t s = 0; s < 3; ++s) {
    const std::size_t t = (s + 1) % 3;
    const Family fam = (!mixed || static_cast<int>(s) == a_side) ? a : b;
    EdgeParams p{fam, alpha[s], alpha[t], f[s], f[t], 0.0, c[s]};
    detail::solve_eta(p, uniform(rng, 1.2, 8.0));
    fd.sides[s] = p;
  }
  return fd;
}

// ---------------------------------------------------------------------------
// Derivative checks.

inline constexpr double kFdTolerance = 1e-6;
/// Below this residual the stencil has reached its noise floor and no contraction is expected.
inline constexpr double kFdNoiseFloor = 1e-11;

namespace detail {

template <class Real>
Real length_at(const BasicEdgeParams<Real>& p) {
  const Real c = cosh_length(p);
  if (is_degenerate_length(c)) throw Error(ErrorCode::DegenerateEdge, "cosh l <= 1 inside the stencil");
  return std::acosh(c);
}

inline long double central_difference_fi(const BasicEdgeParams<long double>& p, long double h) {
  BasicEdgeParams<long double> plus = p;
  BasicEdgeParams<long double> minus = p;
  plus.f_i += h;
  minus.f_i -= h;
  return (length_at(plus) - length_at(minus)) / (2 * h);
}

}  // namespace detail

/// Central difference of l in f_i against coth d_ij, evaluated in extended precision.
/// Passes when the residual at h is within tolerance and halving h contracts it about 4x
/// (or it already sits at the noise floor).
inline CheckReport fd_partial_check(const EdgeParams& p, double h = 1e-5, double tol = kFdTolerance) {
  const auto q = p.cast<long double>();
  const long double analytic = coth_d(q);
  const long double r1 = std::abs(detail::central_difference_fi(q, h) - analytic);
  const long double r2 = std::abs(detail::central_difference_fi(q, h / 2) - analytic);

  CheckReport report;
  report.name = "fd_partial[" + std::string(to_string(p.family)) + "]";
  report.tolerance = tol;
  report.residuals = {static_cast<double>(r1), static_cast<double>(r2)};
  const double contraction = r2 > 0 ? static_cast<double>(r1 / r2) : 0.0;
  report.metrics["coth_d"] = static_cast<double>(analytic);
  report.metrics["contraction"] = contraction;
  const bool richardson = r1 <= kFdNoiseFloor || (contraction >= 3.5 && contraction <= 4.5);
  report.metrics["richardson_ok"] = richardson ? 1.0 : 0.0;
  report.finish(richardson);
  return report;
}

/// H = log(sinh^2 d_ij / sinh^2 d_ji) = -2 log|rho_ij|.
inline double h_field(const EdgeParams& p) { return -2.0 * std::log(std::abs(edge_ratio(p))); }

/// The closed form of H: 2(f_i - f_j + C) or log(P_i / P_j).
inline double h_field_closed_form(const EdgeParams& p) {
  if (!uses_alpha(p.family)) return 2.0 * (p.f_i - p.f_j + p.C);
  const double pi = 1.0 + p.alpha_i * std::exp(2.0 * p.f_i);
  const double pj = 1.0 + p.alpha_j * std::exp(2.0 * p.f_j);
  return std::log(pi / pj);
}

/// dH/df_i: 2 for the C-twisted families, 2 alpha_i e^{2 f_i} / (1 + alpha_i e^{2 f_i}) otherwise.
inline double h_field_gradient_i(const EdgeParams& p) {
  if (!uses_alpha(p.family)) return 2.0;
  const double e2 = std::exp(2.0 * p.f_i);
  return 2.0 * p.alpha_i * e2 / (1.0 + p.alpha_i * e2);
}

inline constexpr double kClosedFormTolerance = 1e-12;
inline constexpr double kPoleGuard = 1e-8;

/// Closed form, mixed partial and first-order identities of H (three reports).
inline std::vector<CheckReport> h_field_check(const EdgeParams& p, double h = 1e-4,
                                              double stencil_tol = kFdTolerance) {
  if (uses_alpha(p.family)) {
    const double pi = 1.0 + p.alpha_i * std::exp(2.0 * p.f_i);
    const double pj = 1.0 + p.alpha_j * std::exp(2.0 * p.f_j);
    if (std::abs(pi) < kPoleGuard || std::abs(pj) < kPoleGuard) {
      throw Error(ErrorCode::PoleAtZero, "H is singular where 1 + alpha e^{2f} = 0");
    }
  }
  const std::string fam(to_string(p.family));
  auto at = [&](double di, double dj) {
    EdgeParams q = p;
    q.f_i += di;
    q.f_j += dj;
    return h_field(q);
  };

  CheckReport closed;
  closed.name = "h_field.closed_form[" + fam + "]";
  closed.tolerance = kClosedFormTolerance;
  const double value = h_field(p);
  const double expected = h_field_closed_form(p);
  closed.residuals = {std::abs(value - expected) / std::max(1.0, std::abs(expected))};
  closed.metrics["H"] = value;
  closed.finish();

  CheckReport mixed;
  mixed.name = "h_field.mixed_partial[" + fam + "]";
  mixed.tolerance = stencil_tol;
  const double cross = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
  mixed.residuals = {std::abs(cross)};
  mixed.finish();

  CheckReport first;
  first.name = "h_field.first_order[" + fam + "]";
  first.tolerance = stencil_tol;
  const double di = (at(h, 0.0) - at(-h, 0.0)) / (2.0 * h);
  const double dj = (at(0.0, h) - at(0.0, -h)) / (2.0 * h);
  const double gi = h_field_gradient_i(p);
  const double gj = -h_field_gradient_i(p.reversed());
  first.residuals = {std::abs(di - gi), std::abs(dj - gj)};
  first.metrics["dH_dfi"] = gi;
  first.finish();
  return {closed, mixed, first};
}

/// Perturbs each f_k and requires every edge not incident to k to keep bit-identical l, rho, t.
inline CheckReport locality_check(const Surface& s, double delta = 1e-3) {
  CheckReport report;
  report.name = "locality";
  report.tolerance = 0.0;
  auto snapshot = [&](const SurfaceConformalData& data) {
    std::vector<std::array<double, 4>> out;
    for (std::size_t e = 0; e < s.tri.edges.size(); ++e) {
      const EdgeSplit sp = split_edge(edge_params(s.tri, data, e));
      out.push_back({sp.l, sp.rho, sp.t_ij, sp.t_ji});
    }
    return out;
  };
  const auto base = snapshot(s.data);
  std::size_t compared = 0;
  for (std::size_t k = 0; k < s.tri.n_boundary; ++k) {
    SurfaceConformalData moved = s.data;
    moved.f[k] += delta;
    const auto after = snapshot(moved);
    for (std::size_t e = 0; e < base.size(); ++e) {
      const auto [i, j] = s.tri.edge_labels(e);
      if (i == k || j == k) continue;
      ++compared;
      double diff = 0.0;
      for (std::size_t q = 0; q < 4; ++q) diff = std::max(diff, std::abs(after[e][q] - base[e][q]));
      report.residuals.push_back(diff);
    }
  }
  report.metrics["compared_edges"] = static_cast<double>(compared);
  report.finish();
  return report;
}

// ---------------------------------------------------------------------------
// Conformal variation of a face.

inline constexpr double kCoplanarTolerance = 1e-6;

struct ConformalVariationOptions {
  double delta = 1e-4;
  double tol = kCoplanarTolerance;
  double tol_compat = kCompatTolerance;
  /// Multiplies rho_ki (the side from k) when forming the center; 1 leaves the face intact.
  double ratio_perturbation = 1.0;
  /// Minimal -c'.c' (unit c, c' its projection to v_k^perp) for the foot measure.
  double foot_margin = 0.5;
};

/// Varies the f value of corner k with the other two corners fixed, in a gauge fixing
/// v_i and v_j, and checks that dv_k/df_k lies in Span(v_k, c_ijk).
inline CheckReport conformal_variation_check(const FaceConformalData& face, int k,
                                             const ConformalVariationOptions& opts = {}) {
  // Rotate so that the varied corner becomes pole 2: (i, j, k) = (k+1, k+2, k).
  const std::size_t ui = static_cast<std::size_t>((k + 1) % 3);
  const std::size_t uj = static_cast<std::size_t>((k + 2) % 3);
  const std::size_t uk = static_cast<std::size_t>(k);
  const EdgeParams side_ij = face.sides[ui];  // i -> j
  const EdgeParams side_jk = face.sides[uj];  // j -> k
  const EdgeParams side_ki = face.sides[uk];  // k -> i

  const std::array<double, 3> rho = {edge_ratio(side_ij), edge_ratio(side_jk), edge_ratio(side_ki)};
  const double residual = compatibility_residual(rho);
  if (!(std::abs(residual) <= opts.tol_compat)) {
    throw Error(ErrorCode::IncompatibleSplits, "face splits are not compatible: " + std::to_string(residual));
  }

  const double cosh_ij = cosh_length(side_ij);
  auto pole_k = [&](double shift) {
    EdgeParams jk = side_jk;
    EdgeParams ki = side_ki;
    jk.f_j += shift;
    ki.f_i += shift;
    return realize_cosh(cosh_ij, cosh_length(jk), cosh_length(ki)).pole(2);
  };

  const HexRealization hex = realize_cosh(cosh_ij, cosh_length(side_jk), cosh_length(side_ki));
  std::array<double, 3> used = rho;
  used[2] *= opts.ratio_perturbation;
  const auto rows = perpendicular_matrix(hex, used);
  // The center seen from k: common point of the perpendiculars of its two sides.
  LorentzVector center = perpendicular_intersection(rows, 1);
  if (euclidean_norm(center) < 1e-12 * euclidean_norm(rows[1]) * euclidean_norm(rows[2])) {
    throw Error(ErrorCode::NumericallyParallelRows, "perpendiculars at k are parallel");
  }
  center = center / euclidean_norm(center);

  // Richardson-extrapolated central difference: O(delta^4).
  auto central = [&](double d) { return (pole_k(d) - pole_k(-d)) / (2.0 * d); };
  const LorentzVector velocity = (4.0 * central(opts.delta / 2.0) - central(opts.delta)) / 3.0;
  const LorentzVector vk = hex.pole(2);

  // When c has a foot on geodesic k (c time-like, or the polar of a line ultraparallel to k),
  // u should point at that foot. The residual is then tanh of the distance along the
  // geodesic between the foot and the point u represents, which is gauge-free. Near
  // infinity the foot is ill-conditioned and we fall back to the sine of the Euclidean
  // angle between u and Span(v_k, c).
  const LorentzVector unit_c = causal_class(center).tag == Causality::LightLike ? center : lorentz_normalize(center);
  const LorentzVector foot = unit_c - minkowski_inner(unit_c, vk) * vk;
  const bool has_foot = -minkowski_inner(foot, foot) >= opts.foot_margin;
  double value = 0.0;
  if (has_foot) {
    const LorentzVector unit_foot = lorentz_normalize(foot);
    const LorentzVector along = lorentz_cross(vk, unit_foot);
    value = std::abs(minkowski_inner(velocity, along)) / std::abs(minkowski_inner(velocity, unit_foot));
  } else {
    const double scale = euclidean_norm(lorentz_cross(vk, center)) * euclidean_norm(velocity);
    value = scale > 0.0 ? std::abs(determinant(vk, center, velocity)) / scale : 0.0;
  }

  CheckReport report;
  report.name = "conformal_variation[k=" + std::to_string(k) + "]";
  report.tolerance = opts.tol;
  report.residuals = {value};
  report.metrics["time_like_center"] = causal_class(center).tag == Causality::TimeLike ? 1.0 : 0.0;
  report.metrics["foot_measure"] = has_foot ? 1.0 : 0.0;
  report.metrics["compat_residual"] = residual;
  report.metrics["ratio_perturbation"] = opts.ratio_perturbation;
  report.finish();
  return report;
}

// ---------------------------------------------------------------------------
// Lorentzian identity battery.

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kRightAngleTolerance = 1e-10;

namespace detail {

inline LorentzVector random_vector(Rng& rng) {
  for (;;) {
    const LorentzVector v{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    if (euclidean_norm(v) > 0.1) return v;
  }
}

inline double max_abs_diff(const LorentzVector& a, const LorentzVector& b) {
  return std::max({std::abs(a.x1 - b.x1), std::abs(a.x2 - b.x2), std::abs(a.x3 - b.x3)});
}

}  // namespace detail

/// Cross-product identities on random vectors and the right-angle relation on
/// constructed right angles. One report per identity.
inline std::vector<CheckReport> identity_suite(std::uint64_t seed, std::size_t samples = 1000) {
  Rng rng = make_rng(seed, "identity_suite");
  CheckReport anti{"cross.antisymmetry", {}, 0.0, kIdentityTolerance, false, seed, {}};
  CheckReport det{"cross.determinant", {}, 0.0, kIdentityTolerance, false, seed, {}};
  CheckReport triple{"cross.triple_product", {}, 0.0, kIdentityTolerance, false, seed, {}};
  CheckReport gram{"cross.gram", {}, 0.0, kIdentityTolerance, false, seed, {}};
  CheckReport right{"right_angle", {}, 0.0, kRightAngleTolerance, false, seed, {}};

  for (std::size_t n = 0; n < samples; ++n) {
    const LorentzVector x = detail::random_vector(rng);
    const LorentzVector y = detail::random_vector(rng);
    const LorentzVector z = detail::random_vector(rng);
    const LorentzVector w = detail::random_vector(rng);
    const double nx = euclidean_norm(x), ny = euclidean_norm(y), nz = euclidean_norm(z), nw = euclidean_norm(w);

    anti.residuals.push_back(detail::max_abs_diff(lorentz_cross(x, y), -lorentz_cross(y, x)) / (nx * ny));
    det.residuals.push_back(std::abs(minkowski_inner(lorentz_cross(x, y), z) - determinant(x, y, z)) / (nx * ny * nz));
    const LorentzVector lhs = lorentz_cross(x, lorentz_cross(y, z));
    const LorentzVector rhs = minkowski_inner(x, y) * z - minkowski_inner(z, x) * y;
    triple.residuals.push_back(detail::max_abs_diff(lhs, rhs) / (nx * ny * nz));
    const double g_lhs = minkowski_inner(lorentz_cross(x, y), lorentz_cross(z, w));
    const double g_rhs = minkowski_inner(x, w) * minkowski_inner(y, z) - minkowski_inner(x, z) * minkowski_inner(y, w);
    gram.residuals.push_back(std::abs(g_lhs - g_rhs) / (nx * ny * nz * nw));

    // Right angle at a point p of the hyperboloid: z's tangential part is orthogonal to y's.
    const double a = uniform(rng, -1.5, 1.5);
    const double b = uniform(rng, -1.5, 1.5);
    const LorentzVector p = lorentz_normalize(LorentzVector{a, b, std::sqrt(1.0 + a * a + b * b)});
    const LorentzVector tangent_y = y + minkowski_inner(y, p) * p;
    const LorentzVector normal = lorentz_cross(p, tangent_y);
    const LorentzVector zr = uniform(rng, -2.0, 2.0) * p + uniform(rng, 0.2, 2.0) * normal;
    const double r_lhs = -minkowski_inner(zr, y);
    const double r_rhs = minkowski_inner(zr, p) * minkowski_inner(p, y);
    right.residuals.push_back(std::abs(r_lhs - r_rhs) / (euclidean_norm(zr) * ny * euclidean_norm(p) * euclidean_norm(p)));
  }
  std::vector<CheckReport> out = {anti, det, triple, gram, right};
  for (CheckReport& r : out) r.finish();
  return out;
}

// ---------------------------------------------------------------------------
// Surface suite.

struct VerifyOptions {
  std::uint64_t seed = 42;
  double h = 1e-5;
  double tol_compat = kCompatTolerance;
  std::size_t identity_samples = 1000;
};

inline CheckReport failure_report(const std::string& name, const Error& e) {
  CheckReport r;
  r.name = name + " (" + std::string(to_string(e.code())) + ")";
  r.residuals = {std::numeric_limits<double>::infinity()};
  r.finish();
  return r;
}

/// Every certificate for one surface: identities, locality, per-edge derivative and
/// H checks at both ends, and per-face, per-corner conformal variation.
inline std::vector<CheckReport> verify_surface(const Surface& s, const VerifyOptions& opts = {}) {
  std::vector<CheckReport> out = identity_suite(opts.seed, opts.identity_samples);
  auto tag = [](CheckReport r, const std::string& where) {
    r.name += " " + where;
    return r;
  };
  try {
    out.push_back(locality_check(s));
  } catch (const Error& e) {
    out.push_back(failure_report("locality", e));
  }
  for (std::size_t e = 0; e < s.tri.edges.size(); ++e) {
    const EdgeParams p = edge_params(s, e);
    for (int end = 0; end < 2; ++end) {
      const EdgeParams q = end == 0 ? p : p.reversed();
      const std::string where = "edge " + std::to_string(e) + (end == 0 ? "" : " reversed");
      try {
        CheckReport r = tag(fd_partial_check(q, opts.h), where);
        r.seed = opts.seed;
        out.push_back(r);
      } catch (const Error& ex) {
        out.push_back(failure_report("fd_partial " + where, ex));
      }
    }
    try {
      for (CheckReport& r : h_field_check(p)) out.push_back(tag(r, "edge " + std::to_string(e)));
    } catch (const Error& ex) {
      out.push_back(failure_report("h_field edge " + std::to_string(e), ex));
    }
  }
  for (std::size_t f = 0; f < s.tri.faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      try {
        ConformalVariationOptions cv;
        cv.tol_compat = opts.tol_compat;
        out.push_back(tag(conformal_variation_check(face_data(s, f), k, cv), "face " + std::to_string(f)));
      } catch (const Error& ex) {
        out.push_back(failure_report("conformal_variation face " + std::to_string(f), ex));
      }
    }
  }
  return out;
}

}  // namespace hdcs
