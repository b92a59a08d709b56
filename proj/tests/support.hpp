#pragma once

// Shared draws and fixtures for the unit and acceptance tests.

#include <array>
#include <cmath>
#include <string>

#include "hdcs/examples.hpp"
#include "hdcs/surface.hpp"
#include "hdcs/trig.hpp"
#include "hdcs/verify.hpp"

namespace hdcs::testing {

inline GeometryParams sample_geometry(TriangleKind kind, Rng& rng) {
  GeometryParams p;
  switch (untwisted(kind)) {
    case TriangleKind::I:
      p = {uniform(rng, 0.05, 3), uniform(rng, 0.05, 3), uniform(rng, 0.05, M_PI - 0.05)};
      break;
    case TriangleKind::II:
      p = {uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, 0.05, 3)};
      break;
    case TriangleKind::III:
      p = {uniform(rng, 0.05, 3), uniform(rng, 0.05, 3), uniform(rng, 0.05, 3)};
      break;
    case TriangleKind::IV:
      p = {uniform(rng, 0.05, 3), uniform(rng, 0.05, 3), uniform(rng, -2, 2)};
      break;
    default:
      p = {uniform(rng, 0.05, M_PI / 2), uniform(rng, 0.05, M_PI / 2), uniform(rng, 0.05, 3)};
      break;
  }
  return p;
}

/// Random cosh-length triple for hexagons: lengths in (0.1, 5).
inline std::array<double, 3> sample_cosh_triple(Rng& rng) {
  return {std::cosh(uniform(rng, 0.1, 5)), std::cosh(uniform(rng, 0.1, 5)), std::cosh(uniform(rng, 0.1, 5))};
}

inline Surface example_surface(const std::string& name) { return parse_surface(emit_example(name)); }

/// Pair of pants with arbitrary conformal data set in memory (raw alpha need not be an integer).
inline Surface pants_with(const std::array<double, 3>& alpha, const std::array<double, 3>& f,
                          const std::array<double, 3>& eta, const std::array<double, 3>& C, Family family) {
  Surface s = example_surface("pants-guo");
  s.data.alpha.assign(alpha.begin(), alpha.end());
  s.data.f.assign(f.begin(), f.end());
  for (std::size_t e = 0; e < 3; ++e) s.data.edges[e] = EdgeData{family, eta[e], C[e]};
  return s;
}

/// Independent extended-precision embedding: poles in the fixed gauge, feet by projection
/// onto each polar plane, and the hyperbolic distance between the two feet on each boundary.
inline std::array<long double, 3> embedding_arcs(long double ch_ij, long double ch_jk, long double ch_ki) {
  using V = std::array<long double, 3>;
  auto dot = [](const V& x, const V& y) { return x[0] * y[0] + x[1] * y[1] - x[2] * y[2]; };
  const long double sh_ij = std::sqrt(ch_ij * ch_ij - 1);
  const long double c = (ch_jk + ch_ij * ch_ki) / sh_ij;
  const std::array<V, 3> v = {V{1, 0, 0}, V{-ch_ij, 0, sh_ij}, V{-ch_ki, -std::sqrt(1 - ch_ki * ch_ki + c * c), c}};
  std::array<long double, 3> arcs{};
  for (int r = 0; r < 3; ++r) {
    auto foot = [&](int x) {
      const long double g = dot(v[x], v[r]);
      V f{v[x][0] - g * v[r][0], v[x][1] - g * v[r][1], v[x][2] - g * v[r][2]};
      const long double n = std::sqrt(-dot(f, f));
      for (auto& comp : f) comp /= n;
      return f;
    };
    const V a = foot((r + 1) % 3), b = foot((r + 2) % 3);
    arcs[r] = std::acosh(-dot(a, b));
  }
  return arcs;
}

/// B-family edge built backwards from a real split: pick l and d_ij with d_ji = l - d_ij of
/// opposite sign, read off rho, solve the corner data from the H-field and eta from cosh l.
struct RealSplitDraw {
  EdgeParams edge;
  double l = 0.0;
  double d_ij = 0.0;
};

inline RealSplitDraw sample_real_split_edge(Family fam, Rng& rng) {
  for (;;) {
    const double l = uniform(rng, 0.3, 2.5);
    const double d = uniform(rng, 0.0, 1.0) < 0.5 ? uniform(rng, l + 0.1, l + 2.0) : uniform(rng, -2.0, -0.1);
    const double rho2 = std::pow(std::sinh(l - d) / std::sinh(d), 2);
    EdgeParams p;
    p.family = fam;
    switch (fam) {
      case Family::B2:
        p.f_i = uniform(rng, -1.5, 1.5);
        p.C = uniform(rng, -1.0, 1.0);
        p.f_j = p.f_i + p.C + 0.5 * std::log(rho2);
        break;
      case Family::B1p: {
        p.alpha_i = p.alpha_j = 1.0;
        p.f_i = uniform(rng, -1.5, 1.5);
        const double e2fj = rho2 * (1.0 + std::exp(2.0 * p.f_i)) - 1.0;
        if (!(e2fj > 0.0)) continue;
        p.f_j = 0.5 * std::log(e2fj);
        break;
      }
      case Family::B1n:
        p.alpha_i = p.alpha_j = -1.0;
        p.f_i = uniform(rng, 0.2, 2.0);
        p.f_j = 0.5 * std::log1p(rho2 * std::expm1(2.0 * p.f_i));
        break;
      default:
        throw Error(ErrorCode::MalformedDocument, "real-split draws are for B families");
    }
    p.eta = 0.0;
    p.eta = (std::cosh(l) - cosh_length(p)) / std::exp(p.f_i + p.f_j);
    return {p, l, d};
  }
}

/// Compatible face whose center, seen from corner k, is time-like. A families give
/// single-family faces; a B family gives a mixed face around one side of its A partner.
inline FaceConformalData sample_real_center_face(Family fam, int k, Rng& rng) {
  const Family a = fam == Family::B1p ? Family::A1p
                   : fam == Family::B1n ? Family::A1n
                   : fam == Family::B2  ? Family::A2
                                        : fam;
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const FaceConformalData fd = sample_face(a, !is_a_family(fam), rng);
    const std::size_t ui = static_cast<std::size_t>((k + 1) % 3);
    const std::size_t uj = static_cast<std::size_t>((k + 2) % 3);
    const std::size_t uk = static_cast<std::size_t>(k);
    const HexRealization hex =
        realize_cosh(cosh_length(fd.sides[ui]), cosh_length(fd.sides[uj]), cosh_length(fd.sides[uk]));
    const std::array<double, 3> rho = {edge_ratio(fd.sides[ui]), edge_ratio(fd.sides[uj]), edge_ratio(fd.sides[uk])};
    const LorentzVector c = perpendicular_intersection(perpendicular_matrix(hex, rho), 1);
    if (causal_class(c).tag == Causality::TimeLike) return fd;
  }
  throw Error(ErrorCode::NonRealizable, "no face with a time-like center found");
}

}  // namespace hdcs::testing
