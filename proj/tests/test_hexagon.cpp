#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstring>

#include "hdcs/hexagon.hpp"
#include "support.hpp"

using namespace hdcs;

namespace {

Eigen::Matrix3d lorentz_gram(const HexRealization& h) {
  Eigen::Matrix3d g;
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s) g(r, s) = minkowski_inner(h.pole(r), h.pole(s));
  return g;
}

// Error relative to |v_r| |v_s|: the size of the terms summed in each pairing.
double max_gram_error(const HexRealization& h) {
  double err = 0;
  const Eigen::Matrix3d g = lorentz_gram(h);
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s)
      err = std::max(err, std::abs(g(r, s) - h.gram[r][s]) /
                              (euclidean_norm(h.pole(r)) * euclidean_norm(h.pole(s))));
  return err;
}

const HexRealization kSymmetric = realize_cosh(3, 3, 3);

}  // namespace

TEST(Realize, Symmetric) {
  EXPECT_LE(max_gram_error(kSymmetric), 1e-15);
  EXPECT_NEAR(lorentz_gram(kSymmetric)(1, 2), -3, 1e-14);
  EXPECT_GT(determinant(kSymmetric.pole(0), kSymmetric.pole(1), kSymmetric.pole(2)), 0);
  EXPECT_NEAR(determinant(kSymmetric.pole(0), kSymmetric.pole(1), kSymmetric.pole(2)), 8.9442719099991587856, 1e-13);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(lorentz_gram(kSymmetric));
  EXPECT_NEAR(eig.eigenvalues()(0), -5, 1e-13);
  EXPECT_NEAR(eig.eigenvalues()(1), 4, 1e-13);
  EXPECT_NEAR(eig.eigenvalues()(2), 4, 1e-13);
  EXPECT_EQ(kSymmetric.pole(0), (LorentzVector{1, 0, 0}));
  EXPECT_EQ(kSymmetric.pole(1).x2, 0.0);
}

TEST(Realize, RandomGram) {
  Rng rng = make_rng(42, "test.realize");
  for (int n = 0; n < 100; ++n) {
    const double a = uniform(rng, 0.1, 5), b = uniform(rng, 0.1, 5), c = uniform(rng, 0.1, 5);
    const HexRealization h = realize(a, b, c);
    EXPECT_LE(max_gram_error(h), 1e-12);
    EXPECT_GT(determinant(h.pole(0), h.pole(1), h.pole(2)), 0);
    // Interior point: the symmetric centroid candidate pairs negatively with every pole.
    const LorentzVector sum = h.pole(0) + h.pole(1) + h.pole(2);
    for (int r = 0; r < 3; ++r) EXPECT_LT(minkowski_inner(sum, h.pole(r)), 0);
  }
}

TEST(Realize, Deterministic) {
  const HexRealization a = realize(0.7, 1.9, 3.1);
  const HexRealization b = realize(0.7, 1.9, 3.1);
  EXPECT_EQ(std::memcmp(&a.poles, &b.poles, sizeof a.poles), 0);
}

TEST(Realize, Errors) {
  EXPECT_THROW(realize_cosh(1.0, 3, 3), Error);
  EXPECT_THROW(realize(0, 1, 1), Error);
  try {
    realize_cosh(3, 1.0 - 1e-3, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonRealizable);
  }
}

TEST(EdgeCenter, Symmetric) {
  const EdgeCenter ec = edge_center(kSymmetric, 0, 1, 1.0);
  EXPECT_EQ(ec.cls.tag, Causality::TimeLike);
  EXPECT_NEAR(minkowski_inner(ec.c, kSymmetric.pole(0)), -1.0, 1e-14);
  EXPECT_NEAR(minkowski_inner(ec.c, kSymmetric.pole(1)), -1.0, 1e-14);
  EXPECT_GT(ec.c.x3, 0);

  const EdgeCenter virt = edge_center(kSymmetric, 0, 1, -1.0);
  EXPECT_EQ(virt.cls.tag, Causality::SpaceLike);
  EXPECT_LT(minkowski_inner(virt.c, kSymmetric.pole(0)), 0);
}

TEST(EdgeCenter, ReproducesRealSplit) {
  Rng rng = make_rng(42, "test.edge_center");
  for (int n = 0; n < 100; ++n) {
    const auto ch = hdcs::testing::sample_cosh_triple(rng);
    const HexRealization h = realize_cosh(ch[0], ch[1], ch[2]);
    const double l = std::acosh(ch[0]);
    const double d = uniform(rng, -0.5, l + 0.5);  // signed distances, possibly negative
    const double rho = std::sinh(l - d) / std::sinh(d);
    if (!std::isfinite(rho) || rho == 0) continue;
    const EdgeCenter ec = edge_center(h, 0, 1, rho);
    ASSERT_EQ(ec.cls.tag, Causality::TimeLike);
    EXPECT_NEAR(-minkowski_inner(ec.c, h.pole(0)), std::sinh(d), 1e-10 * std::cosh(d));
    EXPECT_NEAR(-minkowski_inner(ec.c, h.pole(1)), std::sinh(l - d), 1e-10 * std::cosh(l - d));
  }
}

TEST(EdgeCenter, Errors) { EXPECT_THROW(edge_center(kSymmetric, 0, 1, 0.0), Error); }

TEST(PerpendicularMatrix, Examples) {
  auto rows = perpendicular_matrix(kSymmetric, {1, 1, 1});
  EXPECT_NEAR(determinant(rows[0], rows[1], rows[2]), 0, 1e-13);
  rows = perpendicular_matrix(kSymmetric, {1.1, 1, 1});
  EXPECT_NEAR(determinant(rows[0], rows[1], rows[2]), -0.89442719099991587856, 1e-13);
}

TEST(PerpendicularMatrix, DeterminantFactorization) {
  Rng rng = make_rng(42, "test.detm");
  for (int n = 0; n < 100; ++n) {
    const auto ch = hdcs::testing::sample_cosh_triple(rng);
    const HexRealization h = realize_cosh(ch[0], ch[1], ch[2]);
    const std::array<double, 3> rho = {uniform(rng, 0.2, 3), -uniform(rng, 0.2, 3), uniform(rng, -3, 3)};
    const auto rows = perpendicular_matrix(h, rho);
    const double dv = determinant(h.pole(0), h.pole(1), h.pole(2));
    EXPECT_NEAR(determinant(rows[0], rows[1], rows[2]), -compatibility_residual(rho) * dv,
                1e-12 * row_norm_product(rows));
  }
}

TEST(Compatibility, Examples) {
  EXPECT_EQ(compatibility_residual({1, 1, 1}), 0.0);
  EXPECT_NEAR(compatibility_residual({std::exp(1.0), 2 * std::exp(-1.0), 0.5}), 0.0, 1e-15);
  EXPECT_EQ(compatibility_residual({-1, -1, -1}), -2.0);
}

TEST(FaceCenter, Symmetric) {
  const CenterReport c = face_center(kSymmetric, {1, 1, 1});
  EXPECT_EQ(c.face_class.tag, Causality::TimeLike);
  const double p0 = minkowski_inner(c.face_center, kSymmetric.pole(0));
  EXPECT_LT(p0, 0);
  EXPECT_NEAR(minkowski_inner(c.face_center, kSymmetric.pole(1)), p0, 1e-13);
  EXPECT_NEAR(minkowski_inner(c.face_center, kSymmetric.pole(2)), p0, 1e-13);
  EXPECT_LE(c.perpendicular_residual, 1e-9);
}

TEST(FaceCenter, Incompatible) {
  try {
    face_center(kSymmetric, {1.1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatibleSplits);
  }
}

class FaceDraws : public ::testing::TestWithParam<std::pair<Family, bool>> {};

TEST_P(FaceDraws, CenterProperties) {
  const auto [fam, mixed] = GetParam();
  Rng rng = make_rng(42, std::string("test.face.") + std::string(to_string(fam)) + (mixed ? "m" : ""));
  for (int n = 0; n < 100; ++n) {
    const FaceConformalData fd = sample_face(fam, mixed, rng);
    const auto ch = face_cosh_lengths(fd);
    const auto rho = face_ratios(fd);
    const HexRealization h = realize_cosh(ch[0], ch[1], ch[2]);
    const CenterReport c = face_center(h, rho, 1e-10);
    EXPECT_LE(std::abs(c.det_m), 1e-10 * c.det_m_scale);
    EXPECT_LE(c.orthogonality_residual, 1e-9);
    EXPECT_LE(c.perpendicular_residual, 1e-9);

    // Kernel cross-check by SVD of the row matrix with the metric applied.
    const auto rows = perpendicular_matrix(h, rho);
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) m.row(r) << rows[r].x1, rows[r].x2, -rows[r].x3;
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
    const Eigen::Vector3d k = svd.matrixV().col(2);
    const LorentzVector cu = c.face_center / euclidean_norm(c.face_center);
    EXPECT_NEAR(std::abs(k(0) * cu.x1 + k(1) * cu.x2 + k(2) * cu.x3), 1.0, 1e-8);

    // Right angle at real edge centers.
    if (c.face_class.tag == Causality::TimeLike) {
      for (int s = 0; s < 3; ++s) {
        const EdgeCenter& ec = c.edge_centers[s];
        if (ec.cls.tag != Causality::TimeLike) continue;
        const double lhs = -minkowski_inner(h.pole(s), c.face_center);
        const double rhs = minkowski_inner(h.pole(s), ec.c) * minkowski_inner(ec.c, c.face_center);
        EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, FaceDraws,
                         ::testing::Values(std::make_pair(Family::A1p, false), std::make_pair(Family::A1n, false),
                                           std::make_pair(Family::A2, false), std::make_pair(Family::A1p, true),
                                           std::make_pair(Family::A1n, true), std::make_pair(Family::A2, true)),
                         [](const auto& info) {
                           return std::string(to_string(info.param.first)) + (info.param.second ? "_mixed" : "");
                         });

TEST(BoundaryArcs, Examples) {
  for (double a : boundary_arcs(kSymmetric)) EXPECT_NEAR(a, 0.962423650119206895, 1e-14);
  const auto iso = boundary_arcs(realize(1.2, 0.7, 1.2));  // l_ij = l_ki
  EXPECT_NEAR(iso[1], iso[2], 1e-13);
  double prev = 0;
  for (double l = 0.2; l < 6; l += 0.4) {
    const double a = boundary_arcs(realize(1.0, l, 1.5))[0];
    EXPECT_GT(a, prev);
    prev = a;
  }
}
