#include <gtest/gtest.h>

#include <cmath>

#include "hdcs/verify.hpp"
#include "support.hpp"

using namespace hdcs;
using hdcs::testing::example_surface;

TEST(FdPartial, Examples) {
  const CheckReport guo = fd_partial_check(EdgeParams{Family::A1p, 0, 0, 0, 0, 4, 0}, 1e-5);
  EXPECT_TRUE(guo.pass);
  EXPECT_NEAR(guo.metrics.at("coth_d"), 1.4142135623730950488, 1e-15);
  EXPECT_LE(guo.residuals[0], 1e-9);
  // Matches the high-precision central difference at the same step (stencil rounding ~1e-14).
  EXPECT_NEAR(guo.metrics.at("coth_d") + guo.residuals[0], 1.4142135624025578314, 1e-13);

  const CheckReport a2 = fd_partial_check(EdgeParams{Family::A2, 0, 0, 0, 1, 2, 0}, 1e-5);
  EXPECT_TRUE(a2.pass);
  EXPECT_LE(a2.residuals[0], 1e-8);
  EXPECT_NEAR(a2.metrics.at("coth_d"), 1.7571056984545332537, 1e-14);
  EXPECT_NEAR(a2.metrics.at("contraction"), 4.0, 0.5);
}

TEST(FdPartial, DegenerateStencil) {
  EXPECT_THROW(fd_partial_check(EdgeParams{Family::A1p, 0, 0, 0, 0, 2.0 + 1e-7, 0}, 1e-5), Error);
}

class FdFamilies : public ::testing::TestWithParam<Family> {};

TEST_P(FdFamilies, HundredDrawsBothEnds) {
  const Family fam = GetParam();
  Rng rng = make_rng(42, "test.fd." + std::string(to_string(fam)));
  for (int n = 0; n < 100; ++n) {
    const EdgeParams p = sample_edge(fam, rng);
    for (const EdgeParams& q : {p, p.reversed()}) {
      const CheckReport r = fd_partial_check(q, 1e-5);
      EXPECT_TRUE(r.pass) << r.max_residual << " contraction " << r.metrics.at("contraction");
    }
  }
}

TEST_P(FdFamilies, HField) {
  const Family fam = GetParam();
  Rng rng = make_rng(42, "test.h." + std::string(to_string(fam)));
  for (int n = 0; n < 100; ++n) {
    const EdgeParams p = sample_edge(fam, rng);
    bool near_pole = false;
    if (uses_alpha(fam)) {
      for (double pr : {1 + p.alpha_i * std::exp(2 * p.f_i), 1 + p.alpha_j * std::exp(2 * p.f_j)})
        near_pole = near_pole || std::abs(pr) < 1e-3;
    }
    if (near_pole) continue;
    for (const CheckReport& r : h_field_check(p)) EXPECT_TRUE(r.pass) << r.name << " " << r.max_residual;
  }
}

INSTANTIATE_TEST_SUITE_P(All, FdFamilies, ::testing::ValuesIn(kAllFamilies),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(HField, Examples) {
  EXPECT_NEAR(h_field(EdgeParams{Family::A2, 0, 0, 1, 0, 1, 0}), 2.0, 1e-15);
  const EdgeParams a1{Family::A1p, 1, 1, 0, 0, 4, 0};
  EXPECT_EQ(h_field(a1), 0.0);
  EXPECT_EQ(h_field_gradient_i(a1), 1.0);
  try {
    h_field_check(EdgeParams{Family::A1p, -1, 1, 1e-10, 0, 4, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleAtZero);
  }
}

TEST(Locality, Examples) {
  const CheckReport pants = locality_check(example_surface("pants-guo"));
  EXPECT_TRUE(pants.pass);
  EXPECT_EQ(pants.metrics.at("compared_edges"), 3.0);
  const CheckReport torus = locality_check(example_surface("torus-guo"));
  EXPECT_TRUE(torus.pass);
  EXPECT_EQ(torus.metrics.at("compared_edges"), 0.0);
}

TEST(Locality, FourComponents) {
  // Tetrahedral sphere: four boundary components, four faces, six edges.
  nlohmann::json doc;
  doc["boundary_components"] = 4;
  doc["alpha"] = {1, 1, 1, 1};
  doc["f"] = {0.1, -0.3, 0.4, 0.2};
  doc["faces"] = {{{"corners", {0, 1, 2}}}, {{"corners", {0, 3, 1}}}, {{"corners", {1, 3, 2}}}, {{"corners", {0, 2, 3}}}};
  // Sides: f0 (0,1)(1,2)(2,0); f1 (0,3)(3,1)(1,0); f2 (1,3)(3,2)(2,1); f3 (0,2)(2,3)(3,0).
  const int pairs[6][4] = {{0, 0, 1, 2}, {0, 1, 2, 2}, {0, 2, 3, 0}, {1, 0, 3, 2}, {1, 1, 2, 0}, {2, 1, 3, 1}};
  doc["edges"] = nlohmann::json::array();
  for (const auto& p : pairs)
    doc["edges"].push_back({{"sides", {{p[0], p[1]}, {p[2], p[3]}}}, {"eta", 5.0}, {"family", "A1p"}});
  const Surface s = parse_surface(doc);
  EXPECT_EQ(s.tri.euler_characteristic(), 2);
  const CheckReport r = locality_check(s);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.metrics.at("compared_edges"), 12.0);
}

TEST(ConformalVariation, SymmetricGuo) {
  const FaceConformalData fd = face_data(example_surface("pants-guo"), 0);
  for (int k = 0; k < 3; ++k) {
    ConformalVariationOptions opts;
    opts.tol = 1e-8;
    EXPECT_TRUE(conformal_variation_check(fd, k, opts).pass);
  }
}

class ConformalFamilies : public ::testing::TestWithParam<Family> {};

TEST_P(ConformalFamilies, ValidPassCorruptedFail) {
  const Family fam = GetParam();
  Rng rng = make_rng(42, "test.cv." + std::string(to_string(fam)));
  for (int n = 0; n < 30; ++n) {
    const int k = n % 3;
    const FaceConformalData fd = hdcs::testing::sample_real_center_face(fam, k, rng);
    const CheckReport ok = conformal_variation_check(fd, k);
    EXPECT_TRUE(ok.pass) << ok.max_residual;
    EXPECT_EQ(ok.metrics.at("time_like_center"), 1.0);
    for (const double factor : {1.1, 0.9}) {
      ConformalVariationOptions bad;
      bad.ratio_perturbation = factor;
      const CheckReport r = conformal_variation_check(fd, k, bad);
      EXPECT_FALSE(r.pass);
      EXPECT_GE(r.max_residual, 1e-3);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, ConformalFamilies, ::testing::ValuesIn(kAllFamilies),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(ConformalVariation, VirtualCenterFallback) {
  Rng rng = make_rng(42, "test.cv.virtual");
  int seen = 0;
  for (int n = 0; n < 200 && seen < 20; ++n) {
    const FaceConformalData fd = sample_face(Family::A2, true, rng);
    const CheckReport r = conformal_variation_check(fd, 0);
    if (r.metrics.at("time_like_center") != 0.0) continue;
    ++seen;
    EXPECT_TRUE(r.pass) << r.max_residual;
  }
  EXPECT_GT(seen, 0);
}

TEST(ConformalVariation, Incompatible) {
  FaceConformalData fd = face_data(example_surface("pants-mixed-a2b2"), 0);
  fd.sides[0].C += 0.5;
  EXPECT_THROW(conformal_variation_check(fd, 0), Error);
}

TEST(Suite, ExamplesPass) {
  for (const std::string& name : example_names()) {
    for (const CheckReport& r : verify_surface(example_surface(name))) EXPECT_TRUE(r.pass) << name << " " << r.name;
  }
}

TEST(Suite, StreamsDependOnName) {
  EXPECT_NE(stream_seed(42, "a"), stream_seed(42, "b"));
  EXPECT_NE(stream_seed(42, "a"), stream_seed(43, "a"));
  EXPECT_EQ(stream_seed(42, "a"), stream_seed(42, "a"));
}
