#include <gtest/gtest.h>

#include "hdcs/svg.hpp"
#include "support.hpp"

using namespace hdcs;

namespace {

std::string render(const std::string& example, std::size_t face) {
  const MetricReport r = compute_metric(hdcs::testing::example_surface(example));
  return render_face(*r.faces[face].hex, *r.faces[face].centers);
}

}  // namespace

TEST(Svg, SymmetricCenterAtOrigin) {
  const std::string svg = render("pants-guo", 0);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("class=\"face-center time-like\" cx=\"500.000000\" cy=\"500.000000\""), std::string::npos) << svg;
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n') > 10, true);
  size_t polar = 0;
  for (size_t p = svg.find("class=\"polar\""); p != std::string::npos; p = svg.find("class=\"polar\"", p + 1)) ++polar;
  EXPECT_EQ(polar, 3u);
}

TEST(Svg, SpaceLikeMarker) {
  const std::string svg = render("pants-mixed-a2b2", 0);
  EXPECT_NE(svg.find("<rect class=\"face-center space-like\""), std::string::npos) << svg;
}

TEST(Svg, Deterministic) { EXPECT_EQ(render("pants-mixed-a2b2", 1), render("pants-mixed-a2b2", 1)); }
