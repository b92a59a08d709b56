#pragma once

// Bundled input documents.

#include <array>
#include <string>
#include <vector>

#include "hdcs/error.hpp"
#include "json.hpp"

namespace hdcs {

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {"pants-guo", "pants-mixed-a2b2", "torus-guo"};
  return names;
}

namespace examples_detail {

using nlohmann::ordered_json;

struct EdgeSpec {
  std::array<int, 4> sides;  // face, side, face, side
  const char* family;
  double eta;
  double C;
};

inline ordered_json document(int n, const std::vector<int>& alpha, const std::vector<double>& f,
                             const std::vector<std::array<int, 3>>& faces, const std::vector<EdgeSpec>& edges) {
  ordered_json doc;
  doc["boundary_components"] = n;
  doc["alpha"] = alpha;
  doc["f"] = f;
  doc["faces"] = ordered_json::array();
  for (const auto& c : faces) doc["faces"].push_back({{"corners", c}});
  doc["edges"] = ordered_json::array();
  for (const EdgeSpec& e : edges) {
    ordered_json je;
    je["sides"] = {{e.sides[0], e.sides[1]}, {e.sides[2], e.sides[3]}};
    je["eta"] = e.eta;
    je["C"] = e.C;
    je["family"] = e.family;
    doc["edges"].push_back(je);
  }
  return doc;
}

// Pair of pants: two faces with opposite orientation glued along all three sides.
inline const std::vector<std::array<int, 3>> kPantsFaces = {{0, 1, 2}, {0, 2, 1}};

}  // namespace examples_detail

/// Input document of a bundled example.
inline nlohmann::ordered_json emit_example(const std::string& name) {
  using namespace examples_detail;
  if (name == "pants-guo") {
    return document(3, {0, 0, 0}, {0.0, 0.0, 0.0}, kPantsFaces,
                    {{{0, 0, 1, 2}, "A1p", 4.0, 0.0}, {{0, 1, 1, 1}, "A1p", 4.0, 0.0}, {{0, 2, 1, 0}, "A1p", 4.0, 0.0}});
  }
  if (name == "pants-mixed-a2b2") {
    // C on the sides of face 0 sums to zero; every face sees one A2 and two B2 sides.
    return document(3, {0, 0, 0}, {0.0, 0.5, 2.5}, kPantsFaces,
                    {{{0, 0, 1, 2}, "A2", 2.5, 0.3},
                     {{0, 1, 1, 1}, "B2", -0.05, 0.2},
                     {{0, 2, 1, 0}, "B2", -0.1, -0.5}});
  }
  if (name == "torus-guo") {
    return document(1, {0}, {0.0}, {{0, 0, 0}, {0, 0, 0}},
                    {{{0, 0, 1, 0}, "A1p", 4.0, 0.0}, {{0, 1, 1, 1}, "A1p", 4.0, 0.0}, {{0, 2, 1, 2}, "A1p", 4.0, 0.0}});
  }
  throw Error(ErrorCode::UnknownExample, "no bundled example named '" + name + "'");
}

}  // namespace hdcs
