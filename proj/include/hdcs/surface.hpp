#pragma once

// Ideally triangulated surfaces with boundary: the combinatorial
// triangulation, its conformal data, JSON (de)serialization, the global
// metric computation, the family coexistence audit and the C-normalization.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hdcs/dcs.hpp"
#include "hdcs/error.hpp"
#include "hdcs/hexagon.hpp"
#include "hdcs/trig.hpp"
#include "json.hpp"

namespace hdcs {

struct SideRef {
  std::size_t face = 0;
  int side = 0;

  friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

struct Face {
  /// Boundary component at each corner; repeats are allowed.
  std::array<std::size_t, 3> corners{};
};

/// A face side pairing. sides[0] is the earlier side and fixes the edge orientation.
struct Edge {
  std::array<SideRef, 2> sides{};
};

struct IdealTriangulation {
  std::size_t n_boundary = 0;
  std::vector<Face> faces;
  std::vector<Edge> edges;
  /// side_edge[face][side] is the edge glued along that side.
  std::vector<std::array<std::size_t, 3>> side_edge;

  /// Oriented boundary labels (tail, head) of a face side: corners (s, s+1).
  std::pair<std::size_t, std::size_t> side_labels(const SideRef& ref) const {
    const Face& f = faces[ref.face];
    return {f.corners[static_cast<std::size_t>(ref.side)],
            f.corners[static_cast<std::size_t>((ref.side + 1) % 3)]};
  }
  std::pair<std::size_t, std::size_t> edge_labels(std::size_t e) const { return side_labels(edges[e].sides[0]); }

  /// True when the side runs along its edge's stored orientation.
  bool side_is_forward(std::size_t face, int side) const {
    const Edge& e = edges[side_edge[face][static_cast<std::size_t>(side)]];
    return e.sides[0].face == face && e.sides[0].side == side;
  }

  /// Euler characteristic of the coned surface, N - |E| + |F|.
  long euler_characteristic() const {
    return static_cast<long>(n_boundary) - static_cast<long>(edges.size()) + static_cast<long>(faces.size());
  }
  long genus() const { return (2 - euler_characteristic()) / 2; }
};

struct EdgeData {
  Family family = Family::A1p;
  double eta = 0.0;
  /// C for the edge's stored orientation; the reverse orientation carries -C.
  double C = 0.0;
};

struct SurfaceConformalData {
  /// Real in general; the file format and the normalized form use {-1, 0, 1}.
  std::vector<double> alpha;
  std::vector<double> f;
  std::vector<EdgeData> edges;
};

struct Surface {
  IdealTriangulation tri;
  SurfaceConformalData data;
};

/// Edge parameters in the edge's stored orientation.
inline EdgeParams edge_params(const IdealTriangulation& tri, const SurfaceConformalData& data, std::size_t e) {
  const auto [i, j] = tri.edge_labels(e);
  const EdgeData& ed = data.edges[e];
  return {ed.family, data.alpha[i], data.alpha[j], data.f[i], data.f[j], ed.eta, ed.C};
}

inline EdgeParams edge_params(const Surface& s, std::size_t e) { return edge_params(s.tri, s.data, e); }

/// Edge parameters oriented along a face side (corner s -> corner s+1).
inline EdgeParams side_params(const Surface& s, std::size_t face, int side) {
  const EdgeParams p = edge_params(s, s.tri.side_edge[face][static_cast<std::size_t>(side)]);
  return s.tri.side_is_forward(face, side) ? p : p.reversed();
}

/// Face-local conformal data: sides[s] is oriented corner s -> corner s+1.
struct FaceConformalData {
  std::array<EdgeParams, 3> sides;
};

inline FaceConformalData face_data(const Surface& s, std::size_t face) {
  return {{side_params(s, face, 0), side_params(s, face, 1), side_params(s, face, 2)}};
}

inline std::array<double, 3> face_cosh_lengths(const FaceConformalData& fd) {
  return {cosh_length(fd.sides[0]), cosh_length(fd.sides[1]), cosh_length(fd.sides[2])};
}

inline std::array<double, 3> face_ratios(const FaceConformalData& fd) {
  return {edge_ratio(fd.sides[0]), edge_ratio(fd.sides[1]), edge_ratio(fd.sides[2])};
}

// ---------------------------------------------------------------------------
// Family audit.

struct FamilyAudit {
  bool ok = true;
  std::vector<std::string> violations;
};

inline bool allowed_family_set(const std::set<Family>& present) {
  if (present.size() == 1) return is_a_family(*present.begin());
  if (present.size() != 2) return false;
  const Family a = *present.begin();
  const Family b = *std::next(present.begin());
  return is_a_family(a) && !is_a_family(b) && partner_a(b) == a;
}

inline FamilyAudit audit_families(const IdealTriangulation& tri, const SurfaceConformalData& data) {
  FamilyAudit audit;
  std::set<Family> present;
  for (const EdgeData& e : data.edges) present.insert(e.family);
  if (!present.empty() && !allowed_family_set(present)) {
    std::string names;
    for (Family f : present) names += (names.empty() ? "" : ",") + std::string(to_string(f));
    std::string rule;
    const bool has_b = std::any_of(present.begin(), present.end(), [](Family f) { return !is_a_family(f); });
    const bool has_a = std::any_of(present.begin(), present.end(), is_a_family);
    if (!has_a) {
      rule = "B families without their A partner";
    } else if (!has_b) {
      rule = "distinct A families on one surface";
    } else {
      rule = "mixes allowed only as A1p-B1p, A1n-B1n, A2-B2";
    }
    audit.violations.push_back("surface families {" + names + "}: " + rule);
  }
  for (std::size_t fi = 0; fi < tri.faces.size(); ++fi) {
    std::array<Family, 3> fam{};
    for (int s = 0; s < 3; ++s) {
      fam[static_cast<std::size_t>(s)] = data.edges[tri.side_edge[fi][static_cast<std::size_t>(s)]].family;
    }
    const FaceFamilyReport r = validate_face_families(fam);
    if (!r.ok) audit.violations.push_back("face " + std::to_string(fi) + ": " + r.rule);
  }
  audit.ok = audit.violations.empty();
  return audit;
}

// ---------------------------------------------------------------------------
// Parsing and validation.

struct ParseOptions {
  bool check_families = true;
  bool check_cocycle = true;
};

inline constexpr double kCocycleTolerance = 1e-12;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(ErrorCode::MalformedDocument, what); }

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) malformed(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

inline double require_number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) malformed(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) malformed(where + ": non-finite number");
  return x;
}

inline long require_integer(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer()) malformed(where + ": expected an integer");
  return v.get<long>();
}

inline std::string side_name(const SideRef& s) {
  return "[" + std::to_string(s.face) + "," + std::to_string(s.side) + "]";
}

/// Oriented C of a face side.
inline double side_C(const Surface& s, std::size_t face, int side) {
  const double c = s.data.edges[s.tri.side_edge[face][static_cast<std::size_t>(side)]].C;
  return s.tri.side_is_forward(face, side) ? c : -c;
}

}  // namespace detail

/// Validates structure: pairing, labels, connectivity; and optionally families and C cocycles.
inline void validate_surface(const Surface& s, const ParseOptions& opts = {}) {
  const IdealTriangulation& tri = s.tri;
  if (tri.faces.empty()) detail::malformed("no faces");
  std::vector<bool> seen(tri.n_boundary, false);
  for (const Face& f : tri.faces) {
    for (std::size_t c : f.corners) seen[c] = true;
  }
  for (std::size_t r = 0; r < tri.n_boundary; ++r) {
    if (!seen[r]) detail::malformed("boundary component " + std::to_string(r) + " has no corner");
  }

  // Connectivity of the side-adjacency graph of faces.
  std::vector<bool> reached(tri.faces.size(), false);
  std::queue<std::size_t> todo;
  todo.push(0);
  reached[0] = true;
  while (!todo.empty()) {
    const std::size_t f = todo.front();
    todo.pop();
    for (std::size_t e : tri.side_edge[f]) {
      for (const SideRef& side : tri.edges[e].sides) {
        if (!reached[side.face]) {
          reached[side.face] = true;
          todo.push(side.face);
        }
      }
    }
  }
  for (std::size_t f = 0; f < reached.size(); ++f) {
    if (!reached[f]) throw Error(ErrorCode::DisconnectedSurface, "face " + std::to_string(f) + " is not reachable from face 0");
  }

  if (opts.check_families) {
    const FamilyAudit audit = audit_families(tri, s.data);
    if (!audit.ok) throw Error(ErrorCode::BadFamilyCombination, audit.violations.front());
  }
  if (opts.check_cocycle) {
    for (std::size_t f = 0; f < tri.faces.size(); ++f) {
      bool twisted = false;
      double sum = 0.0;
      double mag = 1.0;
      for (int side = 0; side < 3; ++side) {
        const Family fam = s.data.edges[tri.side_edge[f][static_cast<std::size_t>(side)]].family;
        twisted = twisted || !uses_alpha(fam);
        const double c = detail::side_C(s, f, side);
        sum += c;
        mag = std::max(mag, std::abs(c));
      }
      if (twisted && std::abs(sum) > kCocycleTolerance * mag) {
        throw Error(ErrorCode::BrokenCocycle,
                    "face " + std::to_string(f) + ": C_ij + C_jk + C_ki = " + std::to_string(sum));
      }
    }
  }
}

/// Parses the JSON surface document.
///
/// Each edge lists two [face, side] pairs; "C" is given for the orientation of
/// the first listed side. Edges are re-indexed by their earliest side.
inline Surface parse_surface(const nlohmann::json& doc, const ParseOptions& opts = {}) {
  using nlohmann::json;
  if (!doc.is_object()) detail::malformed("document is not a JSON object");
  Surface s;
  const long n = detail::require_integer(detail::require(doc, "boundary_components", "document"), "boundary_components");
  if (n < 1) detail::malformed("boundary_components must be positive");
  s.tri.n_boundary = static_cast<std::size_t>(n);

  const json& alpha = detail::require(doc, "alpha", "document");
  const json& f = detail::require(doc, "f", "document");
  if (!alpha.is_array() || alpha.size() != s.tri.n_boundary) detail::malformed("alpha must list one entry per boundary component");
  if (!f.is_array() || f.size() != s.tri.n_boundary) detail::malformed("f must list one entry per boundary component");
  for (std::size_t r = 0; r < s.tri.n_boundary; ++r) {
    const long a = detail::require_integer(alpha[r], "alpha[" + std::to_string(r) + "]");
    if (a < -1 || a > 1) detail::malformed("alpha[" + std::to_string(r) + "] must be -1, 0 or 1");
    s.data.alpha.push_back(static_cast<double>(a));
    s.data.f.push_back(detail::require_number(f[r], "f[" + std::to_string(r) + "]"));
  }

  const json& faces = detail::require(doc, "faces", "document");
  if (!faces.is_array() || faces.empty()) detail::malformed("faces must be a non-empty array");
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const std::string where = "faces[" + std::to_string(fi) + "]";
    const json& corners = detail::require(faces[fi], "corners", where);
    if (!corners.is_array() || corners.size() != 3) detail::malformed(where + ": corners must have 3 entries");
    Face face;
    for (std::size_t c = 0; c < 3; ++c) {
      const long b = detail::require_integer(corners[c], where + ".corners");
      if (b < 0 || b >= n) detail::malformed(where + ": corner label out of range");
      face.corners[c] = static_cast<std::size_t>(b);
    }
    s.tri.faces.push_back(face);
  }
  const std::size_t n_faces = s.tri.faces.size();

  const json& edges = detail::require(doc, "edges", "document");
  if (!edges.is_array()) detail::malformed("edges must be an array");

  struct RawEdge {
    Edge edge;
    EdgeData data;
  };
  std::vector<RawEdge> raw;
  std::map<SideRef, std::size_t> owner;
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const std::string where = "edges[" + std::to_string(ei) + "]";
    const json& e = edges[ei];
    const json& sides = detail::require(e, "sides", where);
    if (!sides.is_array() || sides.size() != 2) detail::malformed(where + ": sides must list two [face, side] pairs");
    RawEdge re;
    for (std::size_t k = 0; k < 2; ++k) {
      const json& pair = sides[k];
      if (!pair.is_array() || pair.size() != 2) detail::malformed(where + ": each side is a [face, side] pair");
      const long face = detail::require_integer(pair[0], where + ".sides");
      const long side = detail::require_integer(pair[1], where + ".sides");
      if (face < 0 || static_cast<std::size_t>(face) >= n_faces || side < 0 || side > 2) {
        detail::malformed(where + ": side reference out of range");
      }
      const SideRef ref{static_cast<std::size_t>(face), static_cast<int>(side)};
      if (owner.contains(ref)) {
        throw Error(ErrorCode::UnpairedSide, "side " + detail::side_name(ref) + " is paired more than once (" + where + ")");
      }
      owner[ref] = ei;
      re.edge.sides[k] = ref;
    }
    const std::string family = detail::require(e, "family", where).is_string()
                                   ? detail::require(e, "family", where).get<std::string>()
                                   : std::string{};
    const auto fam = parse_family(family);
    if (!fam) detail::malformed(where + ": unknown family \"" + family + "\"");
    re.data.family = *fam;
    re.data.eta = detail::require_number(detail::require(e, "eta", where), where + ".eta");
    re.data.C = e.contains("C") ? detail::require_number(e.at("C"), where + ".C") : 0.0;
    if (re.edge.sides[1] < re.edge.sides[0]) {
      std::swap(re.edge.sides[0], re.edge.sides[1]);
      re.data.C = -re.data.C;
    }
    raw.push_back(re);
  }
  for (std::size_t fi = 0; fi < n_faces; ++fi) {
    for (int side = 0; side < 3; ++side) {
      if (!owner.contains(SideRef{fi, side})) {
        throw Error(ErrorCode::UnpairedSide, "side " + detail::side_name(SideRef{fi, side}) + " is not paired");
      }
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) { return a.edge.sides[0] < b.edge.sides[0]; });

  s.tri.side_edge.assign(n_faces, {0, 0, 0});
  for (std::size_t e = 0; e < raw.size(); ++e) {
    s.tri.edges.push_back(raw[e].edge);
    s.data.edges.push_back(raw[e].data);
    for (const SideRef& ref : raw[e].edge.sides) s.tri.side_edge[ref.face][static_cast<std::size_t>(ref.side)] = e;
  }
  // Opposite-side gluing: the second side runs the reverse way.
  for (std::size_t e = 0; e < s.tri.edges.size(); ++e) {
    const auto [a, b] = s.tri.side_labels(s.tri.edges[e].sides[0]);
    const auto [c, d] = s.tri.side_labels(s.tri.edges[e].sides[1]);
    if (a != d || b != c) {
      detail::malformed("edge " + std::to_string(e) + " glues side " + detail::side_name(s.tri.edges[e].sides[0]) +
                        " to side " + detail::side_name(s.tri.edges[e].sides[1]) + " with mismatched boundary labels");
    }
  }
  validate_surface(s, opts);
  return s;
}

inline Surface parse_surface(const nlohmann::ordered_json& doc, const ParseOptions& opts = {}) {
  return parse_surface(nlohmann::json::parse(doc.dump()), opts);
}

inline Surface parse_surface(const std::string& text, const ParseOptions& opts = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("invalid JSON: ") + e.what());
  }
  return parse_surface(doc, opts);
}

/// Serializes to the input format; parse_surface(to_json(s)) reproduces s.
inline nlohmann::ordered_json to_json(const Surface& s) {
  nlohmann::ordered_json doc;
  doc["boundary_components"] = s.tri.n_boundary;
  nlohmann::ordered_json alpha = nlohmann::ordered_json::array();
  for (double a : s.data.alpha) alpha.push_back(static_cast<int>(a));
  doc["alpha"] = alpha;
  doc["f"] = s.data.f;
  nlohmann::ordered_json faces = nlohmann::ordered_json::array();
  for (const Face& f : s.tri.faces) faces.push_back({{"corners", f.corners}});
  doc["faces"] = faces;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < s.tri.edges.size(); ++e) {
    const Edge& edge = s.tri.edges[e];
    const EdgeData& d = s.data.edges[e];
    nlohmann::ordered_json sides = nlohmann::ordered_json::array();
    for (const SideRef& ref : edge.sides) sides.push_back({ref.face, ref.side});
    edges.push_back({{"sides", sides}, {"eta", d.eta}, {"C", d.C}, {"family", std::string(to_string(d.family))}});
  }
  doc["edges"] = edges;
  return doc;
}

// ---------------------------------------------------------------------------
// Metric computation.

struct EdgeReport {
  std::size_t tail = 0;
  std::size_t head = 0;
  Family family = Family::A1p;
  double cosh_l = 0.0;
  bool degenerate = false;
  std::optional<EdgeSplit> split;
  std::string error;
};

struct FaceReport {
  std::array<std::size_t, 3> corners{};
  /// Side-oriented split ratios rho_{s, s+1}.
  std::array<double, 3> rho{};
  double compat_residual = 0.0;
  bool compatible = false;
  bool realized = false;
  std::optional<HexRealization> hex;
  std::optional<CenterReport> centers;
  /// Boundary arc at each corner.
  std::array<double, 3> arcs{};
  std::string error;
};

struct MetricReport {
  std::vector<EdgeReport> edges;
  std::vector<FaceReport> faces;
  std::vector<double> boundary_lengths;
  double total_boundary_length = 0.0;
  double tol_compat = kCompatTolerance;
  bool valid = true;
  std::vector<std::string> diagnostics;
};

inline MetricReport compute_metric(const Surface& s, double tol_compat = kCompatTolerance) {
  MetricReport report;
  report.tol_compat = tol_compat;
  const IdealTriangulation& tri = s.tri;

  for (std::size_t e = 0; e < tri.edges.size(); ++e) {
    EdgeReport er;
    std::tie(er.tail, er.head) = tri.edge_labels(e);
    er.family = s.data.edges[e].family;
    try {
      const EdgeParams p = edge_params(s, e);
      er.cosh_l = cosh_length(p);
      er.degenerate = is_degenerate_length(er.cosh_l);
      if (er.degenerate) {
        er.error = "DegenerateEdge: cosh l = " + std::to_string(er.cosh_l);
      } else {
        er.split = split_edge(er.cosh_l, edge_ratio(p));
      }
    } catch (const Error& ex) {
      er.degenerate = true;
      er.error = ex.what();
    }
    if (!er.error.empty()) report.diagnostics.push_back("edge " + std::to_string(e) + ": " + er.error);
    report.edges.push_back(std::move(er));
  }

  report.boundary_lengths.assign(tri.n_boundary, 0.0);
  for (std::size_t fi = 0; fi < tri.faces.size(); ++fi) {
    FaceReport fr;
    fr.corners = tri.faces[fi].corners;
    std::array<double, 3> cosh_l{};
    bool usable = true;
    for (int side = 0; side < 3; ++side) {
      const std::size_t e = tri.side_edge[fi][static_cast<std::size_t>(side)];
      const EdgeReport& er = report.edges[e];
      if (!er.split) {
        usable = false;
        fr.error = "DegenerateEdge on edge " + std::to_string(e);
        break;
      }
      cosh_l[static_cast<std::size_t>(side)] = er.cosh_l;
      fr.rho[static_cast<std::size_t>(side)] = tri.side_is_forward(fi, side) ? er.split->rho : 1.0 / er.split->rho;
    }
    if (usable) {
      fr.compat_residual = compatibility_residual(fr.rho);
      fr.compatible = std::abs(fr.compat_residual) <= tol_compat;
      try {
        fr.hex = realize_cosh(cosh_l[0], cosh_l[1], cosh_l[2]);
        fr.realized = true;
        fr.arcs = boundary_arcs(*fr.hex);
        if (fr.compatible) {
          fr.centers = face_center(*fr.hex, fr.rho, tol_compat);
        } else {
          fr.error = "IncompatibleSplits: residual " + std::to_string(fr.compat_residual);
        }
      } catch (const Error& ex) {
        fr.error = ex.what();
      }
    }
    if (!fr.error.empty()) report.diagnostics.push_back("face " + std::to_string(fi) + ": " + fr.error);
    report.faces.push_back(std::move(fr));
  }

  // Ordered reduction: faces in index order, corners in order.
  for (const FaceReport& fr : report.faces) {
    if (!fr.realized) continue;
    for (std::size_t r = 0; r < 3; ++r) report.boundary_lengths[fr.corners[r]] += fr.arcs[r];
  }
  for (double len : report.boundary_lengths) report.total_boundary_length += len;
  report.valid = report.diagnostics.empty();
  return report;
}

namespace detail {

inline nlohmann::ordered_json vec_json(const LorentzVector& v) { return nlohmann::ordered_json::array({v.x1, v.x2, v.x3}); }

inline std::string class_name(const CausalClass& c) { return std::string(to_string(c.tag)); }

}  // namespace detail

inline nlohmann::ordered_json split_json(const EdgeSplit& sp) {
  nlohmann::ordered_json j;
  j["cosh_l"] = sp.cosh_l;
  j["l"] = sp.l;
  j["rho"] = sp.rho;
  j["t_ij"] = sp.t_ij;
  j["t_ji"] = sp.t_ji;
  j["real_split"] = sp.real_split;
  j["d_ij"] = sp.d_ij ? nlohmann::ordered_json(*sp.d_ij) : nlohmann::ordered_json(nullptr);
  j["d_ji"] = sp.d_ji ? nlohmann::ordered_json(*sp.d_ji) : nlohmann::ordered_json(nullptr);
  return j;
}

inline nlohmann::ordered_json centers_json(const CenterReport& c) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json edge_centers = nlohmann::ordered_json::array();
  for (const EdgeCenter& ec : c.edge_centers) {
    edge_centers.push_back({{"c", detail::vec_json(ec.c)}, {"class", detail::class_name(ec.cls)}});
  }
  j["edge_centers"] = edge_centers;
  j["face_center"] = detail::vec_json(c.face_center);
  j["face_class"] = detail::class_name(c.face_class);
  j["det_M"] = c.det_m;
  j["det_M_scale"] = c.det_m_scale;
  j["compat_residual"] = c.compat_residual;
  j["orthogonality_residual"] = c.orthogonality_residual;
  j["perpendicular_residual"] = c.perpendicular_residual;
  return j;
}

inline nlohmann::ordered_json face_json(const FaceReport& fr) {
  nlohmann::ordered_json j;
  j["corners"] = fr.corners;
  j["rho"] = fr.rho;
  j["compat_residual"] = fr.compat_residual;
  j["compatible"] = fr.compatible;
  j["realized"] = fr.realized;
  if (fr.hex) {
    j["poles"] = nlohmann::ordered_json::array(
        {detail::vec_json(fr.hex->poles[0]), detail::vec_json(fr.hex->poles[1]), detail::vec_json(fr.hex->poles[2])});
  }
  j["arcs"] = fr.arcs;
  j["centers"] = fr.centers ? centers_json(*fr.centers) : nlohmann::ordered_json(nullptr);
  if (!fr.error.empty()) j["error"] = fr.error;
  return j;
}

inline nlohmann::ordered_json to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["valid"] = r.valid;
  j["tol_compat"] = r.tol_compat;
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    const EdgeReport& er = r.edges[e];
    nlohmann::ordered_json je;
    je["edge"] = e;
    je["tail"] = er.tail;
    je["head"] = er.head;
    je["family"] = std::string(to_string(er.family));
    je["cosh_l"] = er.cosh_l;
    je["degenerate"] = er.degenerate;
    je["split"] = er.split ? split_json(*er.split) : nlohmann::ordered_json(nullptr);
    if (!er.error.empty()) je["error"] = er.error;
    edges.push_back(je);
  }
  j["edges"] = edges;
  nlohmann::ordered_json faces = nlohmann::ordered_json::array();
  for (const FaceReport& fr : r.faces) faces.push_back(face_json(fr));
  j["faces"] = faces;
  j["boundary_lengths"] = r.boundary_lengths;
  j["total_boundary_length"] = r.total_boundary_length;
  j["diagnostics"] = r.diagnostics;
  return j;
}

// ---------------------------------------------------------------------------
// Reparameterizations.

/// Surface-wide alpha normalization: alpha -> sign(alpha), f -> g, eta -> eta~.
inline SurfaceConformalData normalize_alpha(const Surface& s) {
  std::vector<AlphaEdge> edges;
  for (std::size_t e = 0; e < s.tri.edges.size(); ++e) {
    const auto [i, j] = s.tri.edge_labels(e);
    edges.push_back({i, j, s.data.edges[e].eta});
  }
  const AlphaNormalization n = normalize_alpha(s.data.alpha, s.data.f, edges);
  SurfaceConformalData out = s.data;
  for (std::size_t r = 0; r < out.alpha.size(); ++r) {
    out.alpha[r] = n.alpha[r];
    out.f[r] = n.g[r];
  }
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    if (uses_alpha(out.edges[e].family)) out.edges[e].eta = n.eta[e];
  }
  return out;
}

/// Removes C on a genus-0 surface: h = f + g, C = 0, eta~ = e^{-g_i - g_j} eta, with C_ij = g_i - g_j.
inline SurfaceConformalData normalize_C(const Surface& s) {
  const IdealTriangulation& tri = s.tri;
  for (const EdgeData& e : s.data.edges) {
    if (uses_alpha(e.family)) {
      throw Error(ErrorCode::InvalidParameters, "C-normalization applies to A2/B2 surfaces only");
    }
  }
  if (tri.euler_characteristic() != 2) {
    throw Error(ErrorCode::NotGenusZero, "coned surface has Euler characteristic " + std::to_string(tri.euler_characteristic()));
  }

  struct Arc {
    std::size_t to;
    double c;  // C along this orientation
  };
  std::vector<std::vector<Arc>> adj(tri.n_boundary);
  for (std::size_t e = 0; e < tri.edges.size(); ++e) {
    const auto [i, j] = tri.edge_labels(e);
    adj[i].push_back({j, s.data.edges[e].C});
    adj[j].push_back({i, -s.data.edges[e].C});
  }
  std::vector<std::optional<double>> g(tri.n_boundary);
  g[0] = 0.0;
  std::queue<std::size_t> todo;
  todo.push(0);
  while (!todo.empty()) {
    const std::size_t i = todo.front();
    todo.pop();
    for (const Arc& a : adj[i]) {
      if (!g[a.to]) {
        g[a.to] = *g[i] - a.c;
        todo.push(a.to);
      }
    }
  }
  for (std::size_t e = 0; e < tri.edges.size(); ++e) {
    const auto [i, j] = tri.edge_labels(e);
    if (!g[i] || !g[j]) throw Error(ErrorCode::DisconnectedSurface, "boundary graph is disconnected");
    const double c = s.data.edges[e].C;
    const double mismatch = (*g[i] - *g[j]) - c;
    if (std::abs(mismatch) > kCocycleTolerance * std::max(1.0, std::abs(c))) {
      throw Error(ErrorCode::InconsistentCocycle,
                  "edge " + std::to_string(e) + ": g_i - g_j differs from C_ij by " + std::to_string(mismatch));
    }
  }
  SurfaceConformalData out = s.data;
  for (std::size_t r = 0; r < out.f.size(); ++r) out.f[r] = s.data.f[r] + *g[r];
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    const auto [i, j] = tri.edge_labels(e);
    out.edges[e].C = 0.0;
    out.edges[e].eta = std::exp(-*g[i] - *g[j]) * s.data.edges[e].eta;
  }
  return out;
}

}  // namespace hdcs
