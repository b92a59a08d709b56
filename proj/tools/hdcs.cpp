#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hdcs/examples.hpp"
#include "hdcs/surface.hpp"
#include "hdcs/svg.hpp"
#include "hdcs/verify.hpp"
#include "json.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kMalformed = 2;

struct Args {
  std::string input;
  std::string output;
  double tol = hdcs::kCompatTolerance;
  std::uint64_t seed = 42;
  double h = 1e-5;
  std::optional<std::size_t> face;
  std::string example;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

hdcs::Surface load(const Args& a) { return hdcs::parse_surface(read_input(a.input)); }

int structural_exit(hdcs::ErrorCode code) {
  switch (code) {
    case hdcs::ErrorCode::MalformedDocument:
    case hdcs::ErrorCode::UnpairedSide:
    case hdcs::ErrorCode::DisconnectedSurface:
    case hdcs::ErrorCode::UnknownExample:
      return kMalformed;
    default:
      return kFailed;
  }
}

int run_metric(const Args& a) {
  const hdcs::MetricReport report = hdcs::compute_metric(load(a), a.tol);
  write_output(a.output, dump(hdcs::to_json(report)));
  for (const std::string& d : report.diagnostics) std::cerr << d << "\n";
  return report.valid ? kOk : kFailed;
}

int run_splits(const Args& a) {
  const hdcs::Surface s = load(a);
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  bool ok = true;
  for (std::size_t e = 0; e < s.tri.edges.size(); ++e) {
    nlohmann::ordered_json je;
    const auto [i, j] = s.tri.edge_labels(e);
    je["edge"] = e;
    je["tail"] = i;
    je["head"] = j;
    try {
      je["split"] = hdcs::split_json(hdcs::split_edge(hdcs::edge_params(s, e)));
    } catch (const hdcs::Error& ex) {
      ok = false;
      je["error"] = ex.what();
      std::cerr << "edge " << e << ": " << ex.what() << "\n";
    }
    out.push_back(je);
  }
  write_output(a.output, dump(out));
  return ok ? kOk : kFailed;
}

int run_centers(const Args& a) {
  const hdcs::MetricReport report = hdcs::compute_metric(load(a), a.tol);
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  bool ok = true;
  for (std::size_t f = 0; f < report.faces.size(); ++f) {
    if (a.face && *a.face != f) continue;
    const hdcs::FaceReport& fr = report.faces[f];
    nlohmann::ordered_json jf;
    jf["face"] = f;
    jf["compat_residual"] = fr.compat_residual;
    if (fr.centers) {
      jf["centers"] = hdcs::centers_json(*fr.centers);
    } else {
      ok = false;
      jf["error"] = fr.error;
      std::cerr << "face " << f << ": " << fr.error << "\n";
    }
    out.push_back(jf);
  }
  if (a.face && *a.face >= report.faces.size()) {
    std::cerr << "face index " << *a.face << " out of range\n";
    return kMalformed;
  }
  write_output(a.output, dump(out));
  return ok ? kOk : kFailed;
}

nlohmann::ordered_json suite_json(const std::vector<hdcs::CheckReport>& checks, std::uint64_t seed, bool& all) {
  nlohmann::ordered_json out;
  out["seed"] = seed;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  all = true;
  for (const hdcs::CheckReport& c : checks) {
    all = all && c.pass;
    if (!c.pass) std::cerr << "FAIL " << c.name << ": max residual " << c.max_residual << "\n";
    list.push_back(hdcs::to_json(c));
  }
  out["pass"] = all;
  out["checks"] = list;
  return out;
}

int run_verify(const Args& a) {
  hdcs::VerifyOptions opts;
  opts.seed = a.seed;
  opts.h = a.h;
  opts.tol_compat = a.tol;
  bool all = false;
  const auto json = suite_json(hdcs::verify_surface(load(a), opts), a.seed, all);
  write_output(a.output, dump(json));
  return all ? kOk : kFailed;
}

int run_fdcheck(const Args& a) {
  const hdcs::Surface s = load(a);
  std::vector<hdcs::CheckReport> checks;
  for (std::size_t e = 0; e < s.tri.edges.size(); ++e) {
    const hdcs::EdgeParams p = hdcs::edge_params(s, e);
    for (int end = 0; end < 2; ++end) {
      const std::string where = " edge " + std::to_string(e) + (end ? " reversed" : "");
      try {
        hdcs::CheckReport r = hdcs::fd_partial_check(end ? p.reversed() : p, a.h);
        r.name += where;
        checks.push_back(r);
      } catch (const hdcs::Error& ex) {
        checks.push_back(hdcs::failure_report("fd_partial" + where, ex));
      }
    }
  }
  bool all = false;
  const auto json = suite_json(checks, a.seed, all);
  write_output(a.output, dump(json));
  return all ? kOk : kFailed;
}

int run_render(const Args& a) {
  const hdcs::MetricReport report = hdcs::compute_metric(load(a), a.tol);
  const std::size_t f = a.face.value_or(0);
  if (f >= report.faces.size()) {
    std::cerr << "face index " << f << " out of range\n";
    return kMalformed;
  }
  const hdcs::FaceReport& fr = report.faces[f];
  if (!fr.hex || !fr.centers) {
    std::cerr << "face " << f << ": " << fr.error << "\n";
    return kFailed;
  }
  write_output(a.output, hdcs::render_face(*fr.hex, *fr.centers));
  return kOk;
}

int run_example(const Args& a) {
  write_output(a.output, dump(hdcs::emit_example(a.example)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete conformal structures on ideally triangulated surfaces with boundary"};
  app.require_subcommand(1);
  Args args;

  auto common = [&](CLI::App* sub, bool needs_input) {
    sub->set_help_flag("--help", "print help");  // frees the name h for the stencil step
    auto* in = sub->add_option("-i,--input", args.input, "input surface JSON (- for stdin)");
    if (needs_input) in->required();
    sub->add_option("-o,--output", args.output, "output path (default stdout)");
    sub->add_option("--tol", args.tol, "compatibility tolerance")->capture_default_str();
    sub->add_option("--seed", args.seed, "random seed")->capture_default_str();
    sub->add_option("--h", args.h, "finite-difference step")->capture_default_str();
    sub->add_option("--face", args.face, "face index");
  };

  std::function<int(const Args&)> action;
  auto add = [&](const char* name, const char* help, int (*fn)(const Args&), bool needs_input = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub, needs_input);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  add("metric", "edge lengths, splits, centers and boundary lengths", run_metric);
  add("splits", "partial edge splits", run_splits);
  add("centers", "edge and face centers", run_centers);
  add("verify", "run every numerical certificate", run_verify);
  add("fdcheck", "finite-difference check of the defining equation", run_fdcheck);
  add("render", "SVG of one face in the Klein disk", run_render);
  CLI::App* ex = add("example", "emit a bundled input document", run_example, false);
  ex->add_option("name", args.example, "pants-guo | pants-mixed-a2b2 | torus-guo")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    return action(args);
  } catch (const hdcs::Error& e) {
    std::cerr << e.what() << "\n";
    return structural_exit(e.code());
  } catch (const IoError& e) {
    std::cerr << "IoError: " << e.what() << "\n";
    return kMalformed;
  }
}
