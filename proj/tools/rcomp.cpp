// rcomp: generate manifolds, run the verification suite, sweep families and
// turn reports into plot-ready CSV.
//
// Exit codes: 0 pass, 1 violation, 2 hypotheses violated, 64 usage error,
// 65 input parse error (70 for internal errors).

#include "rcomp/currents.hpp"
#include "rcomp/errors.hpp"
#include "rcomp/fileio.hpp"
#include "rcomp/json_io.hpp"
#include "rcomp/mesh/generators.hpp"
#include "rcomp/mesh/geodesics.hpp"
#include "rcomp/mesh/io.hpp"
#include "rcomp/mesh/operators.hpp"
#include "rcomp/mesh/manifold.hpp"
#include "rcomp/verify.hpp"
#include "rcomp/warped.hpp"

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rcomp;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitHypotheses = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
// Outside the contract: an internal error, never a verdict.
constexpr int kExitInternal = 70;

// Bad flags, unknown families or config keys.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kWarpedFamilies{"ball", "cylinder_cap", "spherical_cap", "exponential"};
const std::set<std::string> kMeshFamilies{"disk", "saddle", "cylinder", "sphere", "jfold", "wells",
                                          "triangle"};
// Leading comment of generated meshes; carries the generator parameters.
const std::string kMeshTag = "# rcomp ";

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument(text);
    }
    return x;
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + text + "' is not a number");
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) {
    return {};
  }
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("parameter '" + item + "' must look like key=value");
    }
    out[trim(item.substr(0, eq))] = parse_number(trim(item.substr(eq + 1)), "parameter " + item);
  }
  return out;
}

// "a,b,c" or "lo:hi:n" (n evenly spaced values including both ends).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) {
      parts.push_back(trim(p));
    }
    if (parts.size() != 3) {
      throw UsageError("delta grid '" + text + "' must be lo:hi:n");
    }
    const double lo = parse_number(parts[0], "delta grid");
    const double hi = parse_number(parts[1], "delta grid");
    const double n = parse_number(parts[2], "delta grid");
    if (n < 2 || n != static_cast<int>(n) || hi < lo) {
      throw UsageError("delta grid '" + text + "' needs lo <= hi and an integer n >= 2");
    }
    for (int i = 0; i < static_cast<int>(n); ++i) {
      out.push_back(lo + (hi - lo) * i / (n - 1));
    }
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
      if (!trim(p).empty()) {
        out.push_back(parse_number(trim(p), "delta grid"));
      }
    }
  }
  for (double d : out) {
    if (!(d >= 0.0)) {
      throw UsageError("delta grid values must be nonnegative");
    }
  }
  if (out.empty()) {
    throw UsageError("empty delta grid");
  }
  return out;
}

std::string grid_text(const std::vector<double>& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s += (i ? "," : "") + format_double(g[i]);
  }
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (!trim(p).empty()) {
      out.push_back(trim(p));
    }
  }
  return out;
}

// Everything a run depends on besides its inputs.
struct RunConfig {
  VerifyConfig verify;
  SequenceThresholds thresholds;
  std::vector<double> sweep_deltas{0.05, 0.1, 0.2, 0.4};
  unsigned jobs = 1;
};

double* tolerance_field(VerifyConfig& c, const std::string& key) {
  static const std::map<std::string, double VerifyConfig::*> fields{
      {"warped_rel_tol", &VerifyConfig::warped_rel_tol},
      {"warped_equality_tol", &VerifyConfig::warped_equality_tol},
      {"jacobian_tol", &VerifyConfig::jacobian_tol},
      {"warped_diameter_rel_tol", &VerifyConfig::warped_diameter_rel_tol},
      {"mesh_rel_tol", &VerifyConfig::mesh_rel_tol},
      {"mesh_equality_tol", &VerifyConfig::mesh_equality_tol},
      {"lipschitz_per_h", &VerifyConfig::lipschitz_per_h},
      {"laplacian_c1", &VerifyConfig::laplacian_c1},
      {"laplacian_c2", &VerifyConfig::laplacian_c2},
      {"mesh_diameter_rel_tol", &VerifyConfig::mesh_diameter_rel_tol},
      {"curvature_tol", &VerifyConfig::curvature_tol},
      {"cut_skip_h", &VerifyConfig::cut_skip_h},
  };
  auto it = fields.find(key);
  return it == fields.end() ? nullptr : &(c.*(it->second));
}

const std::vector<std::string> kToleranceKeys{
    "warped_rel_tol", "warped_equality_tol", "jacobian_tol", "warped_diameter_rel_tol",
    "mesh_rel_tol", "mesh_equality_tol", "lipschitz_per_h", "laplacian_c1", "laplacian_c2",
    "mesh_diameter_rel_tol", "curvature_tol", "cut_skip_h"};

std::size_t parse_count(const std::string& text, const std::string& what) {
  const double x = parse_number(text, what);
  if (x < 1 || x != static_cast<double>(static_cast<std::size_t>(x))) {
    throw UsageError(what + " must be a positive integer");
  }
  return static_cast<std::size_t>(x);
}

// INI file with sections [run], [tolerances] and [sweep]; unknown keys are
// usage errors so typos do not silently fall back to defaults.
void apply_config_file(RunConfig& rc, const std::string& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(path, e.line(), e.message());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw UsageError(path + ": key '" + section + "' outside a section");
    }
    for (const auto& [key, node] : body) {
      const std::string value = trim(node.data());
      const std::string where = path + ": [" + section + "] " + key;
      if (section == "run") {
        if (key == "seed") {
          rc.verify.seed = static_cast<std::uint64_t>(parse_number(value, where));
        } else if (key == "tol_scale") {
          rc.verify.tol_scale = parse_number(value, where);
        } else if (key == "delta_grid") {
          rc.verify.delta_grid = parse_grid(value);
        } else if (key == "grid_points") {
          rc.verify.grid_points = parse_count(value, where);
        } else if (key == "distance_samples") {
          rc.verify.distance_samples = parse_count(value, where);
        } else if (key == "jobs") {
          rc.jobs = static_cast<unsigned>(parse_count(value, where));
        } else if (key == "checks") {
          rc.verify.enabled = split_list(value);
        } else {
          throw UsageError(where + ": unknown key");
        }
      } else if (section == "tolerances") {
        double* field = tolerance_field(rc.verify, key);
        if (!field) {
          throw UsageError(where + ": unknown key");
        }
        *field = parse_number(value, where);
      } else if (section == "sweep") {
        if (key == "deltas") {
          rc.sweep_deltas = parse_grid(value);
        } else if (key == "boundary_area") {
          rc.thresholds.boundary_area = parse_number(value, where);
        } else if (key == "mean_curvature") {
          rc.thresholds.mean_curvature = parse_number(value, where);
        } else if (key == "diameter") {
          rc.thresholds.diameter = parse_number(value, where);
        } else if (key == "boundary_diameter") {
          rc.thresholds.boundary_diameter = parse_number(value, where);
        } else {
          throw UsageError(where + ": unknown key");
        }
      } else {
        throw UsageError(path + ": unknown section [" + section + "]");
      }
    }
  }
}

// The effective configuration, written next to the outputs; feeding it back
// with --config reproduces the run.
std::string config_text(const RunConfig& rc) {
  std::ostringstream out;
  const auto& v = rc.verify;
  out << "[run]\n";
  out << "seed = " << v.seed << '\n';
  out << "tol_scale = " << format_double(v.tol_scale) << '\n';
  if (!v.delta_grid.empty()) {
    out << "delta_grid = " << grid_text(v.delta_grid) << '\n';
  }
  out << "grid_points = " << v.grid_points << '\n';
  out << "distance_samples = " << v.distance_samples << '\n';
  out << "jobs = " << rc.jobs << '\n';
  if (!v.enabled.empty()) {
    std::string s;
    for (std::size_t i = 0; i < v.enabled.size(); ++i) {
      s += (i ? "," : "") + v.enabled[i];
    }
    out << "checks = " << s << '\n';
  }
  out << "\n[tolerances]\n";
  VerifyConfig copy = v;
  for (const auto& key : kToleranceKeys) {
    out << key << " = " << format_double(*tolerance_field(copy, key)) << '\n';
  }
  out << "\n[sweep]\n";
  out << "deltas = " << grid_text(rc.sweep_deltas) << '\n';
  const auto& t = rc.thresholds;
  for (const auto& [key, value] : {std::pair{"boundary_area", t.boundary_area},
                                   {"mean_curvature", t.mean_curvature},
                                   {"diameter", t.diameter},
                                   {"boundary_diameter", t.boundary_diameter}}) {
    if (std::isfinite(value)) {
      out << key << " = " << format_double(value) << '\n';
    }
  }
  return out.str();
}

// Flags shared by verify and sweep; unset flags leave the file values alone.
struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> delta_grid;
  std::optional<double> tol_scale;
  std::optional<unsigned> jobs;

  void add_to(CLI::App* app) {
    app->add_option("--config", config, "INI file with [run], [tolerances] and [sweep] sections")
        ->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "seed for randomised samples");
    app->add_option("--delta-grid", delta_grid, "comma list or lo:hi:n");
    app->add_option("--tol-scale", tol_scale, "multiplies every non-equality tolerance")
        ->check(CLI::PositiveNumber);
    app->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  }

  RunConfig resolve() const {
    RunConfig rc;
    if (!config.empty()) {
      apply_config_file(rc, config);
    }
    if (seed) {
      rc.verify.seed = *seed;
    }
    if (delta_grid) {
      rc.verify.delta_grid = parse_grid(*delta_grid);
      rc.sweep_deltas = rc.verify.delta_grid;
    }
    if (tol_scale) {
      rc.verify.tol_scale = *tol_scale;
    }
    if (jobs) {
      rc.jobs = *jobs;
    }
    return rc;
  }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path, 0, "cannot open file");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string lower_extension(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// ----- generate -----

struct GenerateArgs {
  std::string family;
  std::vector<std::string> params;
  std::string out;
  std::string export_field;
};

std::string tagged_mesh(const mesh::TriangulatedSurface& s, const std::string& family,
                        const std::map<std::string, double>& params, bool obj) {
  std::ostringstream body;
  std::string tag = kMeshTag + "family=" + family;
  for (const auto& [k, v] : params) {
    tag += " " + k + "=" + format_double(v);
  }
  if (obj) {
    mesh::write_obj(s, body);
    return tag + "\n" + body.str();
  }
  mesh::write_off(s, body);
  // OFF readers expect the keyword on the first line.
  std::string text = body.str();
  const auto nl = text.find('\n');
  return text.substr(0, nl + 1) + tag + "\n" + text.substr(nl + 1);
}

int cmd_generate(const GenerateArgs& a) {
  auto params = parse_params(a.params);
  if (kWarpedFamilies.count(a.family)) {
    if (!a.export_field.empty()) {
      throw UsageError("--export-field applies to mesh families only");
    }
    try {
      (void)make_warped(a.family, params);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    json d{{"backend", "warped"}, {"family", a.family}, {"parameters", params}};
    write_file_atomic(a.out, dump_json(d));
    std::cout << "wrote warped descriptor " << a.out << '\n';
    return kExitPass;
  }
  if (!kMeshFamilies.count(a.family)) {
    throw UsageError("unknown family '" + a.family + "'");
  }
  const std::string ext = lower_extension(a.out);
  if (ext != ".off" && ext != ".obj") {
    throw UsageError("mesh output must end in .off or .obj");
  }
  mesh::TriangulatedSurface s = [&] {
    try {
      return mesh::make_mesh(a.family, params);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  write_file_atomic(a.out, tagged_mesh(s, a.family, params, ext == ".obj"));
  std::cout << "wrote " << a.out << ": " << s.vertex_count() << " vertices, " << s.face_count()
            << " faces";
  if (s.has_boundary()) {
    std::cout << ", boundary length " << format_double(mesh::boundary_length(s));
  }
  std::cout << '\n';
  if (!a.export_field.empty()) {
    if (!s.has_boundary()) {
      throw UsageError("--export-field needs a surface with boundary");
    }
    mesh::save_field_csv(mesh::distance_to_boundary(s).distance, a.export_field);
  }
  return kExitPass;
}

// ----- verify -----

struct VerifyArgs {
  std::string input;
  std::string field;
  std::string export_field;
  std::vector<std::string> params;
  std::string checks;
  std::string out;
  bool json_stdout = false;
  CommonFlags common;
};

// Family and parameters from the generator tag, if present.
std::pair<std::string, std::map<std::string, double>> read_mesh_tag(const std::string& text) {
  std::istringstream in(text);
  std::string family = "mesh";
  std::map<std::string, double> params;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(kMeshTag, 0) != 0) {
      continue;
    }
    std::istringstream words(line.substr(kMeshTag.size()));
    for (std::string w; words >> w;) {
      const auto eq = w.find('=');
      if (eq == std::string::npos) {
        continue;
      }
      const std::string key = w.substr(0, eq);
      if (key == "family") {
        family = w.substr(eq + 1);
      } else {
        try {
          params[key] = std::stod(w.substr(eq + 1));
        } catch (const std::exception&) {
          // Foreign tag; keep the defaults.
        }
      }
    }
    break;
  }
  return {family, params};
}

WarpedProductManifold load_warped(const std::string& path) {
  json d;
  try {
    d = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  try {
    if (d.value("backend", "") != "warped") {
      throw ParseError(path, 0, "descriptor backend must be \"warped\"");
    }
    std::map<std::string, double> params;
    if (d.contains("parameters")) {
      params = d.at("parameters").get<std::map<std::string, double>>();
    }
    if (d.contains("family")) {
      const std::string family = d.at("family").get<std::string>();
      if (!kWarpedFamilies.count(family)) {
        throw ParseError(path, 0, "unknown warped family '" + family + "'");
      }
      return make_warped(family, params);
    }
    // Tabulated profile: {"k": 2, "cap": false, "t": [...], "f": [...]}.
    // Hypothesis violations are gated by the suite, not rejected here.
    auto profile = WarpProfile::tabulated(d.at("t").get<std::vector<double>>(),
                                          d.at("f").get<std::vector<double>>(),
                                          d.value("description", std::string("tabulated")));
    WarpedOptions opts;
    opts.bypass_validation = true;
    return build_warped(d.at("k").get<int>(), std::move(profile), d.value("cap", false), opts,
                        d.value("name", std::string("tabulated")), params);
  } catch (const json::exception& e) {
    throw ParseError(path, 0, e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ValidationError*>(&e)) {
      throw;
    }
    throw ParseError(path, 0, e.what());
  }
}

int exit_code(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass:
      return kExitPass;
    case SuiteStatus::Fail:
      return kExitViolation;
    case SuiteStatus::HypothesesViolated:
      return kExitHypotheses;
  }
  return kExitViolation;
}

int cmd_verify(const VerifyArgs& a) {
  RunConfig rc = a.common.resolve();
  if (!a.checks.empty()) {
    rc.verify.enabled = split_list(a.checks);
  }
  for (const auto& name : rc.verify.enabled) {
    const auto& all = all_check_names();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw UsageError("unknown check '" + name + "'");
    }
  }
  const auto overrides = parse_params(a.params);

  VerificationReport report;
  if (lower_extension(a.input) == ".json") {
    if (!a.field.empty() || !a.export_field.empty()) {
      throw UsageError("--field and --export-field apply to mesh inputs only");
    }
    report = run_suite(load_warped(a.input), rc.verify);
  } else {
    const std::string text = read_text(a.input);
    auto surface = mesh::load_mesh(a.input);
    auto [family, params] = read_mesh_tag(text);
    for (const auto& [k, v] : overrides) {
      params[k] = v;
    }
    std::optional<mesh::ScalarField> field;
    if (!a.field.empty()) {
      field = mesh::load_field_csv(a.field, surface.vertex_count());
    }
    auto m = mesh::MeshManifold::build(std::move(surface), family, params, field,
                                       rc.verify.curvature_tol);
    if (!a.export_field.empty()) {
      mesh::save_field_csv(m.distance(), a.export_field);
    }
    report = run_suite(m, rc.verify);
  }

  const std::string report_json = report.to_json();
  if (!a.out.empty()) {
    const fs::path dir(a.out);
    write_file_atomic((dir / "report.json").string(), report_json);
    write_file_atomic((dir / "report.txt").string(), report.to_text());
    write_file_atomic((dir / "config.ini").string(), config_text(rc));
  }
  if (a.json_stdout) {
    std::cout << report_json;
  } else {
    std::cout << report.to_text();
  }
  return exit_code(report.status());
}

// ----- sweep -----

struct SweepArgs {
  std::string family;
  int from = 1;
  int to = 1;
  std::vector<std::string> params;
  std::string out;
  CommonFlags common;
};

int cmd_sweep(const SweepArgs& a) {
  if (a.to < a.from) {
    throw UsageError("--to must not be smaller than --from");
  }
  const std::set<std::string> families{"cylinder_cap", "ball", "jfold", "wells"};
  if (!families.count(a.family)) {
    throw UsageError("unknown sweep family '" + a.family + "' (cylinder_cap, ball, jfold, wells)");
  }
  RunConfig rc = a.common.resolve();
  SequenceOptions opts;
  opts.deltas = rc.sweep_deltas;
  opts.thresholds = rc.thresholds;
  opts.parameters = parse_params(a.params);
  opts.jobs = rc.jobs;
  const auto records = classify_sequence(a.family, a.from, a.to, opts);
  const auto verdict = summarize_sequence(records, opts.thresholds);

  const json doc{{"records", sequence_json(records)}, {"verdict", verdict.to_json()}};
  if (!a.out.empty()) {
    const fs::path dir(a.out);
    write_file_atomic((dir / "sequence.csv").string(), sequence_csv(records));
    write_file_atomic((dir / "verdict.json").string(), dump_json(doc));
    write_file_atomic((dir / "config.ini").string(), config_text(rc));
  }
  std::cout << sequence_csv(records);
  for (const auto& s : verdict.statements) {
    std::cout << "# " << s << '\n';
  }
  // Flat bounds are upper bounds only; a broken tail chain is the one
  // outright violation a sweep can report.
  return verdict.tail_chain_violations > 0 ? kExitViolation : kExitPass;
}

// ----- report -----

struct ReportArgs {
  std::string input;
  std::string out;
};

int cmd_report(const ReportArgs& a) {
  json r;
  try {
    r = json::parse(read_text(a.input));
  } catch (const json::parse_error& e) {
    throw ParseError(a.input, 0, e.what());
  }
  std::ostringstream csv;
  csv << "check,x,measured,bound\n";
  try {
    if (!r.contains("checks") || !r.at("checks").is_array()) {
      throw ParseError(a.input, 0, "not a verification report (no checks array)");
    }
    for (const auto& c : r.at("checks")) {
      const std::string name = c.at("name").get<std::string>();
      for (const auto& p : c.at("curve")) {
        if (!p.is_array() || p.size() != 3) {
          throw ParseError(a.input, 0, "curve point of check '" + name + "' is not [x, measured, bound]");
        }
        csv << name;
        for (const auto& x : p) {
          csv << ',' << (x.is_number() ? format_double(x.get<double>()) : std::string());
        }
        csv << '\n';
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(a.input, 0, e.what());
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file_atomic(a.out, csv.str());
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-geometry verification toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a mesh (OFF/OBJ) or a warped descriptor (JSON)");
  g->add_option("family", gen.family, "disk, saddle, cylinder, sphere, jfold, wells, triangle, "
                                      "ball, cylinder_cap, spherical_cap, exponential")
      ->required();
  g->add_option("-p,--param", gen.params, "generator parameter key=value");
  g->add_option("--out", gen.out, "output path")->required();
  g->add_option("--export-field", gen.export_field, "also write the distance-to-boundary field CSV");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "run the verification suite on a mesh or descriptor");
  v->add_option("input", ver.input, "OFF/OBJ mesh or warped descriptor JSON")
      ->required()
      ->check(CLI::ExistingFile);
  v->add_option("--field", ver.field, "distance field CSV (vertex_id,value) instead of fast marching")
      ->check(CLI::ExistingFile);
  v->add_option("--export-field", ver.export_field, "write the distance field used");
  v->add_option("-p,--param", ver.params, "override a recorded generator parameter, e.g. h=0.02");
  v->add_option("--checks", ver.checks, "comma list of checks to run");
  v->add_option("--out", ver.out, "directory for report.json, report.txt and config.ini");
  v->add_flag("--json", ver.json_stdout, "print the JSON report instead of the text summary");
  ver.common.add_to(v);

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "classify a family over an index range");
  s->add_option("family", sw.family, "cylinder_cap, ball, jfold or wells")->required();
  s->add_option("--from", sw.from, "first index")->check(CLI::PositiveNumber);
  s->add_option("--to", sw.to, "last index")->required()->check(CLI::PositiveNumber);
  s->add_option("-p,--param", sw.params, "family parameter key=value");
  s->add_option("--out", sw.out, "directory for sequence.csv, verdict.json and config.ini");
  sw.common.add_to(s);

  ReportArgs rep;
  auto* r = app.add_subcommand("report", "extract plot-ready curves from a report JSON");
  r->add_option("input", rep.input, "report.json")->required()->check(CLI::ExistingFile);
  r->add_option("--out", rep.out, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*g) {
      return cmd_generate(gen);
    }
    if (*v) {
      return cmd_verify(ver);
    }
    if (*s) {
      return cmd_sweep(sw);
    }
    return cmd_report(rep);
  } catch (const UsageError& e) {
    std::cerr << "rcomp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "rcomp: " << e.what() << '\n';
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "rcomp: invalid input: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "rcomp: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
