#include "rcomp/verify.hpp"

#include "rcomp/currents.hpp"
#include "rcomp/fileio.hpp"
#include "rcomp/json_io.hpp"
#include "rcomp/mesh/geodesics.hpp"
#include "rcomp/mesh/level_sets.hpp"
#include "rcomp/mesh/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace rcomp {

namespace {

std::string fmt(double x) { return format_double(x); }

std::string at_delta(double d) { return "delta=" + fmt(d); }

void add_point(CheckResult& r, double x, double measured, double bound) {
  r.curve.push_back({x, measured, bound});
}

/// At most `limit` points, evenly spaced after sorting by x.
void thin_curve(CheckResult& r, std::size_t limit) {
  std::stable_sort(r.curve.begin(), r.curve.end(),
                   [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
  if (r.curve.size() <= limit) {
    return;
  }
  std::vector<CurvePoint> kept;
  for (std::size_t i = 0; i < limit; ++i) {
    kept.push_back(r.curve[i * (r.curve.size() - 1) / (limit - 1)]);
  }
  r.curve = std::move(kept);
}

CheckResult make(const char* name, double tol, double eq_tol, const char* kind) {
  CheckResult r;
  r.name = name;
  r.tolerance = tol;
  r.equality_tolerance = eq_tol;
  r.margin_kind = kind;
  return r;
}

/// Sorted r values of cut-flagged vertices.
std::vector<double> flagged_levels(const mesh::MeshManifold& m) {
  std::vector<double> out;
  for (std::size_t v = 0; v < m.surface().vertex_count(); ++v) {
    if (m.cut()[v]) {
      out.push_back(m.distance()[v]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool near_level(const std::vector<double>& levels, double d, double width) {
  auto it = std::lower_bound(levels.begin(), levels.end(), d - width);
  return it != levels.end() && *it <= d + width;
}

double mesh_second_order_tol(const mesh::MeshManifold& m, const VerifyConfig& cfg) {
  const double h = m.resolution();
  return cfg.tol_scale * (cfg.laplacian_c1 * h + cfg.laplacian_c2 * std::sqrt(h));
}

bool is_comparison(const std::string& name) {
  return name == kCheckLaplacian || name == kCheckVolume || name == kCheckArea ||
         name == kCheckFocal || name == kCheckDiameter || name == kCheckJacobian ||
         name == kCheckTail;
}

bool enabled(const VerifyConfig& cfg, const std::string& name) {
  return cfg.enabled.empty() ||
         std::find(cfg.enabled.begin(), cfg.enabled.end(), name) != cfg.enabled.end();
}

void gate(std::vector<CheckResult>& checks, bool certified) {
  std::sort(checks.begin(), checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  if (certified) {
    return;
  }
  for (auto& c : checks) {
    if (is_comparison(c.name) && c.verdict != Verdict::Skipped) {
      c.notes.push_back(std::string("hypotheses not certified; raw verdict ") +
                        to_string(c.verdict) + " is informational");
      c.verdict = Verdict::HypothesesViolated;
    }
  }
}

}  // namespace

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      kCheckArea,  kCheckDiameter, kCheckDistanceField, kCheckFocal, kCheckHypotheses,
      kCheckJacobian, kCheckLaplacian, kCheckLipschitz, kCheckTail, kCheckVolume};
  return names;
}

std::vector<double> resolve_delta_grid(const VerifyConfig& cfg, double max_r) {
  if (!cfg.delta_grid.empty()) {
    std::vector<double> g = cfg.delta_grid;
    for (double d : g) {
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw std::invalid_argument("delta grid values must be finite and >= 0");
      }
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  }
  if (cfg.grid_points < 2) {
    throw std::invalid_argument("grid_points must be >= 2");
  }
  std::vector<double> g(cfg.grid_points);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = max_r * static_cast<double>(i) / static_cast<double>(g.size() - 1);
  }
  return g;
}

// ---------------------------------------------------------------- hypotheses

CheckResult check_hypotheses(const WarpedProductManifold& m) {
  CheckResult r = make(kCheckHypotheses, 0.0, 0.0, "indicator");
  const WarpCertificate& c = m.certificate();
  const std::pair<const char*, bool> parts[] = {{"f > 0", c.positive},
                                                {"f' <= 0", c.monotone},
                                                {"Ricci diagnostics >= 0", c.ricci_nonnegative},
                                                {"closed far end", c.closed_far_end}};
  for (const auto& [what, ok] : parts) {
    r.add_sample(ok ? 0.0 : -1.0, [&] { return std::string(what) + " violated"; });
  }
  for (const auto& v : c.violations) {
    r.notes.push_back(v);
  }
  r.finalize();
  r.equality = false;
  return r;
}

CheckResult check_hypotheses(const mesh::MeshManifold& m) {
  const auto& cert = m.certificate();
  CheckResult r = make(kCheckHypotheses, cert.tolerance, 0.0, "absolute");
  const auto& s = m.surface();
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    const int vi = static_cast<int>(v);
    if (s.is_boundary(vi)) {
      continue;
    }
    const double K = mesh::gaussian_curvature(s, vi);
    r.add_sample(K, [&] { return "vertex " + std::to_string(v) + ": Gaussian curvature " + fmt(K); });
  }
  r.notes.push_back("Ric >= 0 on a surface: discrete Gaussian curvature >= -" + fmt(cert.tolerance) +
                    " at interior vertices; min " + fmt(cert.min_gaussian_curvature));
  r.finalize();
  r.equality = false;
  return r;
}

// ---------------------------------------------------------------- lipschitz

CheckResult check_lipschitz(const WarpedProductManifold& m, const VerifyConfig& cfg) {
  CheckResult r = make(kCheckLipschitz, cfg.tol_scale * cfg.warped_rel_tol, cfg.warped_equality_tol,
                       "absolute");
  // r = t along unit-speed normal geodesics, so |grad r| = 1 exactly.
  for (double d : resolve_delta_grid(cfg, m.max_distance())) {
    r.add_sample(0.0, [] { return std::string(); });
    add_point(r, d, 1.0, 1.0);
  }
  r.notes.push_back("r = t has unit gradient on a warped product");
  r.finalize();
  return r;
}

CheckResult check_lipschitz(const mesh::MeshManifold& m, const VerifyConfig& cfg) {
  const double eps = cfg.tol_scale * cfg.lipschitz_per_h * m.resolution();
  CheckResult r = make(kCheckLipschitz, eps, cfg.mesh_equality_tol, "relative");
  const auto& s = m.surface();
  const auto& f = m.distance();
  double max_ratio = 0.0;
  for (std::size_t u = 0; u < s.vertex_count(); ++u) {
    for (int w : s.neighbors(static_cast<int>(u))) {
      if (static_cast<std::size_t>(w) <= u) {
        continue;
      }
      const double len = (s.position(static_cast<int>(u)) - s.position(w)).norm();
      const double ratio = std::abs(f[u] - f[static_cast<std::size_t>(w)]) / len;
      max_ratio = std::max(max_ratio, ratio);
      r.add_sample(1.0 - ratio, [&] {
        return "edge (" + std::to_string(u) + ", " + std::to_string(w) + "): |dr|/|uv| = " +
               fmt(ratio);
      });
    }
  }
  r.notes.push_back("epsilon_h = " + fmt(eps) + "; max |dr|/|uv| = " + fmt(max_ratio));
  r.finalize();
  // Equality here would mean every edge is radial, which is not the claim.
  r.equality = false;
  return r;
}

// ---------------------------------------------------------------- laplacian

CheckResult check_laplacian_comparison(const WarpedProductManifold& m, const VerifyConfig& cfg) {
  CheckResult r = make(kCheckLaplacian, cfg.tol_scale * cfg.warped_rel_tol, cfg.warped_equality_tol,
                       "relative");
  const ComparisonProfile p = comparison_profile(m);
  const auto focal = focal_radius(p);
  const double L = m.length();
  for (double d : resolve_delta_grid(cfg, m.max_distance())) {
    if (d >= L || (focal && d >= *focal)) {
      continue;
    }
    const double measured = m.radial_laplacian(d);
    const double bound = laplacian_bound(m.dimension(), p.mean_curvature(), d);
    r.add_sample(relative_margin(measured, bound), [&] {
      return at_delta(d) + ": Laplacian " + fmt(measured) + " > bound " + fmt(bound);
    });
    add_point(r, d, measured, bound);
  }
  r.notes.push_back("smooth points only: the far end (pole or cap) is excluded");
  r.finalize();
  return r;
}

CheckResult check_laplacian_comparison(const mesh::MeshManifold& m, const VerifyConfig& cfg) {
  CheckResult r = make(kCheckLaplacian, mesh_second_order_tol(m, cfg), cfg.mesh_equality_tol,
                       "absolute");
  const auto& s = m.surface();
  const auto& f = m.distance();
  std::size_t flagged = 0, past_focal = 0, no_foot = 0;
  double flagged_worst = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    const int vi = static_cast<int>(v);
    if (s.is_boundary(vi)) {
      continue;
    }
    const double H = m.foot_curvature(vi);
    if (std::isnan(H)) {
      ++no_foot;
      continue;
    }
    const double rv = f[v];
    if (H * rv + 1.0 <= 0.0) {
      ++past_focal;
      continue;
    }
    const double measured = mesh::cotan_laplacian(s, f, vi);
    const double bound = laplacian_bound(2, H, rv);
    if (m.cut()[v]) {
      ++flagged;
      flagged_worst = std::min(flagged_worst, bound - measured);
      continue;
    }
    r.add_sample(bound - measured, [&] {
      return "vertex " + std::to_string(v) + " r=" + fmt(rv) + ": Laplacian " + fmt(measured) +
             " > bound " + fmt(bound) + " (foot H " + fmt(H) + ")";
    });
    add_point(r, rv, measured, bound);
  }
  thin_curve(r, 200);
  r.notes.push_back("tolerance c1*h + c2*sqrt(h) = " + fmt(r.tolerance) + " at h = " +
                    fmt(m.resolution()));
  r.notes.push_back("raw worst margin at unflagged vertices: " + fmt(r.worst_margin));
  r.notes.push_back("cut-flagged vertices excluded (barrier sense not testable pointwise): " +
                    std::to_string(flagged) +
                    (flagged ? ", their worst margin " + fmt(flagged_worst) : std::string()));
  if (past_focal) {
    r.notes.push_back("vertices past the focal radius of their foot: " + std::to_string(past_focal));
  }
  if (no_foot) {
    r.notes.push_back("vertices without a boundary foot: " + std::to_string(no_foot));
  }
  r.finalize();
  return r;
}

// ---------------------------------------------------------------- volume

namespace {

template <class Annulus, class Skip>
void volume_pairs(CheckResult& r, const ComparisonProfile& p, double A,
                  const std::vector<double>& grid, double total, double max_r, double floor,
                  Annulus annulus, Skip skip) {
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a; b < grid.size(); ++b) {
      const double d2 = grid[a], d1 = grid[b];
      if (skip(d2, d1)) {
        continue;
      }
      const double measured = annulus(d2, d1);
      const double bound = volume_annulus_bound(p, A, d2, d1);
      r.add_sample(relative_margin(measured, bound, floor), [&] {
        return "delta2=" + fmt(d2) + " delta1=" + fmt(d1) + ": volume " + fmt(measured) +
               " > bound " + fmt(bound);
      });
      if (a == 0) {
        add_point(r, d1, measured, bound);
      }
    }
  }
  // Whole manifold: r <= max r <= Diam, and the profile vanishes past the
  // focal radius, so integrating to max r is the min{D, focal} variant.
  const double bound = volume_annulus_bound(p, A, 0.0, max_r);
  r.add_sample(relative_margin(total, bound, floor), [&] {
    return "total volume " + fmt(total) + " > bound " + fmt(bound);
  });
}

}  // namespace

CheckResult check_volume_bound(const WarpedProductManifold& m, const std::vector<double>& grid,
                               const VerifyConfig& cfg) {
  CheckResult r = make(kCheckVolume, cfg.tol_scale * cfg.warped_rel_tol, cfg.warped_equality_tol,
                       "relative");
  const double total = m.total_volume();
  volume_pairs(r, comparison_profile(m), m.boundary_area(), grid, total, m.max_distance(),
               1e-12 * total, [&](double d2, double d1) { return m.annulus_volume(d2, d1); },
               [](double, double) { return false; });
  r.finalize();
  return r;
}

CheckResult check_volume_bound(const mesh::MeshManifold& m, const std::vector<double>& grid,
                               const VerifyConfig& cfg) {
  CheckResult r = make(kCheckVolume, cfg.tol_scale * cfg.mesh_rel_tol, cfg.mesh_equality_tol,
                       "relative");
  const auto& s = m.surface();
  const auto& f = m.distance();
  // Relative margins are floored at one cell-wide collar (h * boundary length).
  const double floor = m.resolution() * m.boundary_length();
  // Near the cut locus the piecewise-linear r flattens the ridge, so a whole
  // cell-wide strip lands in the top annulus; such pairs are reported, not
  // tested. The whole-manifold sample is always tested.
  const std::vector<double> cut_values = flagged_levels(m);
  const double width = cfg.cut_skip_h * m.resolution();
  std::size_t skipped = 0;
  volume_pairs(r, comparison_profile(m), m.boundary_length(), grid, m.total_area(),
               m.max_distance(), floor,
               [&](double d2, double d1) { return mesh::annulus_area(s, f, d2, d1); },
               [&](double d2, double d1) {
                 const bool near = near_level(cut_values, d2, width) ||
                                   near_level(cut_values, d1, width);
                 skipped += near ? 1 : 0;
                 return near;
               });
  r.notes.push_back("relative margins floored at h * boundary length = " + fmt(floor));
  r.notes.push_back("grid pairs with an end within " + fmt(width) +
                    " of a cut-flagged vertex skipped: " + std::to_string(skipped));
  r.finalize();
  return r;
}

// ---------------------------------------------------------------- area

CheckResult check_area_bound(const WarpedProductManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg) {
  CheckResult r = make(kCheckArea, cfg.tol_scale * cfg.warped_rel_tol, cfg.warped_equality_tol,
                       "relative");
  const ComparisonProfile p = comparison_profile(m);
  const double A = m.boundary_area();
  for (double d : grid) {
    // r = L is the pole or the cap: a single value of delta, so it lies in
    // the exceptional null set.
    if (d >= m.length()) {
      continue;
    }
    const double measured = m.level_area(d);
    const double bound = A * area_ratio(p, d);
    r.add_sample(relative_margin(measured, bound, 1e-12 * A), [&] {
      return at_delta(d) + ": level area " + fmt(measured) + " > bound " + fmt(bound);
    });
    add_point(r, d, measured, bound);
  }
  r.finalize();
  return r;
}

CheckResult check_area_bound(const mesh::MeshManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg) {
  CheckResult r = make(kCheckArea, cfg.tol_scale * cfg.mesh_rel_tol, cfg.mesh_equality_tol,
                       "relative");
  const ComparisonProfile p = comparison_profile(m);
  const auto& s = m.surface();
  const auto& f = m.distance();
  const double A = m.boundary_length();
  const double h = m.resolution();
  const double skip = cfg.cut_skip_h * h;
  const std::vector<double> cut_values = flagged_levels(m);
  std::size_t skipped = 0;
  for (double d : grid) {
    if (near_level(cut_values, d, skip)) {
      ++skipped;
      continue;
    }
    const double measured = mesh::level_length(s, f, d);
    const double bound = A * area_ratio(p, d);
    r.add_sample(relative_margin(measured, bound, h), [&] {
      return at_delta(d) + ": level length " + fmt(measured) + " > bound " + fmt(bound);
    });
    add_point(r, d, measured, bound);
  }
  r.notes.push_back("grid points within " + fmt(skip) + " of a cut-flagged vertex skipped: " +
                    std::to_string(skipped) +
                    " (the exceptional null set of delta is not characterised)");
  r.notes.push_back("measured sets are level sets of r, which contain the boundaries of the inner "
                    "regions; this can only over-report");
  r.finalize();
  return r;
}

// ---------------------------------------------------------------- focal

namespace {

CheckResult focal_common(int n, double H, double max_r, double tol, double eq_tol) {
  CheckResult r = make(kCheckFocal, tol, eq_tol, "relative");
  if (!(H < 0.0)) {
    r.skip("H_max = " + fmt(H) + " >= 0: no focal bound");
    return r;
  }
  const double bound = -(n - 1) / H;
  r.add_sample(relative_margin(max_r, bound), [&] {
    return "max r " + fmt(max_r) + " > focal radius " + fmt(bound);
  });
  add_point(r, 0.0, max_r, bound);
  r.finalize();
  return r;
}

}  // namespace

CheckResult check_focal(const WarpedProductManifold& m, const VerifyConfig& cfg) {
  return focal_common(m.dimension(), m.boundary_mean_curvature(), m.max_distance(),
                      cfg.tol_scale * cfg.warped_rel_tol, cfg.warped_equality_tol);
}

CheckResult check_focal(const mesh::MeshManifold& m, const VerifyConfig& cfg) {
  return focal_common(2, m.max_mean_curvature(), m.max_distance(), cfg.tol_scale * cfg.mesh_rel_tol,
                      cfg.mesh_equality_tol);
}

// ---------------------------------------------------------------- diameter

namespace {

CheckResult diameter_common(int n, double H, double boundary_diameter,
                            const std::function<double()>& measure, double tol, double eq_tol,
                            const std::string& note) {
  CheckResult r = make(kCheckDiameter, tol, eq_tol, "relative");
  if (!(H < 0.0)) {
    r.skip("H_max = " + fmt(H) + " >= 0: no diameter bound");
    return r;
  }
  const double bound = diameter_bound(ComparisonProfile(n, H), boundary_diameter);
  const double measured = measure();
  r.add_sample(relative_margin(measured, bound), [&] {
    return "diameter " + fmt(measured) + " > D' - 2(n-1)/H = " + fmt(bound);
  });
  add_point(r, 0.0, measured, bound);
  r.notes.push_back(note + "; D' = " + fmt(boundary_diameter));
  r.finalize();
  return r;
}

}  // namespace

CheckResult check_diameter(const WarpedProductManifold& m, const VerifyConfig& cfg) {
  return diameter_common(m.dimension(), m.boundary_mean_curvature(), m.boundary_diameter(),
                         [&] { return m.diameter(); }, cfg.tol_scale * cfg.warped_diameter_rel_tol,
                         cfg.warped_equality_tol,
                         "diameter from graph shortest paths (biased upward); D' intrinsic to the "
                         "boundary sphere");
}

CheckResult check_diameter(const mesh::MeshManifold& m, const VerifyConfig& cfg) {
  const double H = m.max_mean_curvature();
  const double Dp = H < 0.0 ? mesh::boundary_restricted_diameter(m.surface()) : 0.0;
  return diameter_common(2, H, Dp, [&] { return mesh::mesh_diameter(m.surface()); },
                         cfg.tol_scale * cfg.mesh_diameter_rel_tol, cfg.mesh_equality_tol,
                         "D' measured between boundary vertices in the surface metric");
}

// ---------------------------------------------------------------- jacobian

CheckResult check_jacobian(const WarpedProductManifold& m, const std::vector<double>& grid,
                           const VerifyConfig& cfg) {
  CheckResult r = make(kCheckJacobian, cfg.tol_scale * cfg.jacobian_tol, cfg.warped_equality_tol,
                       "absolute");
  const ComparisonProfile p = comparison_profile(m);
  for (double d : grid) {
    if (d >= m.length()) {
      continue;
    }
    const double measured = m.jacobian_ratio(d);
    const double bound = area_ratio(p, d);
    r.add_sample(bound - measured, [&] {
      return at_delta(d) + ": Jacobian ratio " + fmt(measured) + " > " + fmt(bound);
    });
    add_point(r, d, measured, bound);
  }
  r.finalize();
  return r;
}

// ---------------------------------------------------------------- report

const char* to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass:
      return "pass";
    case SuiteStatus::Fail:
      return "fail";
    case SuiteStatus::HypothesesViolated:
      return "hypotheses-violated";
  }
  return "unknown";
}

SuiteStatus VerificationReport::status() const {
  bool hyp_failed = !hypotheses_certified;
  for (const auto& c : checks) {
    if (c.name == kCheckHypotheses) {
      hyp_failed = hyp_failed || c.verdict == Verdict::Fail;
    } else if (c.verdict == Verdict::Fail) {
      return SuiteStatus::Fail;
    }
  }
  return hyp_failed ? SuiteStatus::HypothesesViolated : SuiteStatus::Pass;
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

std::string VerificationReport::to_json() const {
  using nlohmann::json;
  json j;
  j["report_version"] = kVersion;
  j["status"] = to_string(status());
  json man;
  man["backend"] = backend;
  man["name"] = name;
  man["parameters"] = parameters;
  man["dimension"] = dimension;
  man["boundary_area"] = boundary_area;
  man["volume"] = volume;
  man["max_distance"] = max_distance;
  man["hypotheses_certified"] = hypotheses_certified;
  if (backend == "mesh") {
    man["resolution"] = resolution;
    man["vertex_count"] = vertex_count;
  }
  j["manifold"] = man;
  j["profile"] = {{"n", dimension}, {"H_max", H_max}};
  j["provenance"] = {{"seed", seed},
                     {"tol_scale", tol_scale},
                     {"delta_grid", delta_grid},
                     {"generator_parameters", parameters},
                     {"resolution", resolution}};
  json arr = json::array();
  for (const auto& c : checks) {
    json cj;
    cj["name"] = c.name;
    cj["verdict"] = to_string(c.verdict);
    cj["sample_count"] = c.sample_count;
    cj["violation_count"] = c.violation_count;
    cj["worst_margin"] = c.sample_count ? c.worst_margin : std::nan("");
    cj["max_abs_margin"] = c.max_abs_margin;
    cj["tolerance"] = c.tolerance;
    cj["equality_tolerance"] = c.equality_tolerance;
    cj["margin_kind"] = c.margin_kind;
    cj["equality"] = c.equality;
    cj["witnesses"] = c.witnesses;
    cj["notes"] = c.notes;
    json curve = json::array();
    for (const auto& pt : c.curve) {
      curve.push_back(json::array({pt.x, pt.measured, pt.bound}));
    }
    cj["curve"] = curve;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  return dump_json(j);
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "manifold  " << name << " (" << backend << ", n=" << dimension << ")\n";
  for (const auto& [k, v] : parameters) {
    out << "  " << k << " = " << fmt(v) << "\n";
  }
  out << "profile   n=" << dimension << " H_max=" << fmt(H_max) << "\n";
  out << "boundary  " << fmt(boundary_area) << "   volume " << fmt(volume) << "   max r "
      << fmt(max_distance) << "\n";
  if (backend == "mesh") {
    out << "mesh      h=" << fmt(resolution) << " vertices=" << vertex_count << "\n";
  }
  out << "seed      " << seed << "   tol_scale " << fmt(tol_scale) << "\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %-20s %8s %8s %14s %12s\n", "check", "verdict", "samples",
                "viol", "worst_margin", "tolerance");
  out << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-22s %-20s %8zu %8zu %14.6g %12.4g%s\n", c.name.c_str(),
                  to_string(c.verdict), c.sample_count, c.violation_count,
                  c.sample_count ? c.worst_margin : 0.0, c.tolerance, c.equality ? "  equality" : "");
    out << line;
    for (const auto& w : c.witnesses) {
      out << "    witness: " << w << "\n";
    }
    for (const auto& n : c.notes) {
      out << "    note: " << n << "\n";
    }
  }
  out << "\nstatus    " << to_string(status()) << "\n";
  return out.str();
}

// ---------------------------------------------------------------- suites

VerificationReport run_suite(const WarpedProductManifold& m, const VerifyConfig& cfg) {
  VerificationReport rep;
  rep.backend = "warped";
  rep.name = m.name();
  rep.parameters = m.parameters();
  rep.dimension = m.dimension();
  rep.H_max = m.boundary_mean_curvature();
  rep.boundary_area = m.boundary_area();
  rep.volume = m.total_volume();
  rep.max_distance = m.max_distance();
  rep.seed = cfg.seed;
  rep.tol_scale = cfg.tol_scale;
  rep.delta_grid = resolve_delta_grid(cfg, m.max_distance());
  rep.hypotheses_certified = m.hypotheses_certified();
  const auto& g = rep.delta_grid;

  auto run = [&](const char* name, auto&& fn) {
    if (enabled(cfg, name)) {
      rep.checks.push_back(fn());
    }
  };
  run(kCheckHypotheses, [&] { return check_hypotheses(m); });
  run(kCheckLipschitz, [&] { return check_lipschitz(m, cfg); });
  run(kCheckDistanceField, [&] {
    CheckResult r = m.distance_field_validation(cfg.distance_samples, cfg.seed,
                                                cfg.tol_scale * cfg.warped_rel_tol);
    r.name = kCheckDistanceField;
    return r;
  });
  run(kCheckLaplacian, [&] { return check_laplacian_comparison(m, cfg); });
  run(kCheckVolume, [&] { return check_volume_bound(m, g, cfg); });
  run(kCheckArea, [&] { return check_area_bound(m, g, cfg); });
  run(kCheckFocal, [&] { return check_focal(m, cfg); });
  run(kCheckDiameter, [&] { return check_diameter(m, cfg); });
  run(kCheckJacobian, [&] { return check_jacobian(m, g, cfg); });
  run(kCheckTail, [&] { return tail_bound_check(m, g, cfg); });
  gate(rep.checks, rep.hypotheses_certified);
  return rep;
}

VerificationReport run_suite(const mesh::MeshManifold& m, const VerifyConfig& cfg) {
  VerificationReport rep;
  rep.backend = "mesh";
  rep.name = m.name();
  rep.parameters = m.parameters();
  rep.dimension = 2;
  rep.H_max = m.max_mean_curvature();
  rep.boundary_area = m.boundary_length();
  rep.volume = m.total_area();
  rep.max_distance = m.max_distance();
  rep.resolution = m.resolution();
  rep.vertex_count = m.surface().vertex_count();
  rep.seed = cfg.seed;
  rep.tol_scale = cfg.tol_scale;
  rep.delta_grid = resolve_delta_grid(cfg, m.max_distance());
  rep.hypotheses_certified = m.hypotheses_certified();
  const auto& g = rep.delta_grid;

  auto run = [&](const char* name, auto&& fn) {
    if (enabled(cfg, name)) {
      rep.checks.push_back(fn());
    }
  };
  run(kCheckHypotheses, [&] { return check_hypotheses(m); });
  run(kCheckLipschitz, [&] { return check_lipschitz(m, cfg); });
  run(kCheckLaplacian, [&] { return check_laplacian_comparison(m, cfg); });
  run(kCheckVolume, [&] { return check_volume_bound(m, g, cfg); });
  run(kCheckArea, [&] { return check_area_bound(m, g, cfg); });
  run(kCheckFocal, [&] { return check_focal(m, cfg); });
  run(kCheckDiameter, [&] { return check_diameter(m, cfg); });
  run(kCheckJacobian, [&] {
    CheckResult r = make(kCheckJacobian, 0.0, 0.0, "absolute");
    r.skip("normal-exponential Jacobian is only available on the warped backend");
    return r;
  });
  run(kCheckTail, [&] { return tail_bound_check(m, g, cfg); });
  gate(rep.checks, rep.hypotheses_certified);
  return rep;
}

}  // namespace rcomp
