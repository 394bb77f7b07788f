// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Tolerances are the published ones; nothing here is tuned to the
// implementation.

#include "rcomp/currents.hpp"
#include "rcomp/mesh/generators.hpp"
#include "rcomp/mesh/geodesics.hpp"
#include "rcomp/mesh/level_sets.hpp"
#include "rcomp/mesh/manifold.hpp"
#include "rcomp/profiles.hpp"
#include "rcomp/quadrature.hpp"
#include "rcomp/rng.hpp"
#include "rcomp/verify.hpp"
#include "rcomp/warped.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace rcomp;

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) {
        detail << " | failed: ";
      } else {
        detail << "; ";
      }
      detail << what;
      pass = false;
    }
  }
};

// Worst relative gap between measured and model values over the grid.
struct Worst {
  double value = 0.0;
  void add(double measured, double bound) { value = std::max(value, rel_err(measured, bound)); }
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

const HypothesisVerdict* find(const std::vector<HypothesisVerdict>& v, const std::string& name) {
  for (const auto& h : v) {
    if (h.name == name) {
      return &h;
    }
  }
  return nullptr;
}

bool holds(const std::vector<HypothesisVerdict>& v, const std::string& name) {
  const auto* h = find(v, name);
  return h && h->holds;
}

bool fails(const std::vector<HypothesisVerdict>& v, const std::string& name) {
  const auto* h = find(v, name);
  return h && !h->holds;
}

// Ball: level area, annulus volume and radial Laplacian equal the model
// values; sup r equals the focal radius. Timed including the full suites.
Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  Worst area, volume, lap, focal;
  for (int n : {2, 3, 5}) {
    for (double R : {1.0, 2.0}) {
      const auto m = euclidean_ball(n, R);
      const ComparisonProfile p = comparison_profile(m);
      const double A = m.boundary_area();
      const auto grid = linspace(0.0, R, 50);
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double d = grid[i];
        area.add(m.level_area(d), A * area_ratio(p, d));
        lap.add(m.radial_laplacian(d), laplacian_bound(n, p.mean_curvature(), d));
        for (std::size_t k = i; k < grid.size(); ++k) {
          volume.add(m.annulus_volume(d, grid[k]), volume_annulus_bound(p, A, d, grid[k]));
        }
      }
      const auto report = run_suite(m);
      o.require(report.status() == SuiteStatus::Pass, "suite n=" + std::to_string(n));
      for (const char* name : {kCheckLaplacian, kCheckVolume, kCheckArea, kCheckFocal}) {
        const CheckResult* c = report.find(name);
        o.require(c && c->verdict == Verdict::Pass && c->equality,
                  std::string(name) + " equality, n=" + std::to_string(n));
      }
      const auto fr = focal_radius(p);
      o.require(fr.has_value(), "no focal radius for the ball");
      if (fr) {
        focal.add(m.max_distance(), *fr);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(area.value <= 1e-9, "level area");
  o.require(volume.value <= 1e-9, "annulus volume");
  o.require(lap.value <= 1e-9, "radial Laplacian");
  o.require(focal.value <= 1e-9, "max r vs focal radius");
  o.require(elapsed < 5.0, "runtime");
  o.detail << "max rel err: area " << area.value << ", volume " << volume.value << ", laplacian "
           << lap.value << ", focal " << focal.value << "; " << elapsed << " s (limit 5 s)";
  return o;
}

// Cylinder with antipodal cap: exact volumes and equality in both bounds;
// the sweep flags the diameter and H < 0 hypotheses.
Outcome criterion2() {
  Outcome o;
  Worst vol, eq_area, eq_volume;
  for (int k : {1, 2}) {
    for (int j = 1; j <= 8; ++j) {
      const auto m = cylinder_cap(k, j);
      vol.add(m.total_volume(), j * unit_sphere_volume(k));
      const ComparisonProfile p = comparison_profile(m);
      const double A = m.boundary_area();
      const auto grid = linspace(0.0, j, 50);
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        eq_area.add(m.level_area(grid[i]), A * area_ratio(p, grid[i]));
        for (std::size_t l = i; l < grid.size(); ++l) {
          eq_volume.add(m.annulus_volume(grid[i], grid[l]), volume_annulus_bound(p, A, grid[i], grid[l]));
        }
      }
    }
    SequenceOptions opts;
    opts.parameters["k"] = k;
    const auto v = summarize_sequence(classify_sequence("cylinder_cap", 1, 8, opts));
    o.require(fails(v.bounded_diameter, "diameter"), "k=" + std::to_string(k) + " diameter not flagged");
    o.require(holds(v.bounded_diameter, "boundary_area") && holds(v.bounded_diameter, "mean_curvature"),
              "k=" + std::to_string(k) + " boundary bounds should hold");
    o.require(fails(v.negative_curvature, "mean_curvature_negative"),
              "k=" + std::to_string(k) + " H<0 not flagged");
  }
  o.require(vol.value < 1e-10, "volume j*Vol(S^k)");
  o.require(eq_area.value <= 1e-9, "area equality");
  o.require(eq_volume.value <= 1e-9, "volume equality");
  o.detail << "max rel err: volume " << vol.value << ", area bound " << eq_area.value
           << ", volume bound " << eq_volume.value << "; verdict flags Diam and H<0";
  return o;
}

// j-fold spheres: bounded diameter and boundary, H ~ cot(1/j) diverging.
Outcome criterion3() {
  Outcome o;
  SequenceOptions opts;
  opts.jobs = 4;
  const auto recs = classify_sequence("jfold", 1, 6, opts);
  double max_diam = 0.0;
  double max_len = 0.0;
  double max_h_err = 0.0;
  bool increasing = true;
  double prev = -INFINITY;
  for (const auto& r : recs) {
    o.require(r.ok(), "j=" + std::to_string(r.j) + ": " + r.error);
    if (!r.ok()) {
      continue;
    }
    max_diam = std::max(max_diam, r.summary.diameter);
    max_len = std::max(max_len, r.summary.boundary_mass);
    max_h_err = std::max(max_h_err, rel_err(r.summary.H_max, 1.0 / std::tan(1.0 / r.j)));
    increasing = increasing && r.summary.H_max > prev;
    prev = r.summary.H_max;
  }
  const auto v = summarize_sequence(recs);
  o.require(max_diam <= 4 * kPi * 1.05, "diameter");
  o.require(max_len <= 4 * kPi, "boundary length");
  o.require(max_h_err <= 0.02, "H vs cot(1/j)");
  o.require(increasing, "H not increasing");
  o.require(fails(v.bounded_diameter, "mean_curvature"), "H bound not flagged");
  o.detail << "max Diam " << max_diam << " (<= " << 4 * kPi * 1.05 << "), max boundary "
           << max_len << " (<= " << 4 * kPi << "), max |H/cot(1/j) - 1| " << max_h_err;
  return o;
}

// Disk mesh refinement: Lipschitz within eps_h, Laplacian violation
// shrinking with h.
Outcome criterion4() {
  Outcome o;
  VerifyConfig cfg;
  std::vector<double> violations;
  double eps_finest = 0.0;
  double time_finest = 0.0;
  for (double h : {0.08, 0.04, 0.02}) {
    const auto t0 = Clock::now();
    const auto m = mesh::MeshManifold::build(mesh::disk_mesh(1.0, h), "disk", {{"R", 1.0}, {"h", h}});
    const auto report = run_suite(m, cfg);
    const double elapsed = seconds_since(t0);
    o.require(report.status() == SuiteStatus::Pass, "suite at h=" + std::to_string(h));
    const CheckResult lip = *report.find(kCheckLipschitz);
    const CheckResult lap = *report.find(kCheckLaplacian);
    o.require(lip.verdict == Verdict::Pass, "Lipschitz at h=" + std::to_string(h));
    violations.push_back(std::max(0.0, -lap.worst_margin));
    if (h == 0.02) {
      eps_finest = lip.tolerance;
      time_finest = elapsed;
    }
  }
  o.require(eps_finest <= 0.01, "eps_h at h=0.02");
  o.require(violations[1] < violations[0] && violations[2] < violations[1], "not monotone");
  o.require(violations[2] <= 10 * 0.02, "violation at h=0.02");
  o.require(time_finest < 60.0, "runtime");
  o.detail << "Laplacian violation " << violations[0] << ", " << violations[1] << ", "
           << violations[2] << " at h = 0.08, 0.04, 0.02; eps_h " << eps_finest << "; "
           << time_finest << " s for the suite at h=0.02 (limit 60 s)";
  return o;
}

// Tail and flat bounds on every generated manifold that satisfies the
// hypotheses; decay of the wells bound.
Outcome criterion5() {
  Outcome o;
  VerifyConfig cfg;
  std::size_t tested = 0;
  std::size_t skipped = 0;
  double worst = INFINITY;
  auto run = [&](const std::string& label, bool certified, auto&& check) {
    if (!certified) {
      ++skipped;
      return;
    }
    const CheckResult c = check();
    ++tested;
    worst = std::min(worst, c.worst_margin);
    o.require(c.verdict == Verdict::Pass && c.sample_count == 50, label);
  };
  std::vector<WarpedProductManifold> warped;
  for (int n : {2, 3, 5}) {
    for (double R : {1.0, 2.0}) {
      warped.push_back(euclidean_ball(n, R));
    }
  }
  for (int k : {1, 2}) {
    for (int j : {1, 4, 8}) {
      warped.push_back(cylinder_cap(k, j));
    }
    warped.push_back(spherical_cap(k, 1.0));
  }
  warped.push_back(exponential_warp(2, 1.0));
  for (const auto& m : warped) {
    run(m.name(), m.hypotheses_certified(),
        [&] { return tail_bound_check(m, resolve_delta_grid(cfg, m.max_distance()), cfg); });
  }
  std::vector<mesh::MeshManifold> meshes;
  meshes.push_back(mesh::MeshManifold::build(mesh::disk_mesh(1.0, 0.04), "disk", {{"h", 0.04}}));
  meshes.push_back(mesh::MeshManifold::build(mesh::cylinder_mesh(2.0, 0.04), "cylinder", {{"h", 0.04}}));
  meshes.push_back(mesh::MeshManifold::build(mesh::saddle_mesh(1.0, 0.05, 0.5), "saddle", {{"h", 0.05}}));
  for (int j : {1, 2, 3}) {
    meshes.push_back(mesh::MeshManifold::build(mesh::sphere_jfold(j, 0.05), "jfold", {{"h", 0.05}}));
  }
  meshes.push_back(mesh::MeshManifold::build(mesh::sphere_with_wells(4, 0.25, 1.2, 0.03, 0.4), "wells",
                                             {{"h", 0.03}}));
  for (const auto& m : meshes) {
    run(m.name(), m.hypotheses_certified(),
        [&] { return tail_bound_check(m, resolve_delta_grid(cfg, m.max_distance()), cfg); });
  }

  bool zero = true;
  for (int n : {2, 3, 5}) {
    for (double H : {-2.0, -0.3, 0.0, 0.5}) {
      zero = zero && swif_tail(ComparisonProfile(n, H), 7.0, 0.0) == 0.0;
    }
  }
  o.require(zero, "swif_tail at delta=0");

  std::vector<double> wells;
  for (int j = 1; j <= 6; ++j) {
    wells.push_back(wells_flat_bound(j, std::pow(j, -3.0), 1.0 / j));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < wells.size(); ++i) {
    decreasing = decreasing && wells[i] < wells[i - 1];
  }
  const double far = wells_flat_bound(1000, 1e-9, 1e-3);
  o.require(decreasing, "wells_flat_bound not decreasing");
  o.require(far < 1.01e-3, "wells_flat_bound does not approach 0");
  o.detail << tested << " certified manifolds, worst tail margin " << worst << " (" << skipped
           << " not certified, excluded); wells_flat_bound " << wells.front() << " -> "
           << wells.back() << ", " << far << " at j=1000";
  return o;
}

// Oracles: closed-form integral vs adaptive quadrature, mesh annulus areas vs
// analytic, and byte-identical reports.
Outcome criterion6(Clock::time_point start) {
  Outcome o;
  Rng rng(20240611);
  double worst_quad = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.next() % 7);
    const double H = rng.uniform(-3.0, 3.0);
    double a = rng.uniform(0.0, 3.0);
    double b = rng.uniform(0.0, 3.0);
    if (a > b) {
      std::swap(a, b);
    }
    const ComparisonProfile p(n, H);
    // Split at the focal radius so the clamp kink is an endpoint.
    double upper = b;
    if (const auto fr = focal_radius(p)) {
      upper = std::min(b, *fr);
    }
    const double quad =
        upper > a ? integrate_adaptive([&](double x) { return area_ratio(p, x); }, a, upper).value : 0.0;
    worst_quad = std::max(worst_quad, rel_err(area_ratio_integral(p, a, b), quad));
  }
  o.require(worst_quad <= 1e-10, "closed form vs quadrature");

  double worst_mesh = 0.0;
  {
    const auto disk = mesh::disk_mesh(1.0, 0.02);
    const auto r = mesh::distance_to_boundary(disk).distance;
    for (auto [lo, hi] : {std::pair{0.0, 0.2}, {0.2, 0.5}, {0.5, 0.9}}) {
      const double exact = kPi * ((1 - lo) * (1 - lo) - (1 - hi) * (1 - hi));
      worst_mesh = std::max(worst_mesh, rel_err(mesh::annulus_area(disk, r, lo, hi), exact));
    }
    const auto cyl = mesh::cylinder_mesh(2.0, 0.02);
    const auto rc = mesh::distance_to_boundary(cyl).distance;
    for (auto [lo, hi] : {std::pair{0.0, 0.3}, {0.3, 0.7}, {0.7, 1.0}}) {
      const double exact = 2 * 2 * kPi * (hi - lo);
      worst_mesh = std::max(worst_mesh, rel_err(mesh::annulus_area(cyl, rc, lo, hi), exact));
    }
  }
  o.require(worst_mesh <= 0.02, "mesh annulus areas");

  VerifyConfig cfg;
  cfg.seed = 17;
  auto full_run = [&] {
    std::string out;
    out += run_suite(euclidean_ball(3, 2.0), cfg).to_json();
    out += run_suite(cylinder_cap(2, 3.0), cfg).to_json();
    out += run_suite(spherical_cap(2, 1.0), cfg).to_json();
    out += run_suite(exponential_warp(2, 1.0), cfg).to_json();
    out += run_suite(mesh::MeshManifold::build(mesh::disk_mesh(1.0, 0.04), "disk", {{"h", 0.04}}), cfg)
               .to_json();
    out += run_suite(mesh::MeshManifold::build(mesh::sphere_jfold(2, 0.05), "jfold", {{"h", 0.05}}), cfg)
               .to_json();
    out += run_suite(mesh::MeshManifold::build(mesh::saddle_mesh(1.0, 0.05, 0.5), "saddle", {{"h", 0.05}}),
                     cfg)
               .to_json();
    return out;
  };
  const std::string first = full_run();
  const std::string second = full_run();
  o.require(first == second, "reports differ between runs");

  const double total = seconds_since(start);
  o.require(total < 300.0, "full suite runtime");
  o.detail << "quadrature max rel err " << worst_quad << " over 1000 tuples; mesh annulus max rel err "
           << worst_mesh << "; reports identical (" << first.size() << " bytes); acceptance run "
           << total << " s (limit 300 s)";
  return o;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "ball equality suite", criterion1},
      {2, "cylinder_cap equality and sweep verdict", criterion2},
      {3, "jfold divergence of H", criterion3},
      {4, "disk mesh comparison convergence", criterion4},
      {5, "tail and flat bounds", criterion5},
      {6, "oracle cross-checks and determinism", [&] { return criterion6(start); }},
  };
  int failures = 0;
  for (const auto& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << "exception: " << ex.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %d [%s] %s: %s\n", e.id, o.pass ? "PASS" : "FAIL", e.title, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
