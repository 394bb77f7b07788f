#include "doctest.h"

#include "rcomp/errors.hpp"
#include "rcomp/mesh/generators.hpp"
#include "rcomp/mesh/manifold.hpp"
#include "rcomp/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rcomp;

namespace {

constexpr double kPi = std::numbers::pi;

const CheckResult& get(const VerificationReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  REQUIRE_MESSAGE(c != nullptr, name);
  return *c;
}

mesh::MeshManifold disk(double h) {
  return mesh::MeshManifold::build(mesh::disk_mesh(1.0, h), "disk", {{"R", 1.0}, {"h", h}});
}

}  // namespace

TEST_CASE("delta grid") {
  VerifyConfig cfg;
  auto g = resolve_delta_grid(cfg, 2.0);
  REQUIRE(g.size() == 50);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(2.0));
  for (std::size_t i = 1; i < g.size(); ++i) {
    CHECK(g[i] > g[i - 1]);
  }
  cfg.delta_grid = {0.3, 0.1, 0.2};
  auto e = resolve_delta_grid(cfg, 2.0);
  CHECK(e == std::vector<double>{0.1, 0.2, 0.3});
}

TEST_CASE("ball suite: equality in every comparison") {
  for (int n : {2, 3, 5}) {
    for (double R : {1.0, 2.0}) {
      CAPTURE(n);
      CAPTURE(R);
      auto r = run_suite(euclidean_ball(n, R));
      CHECK(r.status() == SuiteStatus::Pass);
      CHECK(r.hypotheses_certified);
      for (const char* name : {kCheckLaplacian, kCheckVolume, kCheckArea, kCheckFocal, kCheckJacobian,
                               kCheckTail}) {
        CAPTURE(name);
        const auto& c = get(r, name);
        CHECK(c.verdict == Verdict::Pass);
        CHECK(c.equality);
        CHECK(c.sample_count > 0);
        CHECK(std::abs(c.worst_margin) <= 1e-9);
      }
      // The comparison diameter bound is not sharp for the ball.
      const auto& d = get(r, kCheckDiameter);
      CHECK(d.verdict == Verdict::Pass);
      CHECK_FALSE(d.equality);
      CHECK(r.max_distance == doctest::Approx(R).epsilon(1e-9));
    }
  }
}

TEST_CASE("cylinder suite: equality with H = 0") {
  auto r = run_suite(cylinder_cap(1, 3.0));
  CHECK(r.status() == SuiteStatus::Pass);
  CHECK(r.H_max == 0.0);
  for (const char* name : {kCheckVolume, kCheckArea, kCheckTail}) {
    CAPTURE(name);
    CHECK(get(r, name).verdict == Verdict::Pass);
    CHECK(get(r, name).equality);
  }
  // No focal radius and no diameter bound when H = 0.
  CHECK(get(r, kCheckFocal).verdict == Verdict::Skipped);
  CHECK(get(r, kCheckDiameter).verdict == Verdict::Skipped);
}

TEST_CASE("spherical cap suite: strict inequalities") {
  auto r = run_suite(spherical_cap(2, 1.0));
  CHECK(r.status() == SuiteStatus::Pass);
  const auto& area = get(r, kCheckArea);
  CHECK(area.verdict == Verdict::Pass);
  CHECK_FALSE(area.equality);
  CHECK(area.worst_margin >= -1e-9);
}

TEST_CASE("exponential warp is gated as hypotheses-violated") {
  auto r = run_suite(exponential_warp(2, 1.0));
  CHECK(r.status() == SuiteStatus::HypothesesViolated);
  CHECK_FALSE(r.hypotheses_certified);
  const auto& h = get(r, kCheckHypotheses);
  CHECK(h.verdict == Verdict::Fail);
  CHECK_FALSE(h.witnesses.empty());
  for (const auto& c : r.checks) {
    if (c.name != kCheckHypotheses) {
      CHECK(c.verdict != Verdict::Fail);
    }
  }
}

TEST_CASE("enabled restricts the suite") {
  VerifyConfig cfg;
  cfg.enabled = {kCheckVolume};
  auto r = run_suite(euclidean_ball(2, 1.0), cfg);
  for (const auto& c : r.checks) {
    if (c.name != kCheckVolume && c.name != kCheckHypotheses) {
      CHECK(c.verdict == Verdict::Skipped);
    }
  }
  CHECK(get(r, kCheckVolume).verdict == Verdict::Pass);
}

TEST_CASE("disk mesh suite converges") {
  double prev = -std::numeric_limits<double>::infinity();
  for (double h : {0.08, 0.04}) {
    CAPTURE(h);
    auto r = run_suite(disk(h));
    CHECK(r.status() == SuiteStatus::Pass);
    const auto& lap = get(r, kCheckLaplacian);
    CHECK(lap.verdict == Verdict::Pass);
    CHECK(lap.worst_margin <= 0.0);
    CHECK(lap.worst_margin > prev);
    CHECK(-lap.worst_margin <= 10 * h);
    prev = lap.worst_margin;
    CHECK(get(r, kCheckLipschitz).verdict == Verdict::Pass);
    CHECK(get(r, kCheckLipschitz).tolerance <= 0.5 * h + 1e-15);
    CHECK(get(r, kCheckJacobian).verdict == Verdict::Skipped);
  }
}

TEST_CASE("corrupted field breaks the Lipschitz check with an edge witness") {
  auto s = mesh::disk_mesh(1.0, 0.08);
  auto clean = mesh::MeshManifold::build(s, "disk", {{"h", 0.08}});
  std::vector<double> bad = clean.distance().values();
  for (double& x : bad) {
    x *= 1.1;
  }
  auto m = mesh::MeshManifold::build(s, "disk", {{"h", 0.08}}, mesh::ScalarField(bad));
  auto c = check_lipschitz(m);
  CHECK(c.verdict == Verdict::Fail);
  REQUIRE_FALSE(c.witnesses.empty());
  CHECK(c.witnesses.front().find("edge") != std::string::npos);
  auto r = run_suite(m);
  CHECK(r.status() == SuiteStatus::Fail);
}

TEST_CASE("saddle mesh is gated as hypotheses-violated") {
  auto m = mesh::MeshManifold::build(mesh::saddle_mesh(1.0, 0.08, 0.5), "saddle", {{"h", 0.08}});
  CHECK_FALSE(m.hypotheses_certified());
  CHECK(m.certificate().min_gaussian_curvature < 0.0);
  auto r = run_suite(m);
  CHECK(r.status() == SuiteStatus::HypothesesViolated);
  for (const auto& c : r.checks) {
    if (c.name != kCheckHypotheses) {
      CHECK(c.verdict != Verdict::Fail);
    }
  }
}

TEST_CASE("cylinder mesh meets the flat bounds with equality") {
  auto m = mesh::MeshManifold::build(mesh::cylinder_mesh(2.0, 0.04), "cylinder", {{"h", 0.04}});
  auto r = run_suite(m);
  CHECK(r.status() == SuiteStatus::Pass);
  CHECK(r.H_max == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(get(r, kCheckArea).verdict == Verdict::Pass);
  CHECK(get(r, kCheckArea).equality);
  CHECK(r.boundary_area == doctest::Approx(4 * kPi).epsilon(0.01));
}

TEST_CASE("closed surface is rejected") {
  CHECK_THROWS_AS(mesh::MeshManifold::build(mesh::sphere_mesh(0.2)), ValidationError);
}

TEST_CASE("field of the wrong size is rejected") {
  CHECK_THROWS_AS(mesh::MeshManifold::build(mesh::disk_mesh(1.0, 0.2), "disk", {}, mesh::ScalarField(std::vector<double>(3, 0.0))),
                  ValidationError);
}

TEST_CASE("report JSON is deterministic and well formed") {
  VerifyConfig cfg;
  cfg.seed = 7;
  auto a = run_suite(euclidean_ball(3, 2.0), cfg).to_json();
  auto b = run_suite(euclidean_ball(3, 2.0), cfg).to_json();
  CHECK(a == b);
  auto j = nlohmann::json::parse(a);
  CHECK(j["report_version"] == 1);
  CHECK(j["status"] == "pass");
  CHECK(j["provenance"]["seed"] == 7);
  REQUIRE(j["checks"].is_array());
  std::vector<std::string> names;
  for (const auto& c : j["checks"]) {
    names.push_back(c["name"]);
  }
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(a.back() == '\n');

  auto m1 = run_suite(disk(0.08), cfg).to_json();
  auto m2 = run_suite(disk(0.08), cfg).to_json();
  CHECK(m1 == m2);
}

TEST_CASE("text summary names every check") {
  auto r = run_suite(euclidean_ball(2, 1.0));
  auto t = r.to_text();
  for (const auto& name : all_check_names()) {
    CHECK(t.find(name) != std::string::npos);
  }
}
