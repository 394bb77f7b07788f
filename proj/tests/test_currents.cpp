#include "doctest.h"

#include "rcomp/currents.hpp"
#include "rcomp/mesh/generators.hpp"
#include "rcomp/profiles.hpp"
#include "rcomp/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rcomp;

namespace {

constexpr double kPi = std::numbers::pi;

const HypothesisVerdict& hyp(const std::vector<HypothesisVerdict>& v, const std::string& name) {
  for (const auto& h : v) {
    if (h.name == name) {
      return h;
    }
  }
  FAIL("missing hypothesis " << name);
  return v.front();
}

bool says(const SequenceVerdict& v, const std::string& text) {
  for (const auto& s : v.statements) {
    if (s.find(text) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("flat_upper_inner examples") {
  CHECK(flat_upper_inner(euclidean_ball(3, 1.0), 0.0) == 0.0);
  for (double d : {0.1, 0.5, 1.0}) {
    CHECK(flat_upper_inner(cylinder_cap(1, 3.0), d) == doctest::Approx(2 * kPi * d).epsilon(1e-12));
  }
  CHECK(flat_upper_inner(euclidean_ball(2, 1.0), 0.5) == doctest::Approx(0.75 * kPi).epsilon(1e-12));
  // Saturates at the total volume.
  CHECK(flat_upper_inner(euclidean_ball(2, 1.0), 5.0) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("flat_upper_inner is nondecreasing") {
  auto m = mesh::MeshManifold::build(mesh::disk_mesh(1.0, 0.08), "disk", {{"h", 0.08}});
  CHECK(flat_upper_inner(m, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  double prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    const double f = flat_upper_inner(m, 0.03 * i);
    CHECK(f >= prev - 1e-12);
    prev = f;
  }
  CHECK(prev == doctest::Approx(m.total_area()).epsilon(1e-9));
  // Annulus 1 - (1 - 0.5)^2 of the unit disk.
  CHECK(flat_upper_inner(m, 0.5) == doctest::Approx(0.75 * kPi).epsilon(0.03));
}

TEST_CASE("tail bound: equality on ball and cylinder, strict on the spherical cap") {
  VerifyConfig cfg;
  auto ball = euclidean_ball(3, 1.0);
  auto c = tail_bound_check(ball, resolve_delta_grid(cfg, 1.0), cfg);
  CHECK(c.verdict == Verdict::Pass);
  CHECK(c.equality);
  auto cyl = cylinder_cap(2, 2.0);
  c = tail_bound_check(cyl, resolve_delta_grid(cfg, 2.0), cfg);
  CHECK(c.verdict == Verdict::Pass);
  CHECK(c.equality);
  auto cap = spherical_cap(1, 1.2);
  c = tail_bound_check(cap, resolve_delta_grid(cfg, 1.2), cfg);
  CHECK(c.verdict == Verdict::Pass);
  CHECK_FALSE(c.equality);
  CHECK(c.worst_margin >= 0.0);
  CHECK(c.max_abs_margin > 1e-3);
}

TEST_CASE("swif_tail vanishes at zero") {
  for (double H : {-2.0, -0.5, 0.0, 0.7}) {
    CHECK(swif_tail(ComparisonProfile{3, H}, 4.0, 0.0) == 0.0);
  }
}

TEST_CASE("wells_flat_bound examples") {
  CHECK(wells_flat_bound(0, 0.1, 0.0) == 0.0);
  const double expect = 0.01 + 4 * 2 * kPi * (1 - std::cos(0.05));
  CHECK(wells_flat_bound(4, 0.05, 0.01) == doctest::Approx(expect).epsilon(1e-12));
  double prev = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 40; ++j) {
    const double b = wells_flat_bound(j, std::pow(j, -3.0), 1.0 / j);
    CHECK(b < prev);
    prev = b;
  }
  CHECK(prev < 0.03);
}

TEST_CASE("wells accounting agrees with the mesh area") {
  const double h = 0.02;
  auto acc = mesh::wells_accounting(4, 0.25, 1.2, 0.4);
  auto s = mesh::sphere_with_wells(4, 0.25, 1.2, h, 0.4);
  CHECK(s.total_area() == doctest::Approx(acc.expected_area).epsilon(0.03));
  CHECK(acc.flat_bound == doctest::Approx(wells_flat_bound(4, 0.25, 1.2)).epsilon(1e-12));
}

TEST_CASE("fit_trend") {
  std::vector<int> js{1, 2, 3, 4};
  auto lin = fit_trend("x", js, {1, 2, 3, 4});
  CHECK(lin.strictly_increasing);
  CHECK(lin.growth_exponent == doctest::Approx(1.0));
  CHECK(lin.diverging);
  auto sat = fit_trend("x", js, {1.0, 1.1, 1.15, 1.17});
  CHECK(sat.strictly_increasing);
  CHECK_FALSE(sat.diverging);
  auto flat = fit_trend("x", js, {2, 2, 2, 2});
  CHECK_FALSE(flat.diverging);
  CHECK(flat.max == 2.0);
  auto neg = fit_trend("x", js, {-1, 0, 1, 2});
  CHECK(std::isnan(neg.growth_exponent));
  CHECK_FALSE(neg.diverging);
  auto two = fit_trend("x", {1, 2}, {1, 100});
  CHECK_FALSE(two.diverging);
}

TEST_CASE("cylinder_cap sequence: diameter and sign of H fail") {
  for (int k : {1, 2}) {
    CAPTURE(k);
    SequenceOptions opts;
    opts.parameters["k"] = k;
    auto recs = classify_sequence("cylinder_cap", 1, 8, opts);
    REQUIRE(recs.size() == 8);
    for (const auto& r : recs) {
      REQUIRE(r.ok());
      CHECK(r.summary.mass == doctest::Approx(r.j * unit_sphere_volume(k)).epsilon(1e-10));
      CHECK(r.summary.boundary_mass == doctest::Approx(unit_sphere_volume(k)).epsilon(1e-12));
      CHECK(r.summary.H_max == 0.0);
      CHECK(r.flags == compute_flags(r.summary, r.boundary_diameter, r.curvature_certified,
                                     opts.thresholds));
    }
    auto v = summarize_sequence(recs, opts.thresholds);
    CHECK_FALSE(hyp(v.bounded_diameter, "diameter").holds);
    CHECK(hyp(v.bounded_diameter, "boundary_area").holds);
    CHECK(hyp(v.bounded_diameter, "mean_curvature").holds);
    CHECK(hyp(v.bounded_diameter, "curvature").holds);
    CHECK_FALSE(hyp(v.negative_curvature, "mean_curvature_negative").holds);
    CHECK(says(v, "hypothesis diameter fails"));
    CHECK(says(v, "hypothesis mean_curvature_negative fails"));
    CHECK(v.tail_chain_applicable);
    CHECK(v.tail_chain_pairs > 0);
    CHECK(v.tail_chain_violations == 0);
  }
}

TEST_CASE("jfold sequence: H diverges, diameter and boundary stay bounded") {
  SequenceOptions opts;
  opts.jobs = 3;
  auto recs = classify_sequence("jfold", 1, 6, opts);
  REQUIRE(recs.size() == 6);
  double prevH = -std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    CAPTURE(r.j);
    REQUIRE(r.ok());
    CHECK(r.source == "mesh");
    CHECK(r.summary.diameter <= 4 * kPi * 1.05);
    CHECK(r.summary.boundary_mass <= 4 * kPi);
    CHECK(r.summary.H_max == doctest::Approx(1.0 / std::tan(1.0 / r.j)).epsilon(0.02));
    CHECK(r.summary.H_max > prevH);
    prevH = r.summary.H_max;
    CHECK(r.flags == compute_flags(r.summary, r.boundary_diameter, r.curvature_certified,
                                   opts.thresholds));
  }
  auto v = summarize_sequence(recs);
  CHECK_FALSE(hyp(v.bounded_diameter, "mean_curvature").holds);
  CHECK(hyp(v.bounded_diameter, "diameter").holds);
  CHECK(hyp(v.bounded_diameter, "boundary_area").holds);
  CHECK(says(v, "hypothesis mean_curvature fails"));
}

TEST_CASE("concurrent sweep matches the serial one") {
  SequenceOptions serial;
  SequenceOptions parallel;
  parallel.jobs = 4;
  auto a = classify_sequence("ball", 1, 5, serial);
  auto b = classify_sequence("ball", 1, 5, parallel);
  CHECK(sequence_csv(a) == sequence_csv(b));
  CHECK(sequence_json(a).dump() == sequence_json(b).dump());
}

TEST_CASE("wells sequence: flat bound decreases toward zero") {
  SequenceOptions opts;
  auto recs = classify_sequence("wells", 1, 6, opts);
  REQUIRE(recs.size() == 6);
  CHECK_FALSE(recs[0].ok());
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& r : recs) {
    REQUIRE(r.wells_flat_bound.has_value());
    CHECK(*r.wells_flat_bound < prev);
    prev = *r.wells_flat_bound;
  }
  CHECK(prev < 0.2);
  auto v = summarize_sequence(recs);
  CHECK(v.failed_indices == std::vector<int>{1});
  CHECK(hyp(v.bounded_diameter, "boundary_area").holds);
  CHECK(hyp(v.bounded_diameter, "mean_curvature").holds);
  CHECK(hyp(v.bounded_diameter, "diameter").holds);
  CHECK(says(v, "all uniform bounds hold"));
  CHECK(v.tail_chain_violations == 0);
}

TEST_CASE("generator failures are recorded per index") {
  FamilyGenerator gen = [](int j) {
    if (j == 2) {
      throw std::runtime_error("boom");
    }
    SequenceRecord r;
    r.family = "toy";
    r.j = j;
    r.source = "warped";
    return r;
  };
  auto recs = classify_sequence(gen, 1, 3, 2);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].ok());
  CHECK_FALSE(recs[1].ok());
  CHECK(recs[1].error.find("boom") != std::string::npos);
  CHECK(recs[2].ok());
}

TEST_CASE("sequence CSV layout") {
  SequenceOptions opts;
  opts.deltas = {0.1, 0.2};
  auto csv = sequence_csv(classify_sequence("cylinder_cap", 1, 2, opts));
  auto first = csv.substr(0, csv.find('\n'));
  CHECK(first.rfind("family,j,status,source,mass,boundary_mass,diameter", 0) == 0);
  CHECK(first.find("flat@") != std::string::npos);
  CHECK(first.find("tail@") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
