#include "doctest.h"

#include "rcomp/errors.hpp"
#include "rcomp/mesh/generators.hpp"
#include "rcomp/mesh/geodesics.hpp"
#include "rcomp/mesh/io.hpp"
#include "rcomp/mesh/level_sets.hpp"
#include "rcomp/mesh/operators.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace rcomp;
using namespace rcomp::mesh;

namespace {

constexpr double kPi = std::numbers::pi;

int nearest_vertex(const TriangulatedSurface& s, const Vec3& p) {
  int best = 0;
  for (std::size_t i = 1; i < s.vertex_count(); ++i) {
    if ((s.position(static_cast<int>(i)) - p).norm() < (s.position(best) - p).norm()) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("surface validation") {
  std::vector<Vec3> v{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 1)};
  SUBCASE("edge shared by three faces") {
    CHECK_THROWS_WITH_AS(TriangulatedSurface(v, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}),
                         doctest::Contains("non-manifold"), ValidationError);
  }
  SUBCASE("inconsistent orientation") {
    CHECK_THROWS_WITH_AS(TriangulatedSurface({v[0], v[1], v[2], v[3]}, {{0, 1, 2}, {0, 1, 3}}),
                         doctest::Contains("orientation"), ValidationError);
  }
  SUBCASE("zero-area face") {
    CHECK_THROWS_AS(TriangulatedSurface({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)}, {{0, 1, 2}}),
                    ValidationError);
  }
  SUBCASE("index out of range") {
    CHECK_THROWS_AS(TriangulatedSurface({v[0], v[1], v[2]}, {{0, 1, 7}}), ValidationError);
  }
  SUBCASE("bowtie vertex") {
    std::vector<Vec3> w{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(-1, 0, 0), Vec3(-1, -1, 0)};
    CHECK_THROWS_AS(TriangulatedSurface(w, {{0, 1, 2}, {0, 3, 4}}), ValidationError);
  }
  SUBCASE("single triangle") {
    TriangulatedSurface t({v[0], v[1], v[2]}, {{0, 1, 2}});
    CHECK(t.boundary_loops().size() == 1);
    CHECK(t.face_area(0) == doctest::Approx(0.5));
  }
}

TEST_CASE("generators produce valid surfaces") {
  const auto disk = disk_mesh(1.0, 0.05);
  CHECK(disk.boundary_loops().size() == 1);
  CHECK(disk.total_area() == doctest::Approx(kPi).epsilon(0.01));

  const auto cyl = cylinder_mesh(1.0, 0.05);
  CHECK(cyl.boundary_loops().size() == 2);
  CHECK(cyl.total_area() == doctest::Approx(2 * kPi).epsilon(0.01));

  const auto sphere = sphere_mesh(0.05);
  CHECK_FALSE(sphere.has_boundary());
  CHECK(sphere.total_area() == doctest::Approx(4 * kPi).epsilon(0.01));

  const auto j1 = sphere_jfold(1, 0.05);
  const double caps = 2 * 2 * kPi * (1 - std::cos(1.0));
  CHECK(j1.total_area() == doctest::Approx(4 * kPi - caps).epsilon(0.02));

  const auto j3 = sphere_jfold(3, 0.05);
  CHECK(boundary_length(j3) == doctest::Approx(2 * 2 * kPi * 3 * std::sin(1.0 / 3)).epsilon(0.01));
  CHECK(boundary_length(j3) <= 4 * kPi);
  CHECK(j3.total_area() == doctest::Approx(3 * (4 * kPi - 2 * 2 * kPi * (1 - std::cos(1.0 / 3)))).epsilon(0.02));

  CHECK_THROWS(disk_mesh(-1.0, 0.1));
  CHECK_THROWS(sphere_jfold(0, 0.1));
}

TEST_CASE("wells generator and accounting") {
  CHECK_THROWS_AS(wells_accounting(4, 0.05, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(sphere_with_wells(4, 0.05, 0.01, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(wells_accounting(50, 0.5, 50.0), std::invalid_argument);

  const auto acc = wells_accounting(4, 0.2, 0.8);
  const double cap = 2 * kPi * (1 - std::cos(0.2));
  CHECK(acc.cap_area == doctest::Approx(cap).epsilon(1e-14));
  CHECK(acc.flat_bound == doctest::Approx(0.8 + 4 * cap).epsilon(1e-14));
  // Tube plus bottom make up exactly v/N.
  const double a = std::sin(0.2);
  CHECK(2 * kPi * a * acc.depth + kPi * a * a == doctest::Approx(0.2).epsilon(1e-14));

  const auto s = sphere_with_wells(4, 0.2, 0.8, 0.04);
  CHECK_FALSE(s.has_boundary());
  const double lo = 4 * kPi - 4 * cap;
  CHECK(s.total_area() >= lo * 0.98);
  CHECK(s.total_area() <= lo + 0.8 + 0.02 * lo);
  CHECK(s.total_area() == doctest::Approx(acc.expected_area).epsilon(0.03));

  const auto holed = sphere_with_wells(3, 0.2, 0.6, 0.04, 0.5);
  CHECK(holed.boundary_loops().size() == 1);
  CHECK(wells_accounting(0, 0.0, 0.0).flat_bound == 0.0);
}

TEST_CASE("mesh io round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "rcomp_test_io";
  std::filesystem::create_directories(dir);
  const auto disk = disk_mesh(1.0, 0.1);
  const auto off = (dir / "d.off").string();
  const auto off2 = (dir / "d2.off").string();
  save_mesh(disk, off);
  const auto loaded = load_mesh(off);
  CHECK(loaded.faces() == disk.faces());
  CHECK(loaded.vertices() == disk.vertices());
  save_mesh(loaded, off2);
  CHECK(slurp(off) == slurp(off2));

  const auto obj = (dir / "d.obj").string();
  save_mesh(disk, obj);
  CHECK(load_mesh(obj).faces() == disk.faces());

  std::istringstream bad("OFF\n3 1 0\n0 0 0\n1 0 0\n0 x 0\n3 0 1 2\n");
  try {
    read_off(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
  std::istringstream obj_in("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2//2 -1\n");
  CHECK(read_obj(obj_in).face_count() == 1);

  ScalarField f(std::vector<double>(disk.vertex_count(), 0.25));
  const auto csv = (dir / "f.csv").string();
  save_field_csv(f, csv);
  CHECK(load_field_csv(csv, disk.vertex_count()).values() == f.values());
  CHECK_THROWS_AS(load_field_csv(csv, disk.vertex_count() + 1), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fast marching distance to boundary") {
  const double h = 0.05;
  const auto disk = disk_mesh(1.0, h);
  const auto r = distance_to_boundary(disk).distance;
  CHECK(std::abs(r[0] - 1.0) <= 3 * h);
  for (int v : disk.boundary_loops()[0]) {
    CHECK(r[static_cast<std::size_t>(v)] == 0.0);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < disk.vertex_count(); ++i) {
    worst = std::max(worst, std::abs(r[i] - (1.0 - disk.position(static_cast<int>(i)).norm())));
  }
  CHECK(worst <= 3 * h);

  const auto cyl = cylinder_mesh(1.0, h);
  const auto rc = distance_to_boundary(cyl).distance;
  for (std::size_t i = 0; i < cyl.vertex_count(); ++i) {
    const double z = cyl.position(static_cast<int>(i)).z();
    CHECK(std::abs(rc[i] - std::min(z, 1 - z)) <= 2 * h);
  }
  CHECK_THROWS_AS(distance_to_boundary(sphere_mesh(0.2)), std::invalid_argument);
}

TEST_CASE("discrete Lipschitz property of fast marching") {
  const auto disk = disk_mesh(1.0, 0.04);
  const auto r = distance_to_boundary(disk).distance;
  for (std::size_t v = 0; v < disk.vertex_count(); ++v) {
    for (int u : disk.neighbors(static_cast<int>(v))) {
      const double len = (disk.position(u) - disk.position(static_cast<int>(v))).norm();
      CHECK(std::abs(r[v] - r[static_cast<std::size_t>(u)]) <= len * (1 + 1e-12));
    }
  }
}

TEST_CASE("cotan laplacian") {
  const auto disk = disk_mesh(1.0, 0.02);
  const auto r = distance_to_boundary(disk).distance;
  const int v = nearest_vertex(disk, Vec3(0.5, 0.0, 0.0));
  CHECK(cotan_laplacian(disk, r, v) == doctest::Approx(-2.0).epsilon(0.1));

  std::vector<double> lin;
  for (const Vec3& p : disk.vertices()) {
    lin.push_back(2.0 * p.x() - 3.0 * p.y() + 1.0);
  }
  const ScalarField linear(lin);
  for (int w : {0, 100, 500}) {
    CHECK(std::abs(cotan_laplacian(disk, linear, w)) <= 1e-9);
  }
  CHECK_THROWS_AS(cotan_laplacian(disk, r, disk.boundary_loops()[0][0]), std::invalid_argument);

  const auto cyl = cylinder_mesh(1.0, 0.05);
  std::vector<double> t;
  for (const Vec3& p : cyl.vertices()) {
    t.push_back(p.z());
  }
  const int mid = nearest_vertex(cyl, Vec3(1, 0, 0.5));
  CHECK(std::abs(cotan_laplacian(cyl, ScalarField(t), mid)) <= 0.05);
}

TEST_CASE("boundary mean curvature and Gaussian curvature") {
  const auto disk = disk_mesh(1.0, 0.05);
  for (int v : disk.boundary_loops()[0]) {
    CHECK(boundary_mean_curvature(disk, v) == doctest::Approx(-1.0).epsilon(0.05));
  }
  CHECK_THROWS_AS(boundary_mean_curvature(disk, 0), std::invalid_argument);
  CHECK(std::abs(gaussian_curvature(disk, 0)) <= 1e-9);

  const auto cyl = cylinder_mesh(1.0, 0.05);
  // Straight rim in the intrinsic (flat) metric.
  CHECK(std::abs(boundary_mean_curvature(cyl, cyl.boundary_loops()[0][0])) <= 0.05);

  const auto sphere = sphere_mesh(0.05);
  for (int v : {10, 200, 1000, 3000}) {
    CHECK(gaussian_curvature(sphere, v) == doctest::Approx(1.0).epsilon(0.05));
  }

  const auto saddle = saddle_mesh(1.0, 0.05, 0.5);
  CHECK(gaussian_curvature(saddle, 0) < 0.0);

  for (int j : {1, 2, 3}) {
    const auto s = sphere_jfold(j, 0.04);
    const double expected = 1.0 / std::tan(1.0 / j);
    for (int v : s.boundary_loops()[0]) {
      CHECK(boundary_mean_curvature(s, v) == doctest::Approx(expected).epsilon(0.02));
    }
  }
}

TEST_CASE("level sets and annulus areas") {
  const auto disk = disk_mesh(1.0, 0.02);
  const auto r = distance_to_boundary(disk).distance;
  CHECK(level_length(disk, r, 0.25) == doctest::Approx(2 * kPi * 0.75).epsilon(0.02));
  CHECK(annulus_area(disk, r, 0.3, 0.3) == 0.0);
  CHECK(annulus_area(disk, r, 0.0, INFINITY) == doctest::Approx(disk.total_area()).epsilon(1e-9));
  const double ab = annulus_area(disk, r, 0.1, 0.3);
  const double bc = annulus_area(disk, r, 0.3, 0.6);
  CHECK(ab + bc == doctest::Approx(annulus_area(disk, r, 0.1, 0.6)).epsilon(1e-9));
  CHECK(level_length(disk, r, 1.5) == 0.0);
  CHECK_THROWS_AS(annulus_area(disk, r, 0.5, 0.2), std::invalid_argument);

  // Coarea: d/d delta of the sublevel area is the level length.
  for (double d : {0.1, 0.3, 0.5, 0.7}) {
    const double e = 0.005;
    const double deriv = (annulus_area(disk, r, 0.0, d + e) - annulus_area(disk, r, 0.0, d - e)) / (2 * e);
    CHECK(deriv == doctest::Approx(level_length(disk, r, d)).epsilon(0.02));
  }

  const auto cyl = cylinder_mesh(1.0, 0.02);
  const auto rc = distance_to_boundary(cyl).distance;
  // {0.2 < min(t, 1-t) <= 0.5} has width 2 * 0.3.
  CHECK(annulus_area(cyl, rc, 0.2, 0.5) == doctest::Approx(2 * 0.3 * 2 * kPi).epsilon(0.02));
}

TEST_CASE("mesh diameter") {
  CHECK(mesh_diameter(disk_mesh(1.0, 0.05)) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(mesh_diameter(sphere_mesh(0.05, 0.05)) == doctest::Approx(kPi).epsilon(0.05));
  const TriangulatedSurface tri({Vec3(0, 0, 0), Vec3(3, 0, 0), Vec3(0, 1, 0)}, {{0, 1, 2}});
  CHECK(mesh_diameter(tri) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  const TriangulatedSurface two({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(5, 0, 0), Vec3(6, 0, 0),
                                 Vec3(5, 1, 0)},
                                {{0, 1, 2}, {3, 4, 5}});
  CHECK_THROWS_AS(mesh_diameter(two), std::invalid_argument);
}

TEST_CASE("cut flags on the disk") {
  const auto disk = disk_mesh(1.0, 0.05);
  const auto r = distance_to_boundary(disk).distance;
  const auto flags = cut_flags(disk, r);
  CHECK(flags[0]);
  CHECK(flags.count() < disk.vertex_count() / 4);
}
