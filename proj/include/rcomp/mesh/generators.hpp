#pragma once

#include "rcomp/mesh/surface.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace rcomp::mesh {

/// Flat disk of radius R in the xy-plane: concentric rings with 6i vertices.
TriangulatedSurface disk_mesh(double R, double h);

/// Flat disk lifted to z = amplitude (x^2 - y^2); Gaussian curvature < 0.
TriangulatedSurface saddle_mesh(double R, double h, double amplitude);

/// Unit-radius cylinder S^1 x [0, height]; both rims are boundary.
TriangulatedSurface cylinder_mesh(double height, double h);

/// Unit sphere without polar caps of angular radius north_cap / south_cap
/// (0 keeps the pole as a vertex).
TriangulatedSurface sphere_mesh(double h, double north_cap = 0.0, double south_cap = 0.0);

/// j-fold cover of the unit sphere minus the polar caps of radius 1/j,
/// parametrised by the lifted longitude in [0, 2 pi j). Sheets share
/// positions in 3-space; the geometry is intrinsic to the connectivity.
TriangulatedSurface sphere_jfold(int j, double h);

/// Bookkeeping for the sphere with N closed cylindrical wells.
struct WellsAccounting {
  int wells = 0;
  double cap_radius = 0.0;   // angular radius R_w of each replaced cap
  double volume_budget = 0.0;  // v: total area of all wells
  double hole = 0.0;         // angular radius of the boundary hole (0 = closed)
  double mouth_radius = 0.0;   // sin R_w
  double depth = 0.0;        // tube depth: area v/N unless capped by max_depth
  double cap_area = 0.0;     // 2 pi (1 - cos R_w)
  double well_area = 0.0;    // <= v/N
  double expected_area = 0.0;
  /// Upper bound on the intrinsic diameter of the wells surface.
  double diameter_bound = 0.0;
  /// v + N * cap_area: upper bound on the flat distance to the round sphere.
  double flat_bound = 0.0;
  std::vector<Vec3> centers;
};

/// Exact areas for wells of rim radius a = sin(R_w) consisting of a tube and
/// a flat bottom. Each well has area v/N, or less when the tube depth is
/// capped at max_depth, so the wells' combined area is at most v. Throws
/// std::invalid_argument when v/N is smaller than the bottom disk, or the
/// caps overlap each other or the hole.
WellsAccounting wells_accounting(int N, double R_w, double v, double hole = 0.0,
                                 double clearance = 0.0,
                                 double max_depth = std::numeric_limits<double>::infinity());

/// Unit sphere with N caps of radius R_w replaced by closed wells (see
/// wells_accounting) and an optional boundary hole around the north pole.
/// Requires h < R_w / 3.
TriangulatedSurface sphere_with_wells(int N, double R_w, double v, double h, double hole = 0.0,
                                      double max_depth = std::numeric_limits<double>::infinity());

/// Named generator ("disk", "saddle", "cylinder", "sphere", "jfold", "wells",
/// "triangle") with parameters from the map.
TriangulatedSurface make_mesh(const std::string& family, const std::map<std::string, double>& params);

}  // namespace rcomp::mesh
