#pragma once

#include "rcomp/mesh/surface.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rcomp::mesh {

/// Ric >= 0 diagnostic for surfaces: the discrete Gaussian curvature at
/// interior vertices must be >= -tolerance.
struct CurvatureCertificate {
  double tolerance = 0.0;
  double min_gaussian_curvature = 0.0;
  int worst_vertex = -1;
  std::size_t violating_vertices = 0;

  bool ok() const { return violating_vertices == 0; }
};

/// A triangulated surface together with everything the checks need: the
/// distance-to-boundary field, foot points, cut flags and boundary curvature.
class MeshManifold {
 public:
  /// Computes r by fast marching unless `field` is given (e.g. an imported
  /// or deliberately corrupted field). Throws ValidationError for surfaces
  /// without boundary.
  static MeshManifold build(TriangulatedSurface surface, std::string name = "mesh",
                            std::map<std::string, double> parameters = {},
                            std::optional<ScalarField> field = std::nullopt,
                            double curvature_tolerance = 1e-6);

  const TriangulatedSurface& surface() const { return surface_; }
  const ScalarField& distance() const { return distance_; }
  /// Boundary vertex reached by backtracking upwind edges from each vertex.
  const std::vector<int>& foot() const { return foot_; }
  const CutFlags& cut() const { return cut_; }
  /// Discrete boundary mean curvature; NaN at interior vertices.
  const std::vector<double>& boundary_curvature() const { return boundary_curvature_; }
  const CurvatureCertificate& certificate() const { return certificate_; }
  bool hypotheses_certified() const { return certificate_.ok(); }

  const std::string& name() const { return name_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  int dimension() const { return 2; }

  /// Nominal mesh size: the generator's "h" when known, else the mean edge length.
  double resolution() const { return resolution_; }
  double max_mean_curvature() const { return max_curvature_; }
  double boundary_length() const { return boundary_length_; }
  double total_area() const { return surface_.total_area(); }
  double max_distance() const { return distance_.max(); }
  /// Mean curvature at the foot of v; NaN when the foot is unknown.
  double foot_curvature(int v) const;

 private:
  MeshManifold(TriangulatedSurface surface) : surface_(std::move(surface)) {}

  TriangulatedSurface surface_;
  ScalarField distance_;
  std::vector<int> foot_;
  CutFlags cut_;
  std::vector<double> boundary_curvature_;
  CurvatureCertificate certificate_;
  std::string name_;
  std::map<std::string, double> parameters_;
  double resolution_ = 0.0;
  double max_curvature_ = 0.0;
  double boundary_length_ = 0.0;
};

}  // namespace rcomp::mesh
