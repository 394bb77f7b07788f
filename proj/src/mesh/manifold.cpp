#include "rcomp/mesh/manifold.hpp"

#include "rcomp/errors.hpp"
#include "rcomp/mesh/geodesics.hpp"
#include "rcomp/mesh/operators.hpp"

#include <cmath>
#include <limits>

namespace rcomp::mesh {

MeshManifold MeshManifold::build(TriangulatedSurface surface, std::string name,
                                 std::map<std::string, double> parameters,
                                 std::optional<ScalarField> field, double curvature_tolerance) {
  if (!surface.has_boundary()) {
    throw ValidationError("surface has no boundary; distance to the boundary is undefined");
  }
  MeshManifold m(std::move(surface));
  const auto& s = m.surface_;
  const std::size_t nv = s.vertex_count();
  m.name_ = std::move(name);
  m.parameters_ = std::move(parameters);

  if (field) {
    if (field->size() != nv) {
      throw ValidationError("distance field has " + std::to_string(field->size()) +
                            " values for " + std::to_string(nv) + " vertices");
    }
    m.distance_ = std::move(*field);
    m.foot_ = descend_to_boundary(s, m.distance_);
  } else {
    auto fm = distance_to_boundary(s);
    m.distance_ = std::move(fm.distance);
    m.foot_ = std::move(fm.source);
  }
  m.cut_ = cut_flags(s, m.distance_);

  m.boundary_curvature_.assign(nv, std::numeric_limits<double>::quiet_NaN());
  m.max_curvature_ = -std::numeric_limits<double>::infinity();
  for (const auto& loop : s.boundary_loops()) {
    for (int v : loop) {
      const double H = boundary_mean_curvature(s, v);
      m.boundary_curvature_[static_cast<std::size_t>(v)] = H;
      m.max_curvature_ = std::max(m.max_curvature_, H);
    }
  }
  m.boundary_length_ = mesh::boundary_length(s);

  auto it = m.parameters_.find("h");
  m.resolution_ = it != m.parameters_.end() ? it->second : s.mean_edge_length();

  CurvatureCertificate& cert = m.certificate_;
  cert.tolerance = curvature_tolerance;
  cert.min_gaussian_curvature = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < nv; ++v) {
    const int vi = static_cast<int>(v);
    if (s.is_boundary(vi)) {
      continue;
    }
    const double K = gaussian_curvature(s, vi);
    if (K < cert.min_gaussian_curvature) {
      cert.min_gaussian_curvature = K;
      cert.worst_vertex = vi;
    }
    if (K < -curvature_tolerance) {
      ++cert.violating_vertices;
    }
  }
  if (!std::isfinite(cert.min_gaussian_curvature)) {
    cert.min_gaussian_curvature = 0.0;
  }
  return m;
}

double MeshManifold::foot_curvature(int v) const {
  const int f = foot_[static_cast<std::size_t>(v)];
  if (f < 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return boundary_curvature_[static_cast<std::size_t>(f)];
}

}  // namespace rcomp::mesh
