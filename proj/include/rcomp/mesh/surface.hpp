#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstddef>
#include <vector>

namespace rcomp::mesh {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

/// Oriented triangulated 2-manifold with (possibly empty) boundary.
///
/// Construction validates: indices in range, no zero-area faces, every edge
/// on one or two faces, consistent orientation across interior edges, a
/// single fan around every vertex and no unreferenced vertices. Boundary
/// loops are traversed with the surface on the left.
class TriangulatedSurface {
 public:
  TriangulatedSurface(std::vector<Vec3> vertices, std::vector<Face> faces);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Vec3& position(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  const Face& face(std::size_t f) const { return faces_[f]; }

  const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }
  bool has_boundary() const { return !boundary_loops_.empty(); }
  bool is_boundary(int v) const { return boundary_[static_cast<std::size_t>(v)] != 0; }

  /// Faces incident to v (unordered).
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[static_cast<std::size_t>(v)]; }
  /// One-ring neighbours of v (unordered, unique).
  const std::vector<int>& neighbors(int v) const { return neighbors_[static_cast<std::size_t>(v)]; }
  /// Previous and next vertex along v's boundary loop.
  std::pair<int, int> boundary_neighbors(int v) const;

  double face_area(std::size_t f) const;
  double total_area() const;
  double mean_edge_length() const { return mean_edge_length_; }
  double max_edge_length() const { return max_edge_length_; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<char> boundary_;
  std::vector<int> boundary_prev_;
  std::vector<int> boundary_next_;
  std::vector<std::vector<int>> boundary_loops_;
  double mean_edge_length_ = 0.0;
  double max_edge_length_ = 0.0;
};

/// Per-vertex real values.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  double max() const;

 private:
  std::vector<double> values_;
};

/// Per-vertex near-cut-locus indicator.
struct CutFlags {
  std::vector<char> flagged;

  bool operator[](std::size_t i) const { return flagged[i] != 0; }
  std::size_t count() const;
};

}  // namespace rcomp::mesh
