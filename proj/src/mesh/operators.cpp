#include "rcomp/mesh/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rcomp::mesh {

namespace {

struct Corner {
  int v, next, prev;
};

Corner corner(const TriangulatedSurface& s, int f, int v) {
  const Face& t = s.face(static_cast<std::size_t>(f));
  const int i = t[0] == v ? 0 : (t[1] == v ? 1 : 2);
  return {v, t[(i + 1) % 3], t[(i + 2) % 3]};
}

double angle_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
  const Vec3 u = a - apex;
  const Vec3 w = b - apex;
  return std::atan2(u.cross(w).norm(), u.dot(w));
}

double cot_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
  const Vec3 u = a - apex;
  const Vec3 w = b - apex;
  return u.dot(w) / u.cross(w).norm();
}

void require_interior(const TriangulatedSurface& s, int v, const char* op) {
  if (s.is_boundary(v)) {
    throw std::invalid_argument(std::string(op) + ": vertex " + std::to_string(v) +
                                " lies on the boundary");
  }
}

}  // namespace

double angle_sum(const TriangulatedSurface& surface, int v) {
  double sum = 0.0;
  for (int f : surface.vertex_faces(v)) {
    const Corner c = corner(surface, f, v);
    sum += angle_at(surface.position(v), surface.position(c.next), surface.position(c.prev));
  }
  return sum;
}

double mixed_area(const TriangulatedSurface& surface, int v) {
  double area = 0.0;
  for (int f : surface.vertex_faces(v)) {
    const Corner c = corner(surface, f, v);
    const Vec3& p = surface.position(v);
    const Vec3& a = surface.position(c.next);
    const Vec3& b = surface.position(c.prev);
    const bool obtuse = (a - p).dot(b - p) < 0.0 || (p - a).dot(b - a) < 0.0 ||
                        (p - b).dot(a - b) < 0.0;
    if (obtuse) {
      area += surface.face_area(static_cast<std::size_t>(f)) / 3.0;
    } else {
      area += ((a - p).squaredNorm() * cot_at(b, p, a) + (b - p).squaredNorm() * cot_at(a, p, b)) / 8.0;
    }
  }
  return area;
}

double cotan_laplacian(const TriangulatedSurface& surface, const ScalarField& field, int v) {
  require_interior(surface, v, "cotan_laplacian");
  const double fv = field[static_cast<std::size_t>(v)];
  double sum = 0.0;
  for (int f : surface.vertex_faces(v)) {
    const Corner c = corner(surface, f, v);
    const Vec3& p = surface.position(v);
    const Vec3& a = surface.position(c.next);
    const Vec3& b = surface.position(c.prev);
    // Edge (v, a) sees the angle at b, edge (v, b) the angle at a.
    sum += cot_at(b, p, a) * (field[static_cast<std::size_t>(c.next)] - fv);
    sum += cot_at(a, p, b) * (field[static_cast<std::size_t>(c.prev)] - fv);
  }
  return sum / (2.0 * mixed_area(surface, v));
}

double boundary_mean_curvature(const TriangulatedSurface& surface, int v) {
  if (!surface.is_boundary(v)) {
    throw std::invalid_argument("boundary_mean_curvature: vertex " + std::to_string(v) +
                                " is interior");
  }
  const auto [prev, next] = surface.boundary_neighbors(v);
  const double half_length = 0.5 * ((surface.position(v) - surface.position(prev)).norm() +
                                    (surface.position(v) - surface.position(next)).norm());
  // Gauss-Bonnet on the vertex cell: pi - angle sum = -H * half_length +
  // K * cell area, so the raw turning angle is biased by the cell's total
  // curvature. K is taken as the mean over interior neighbours.
  double K = 0.0;
  int count = 0;
  for (int w : surface.neighbors(v)) {
    if (!surface.is_boundary(w)) {
      K += gaussian_curvature(surface, w);
      ++count;
    }
  }
  const double correction = count > 0 ? K / count * mixed_area(surface, v) : 0.0;
  return (angle_sum(surface, v) - std::numbers::pi + correction) / half_length;
}

double angle_defect(const TriangulatedSurface& surface, int v) {
  require_interior(surface, v, "angle_defect");
  return 2.0 * std::numbers::pi - angle_sum(surface, v);
}

double gaussian_curvature(const TriangulatedSurface& surface, int v) {
  require_interior(surface, v, "gaussian_curvature");
  return angle_defect(surface, v) / mixed_area(surface, v);
}

double loop_length(const TriangulatedSurface& surface, const std::vector<int>& loop) {
  double len = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    len += (surface.position(loop[i]) - surface.position(loop[(i + 1) % loop.size()])).norm();
  }
  return len;
}

double boundary_length(const TriangulatedSurface& surface) {
  double len = 0.0;
  for (const auto& loop : surface.boundary_loops()) {
    len += loop_length(surface, loop);
  }
  return len;
}

}  // namespace rcomp::mesh
