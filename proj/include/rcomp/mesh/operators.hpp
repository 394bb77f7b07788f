#pragma once

#include "rcomp/mesh/surface.hpp"

namespace rcomp::mesh {

/// Sum of the interior angles of the incident triangles at v.
double angle_sum(const TriangulatedSurface& surface, int v);

/// Mixed Voronoi area of v; obtuse triangles contribute a barycentric third.
double mixed_area(const TriangulatedSurface& surface, int v);

/// Cotangent Laplacian of `field` at interior vertex v, divided by the mixed
/// area; approximates the (negative-semidefinite) Laplace-Beltrami operator,
/// e.g. -1/|x| for 1 - |x| on the plane.
double cotan_laplacian(const TriangulatedSurface& surface, const ScalarField& field, int v);

/// Discrete boundary mean (geodesic) curvature at boundary vertex v:
/// (angle sum - pi + K * mixed area) / (half the length of the two boundary
/// edges at v), with K the mean Gaussian curvature of the interior
/// neighbours. A flat disk of radius R gives about -1/R.
double boundary_mean_curvature(const TriangulatedSurface& surface, int v);

/// Angle defect 2pi - angle sum at interior vertex v.
double angle_defect(const TriangulatedSurface& surface, int v);

/// Angle defect divided by the mixed area.
double gaussian_curvature(const TriangulatedSurface& surface, int v);

/// Total length of the boundary loop.
double loop_length(const TriangulatedSurface& surface, const std::vector<int>& loop);

/// Sum of all boundary loop lengths.
double boundary_length(const TriangulatedSurface& surface);

}  // namespace rcomp::mesh
