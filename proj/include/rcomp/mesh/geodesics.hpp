#pragma once

#include "rcomp/mesh/surface.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rcomp::mesh {

struct FastMarchingResult {
  ScalarField distance;
  /// Seed vertex whose wavefront reached each vertex (backtracked along
  /// upwind edges); -1 where unreachable.
  std::vector<int> source;
};

/// First-order fast marching for |grad r| = 1, seeded with r = 0 at `seeds`.
///
/// A vertex is updated from every accepted neighbour u (r(u) + |uv|) and from
/// every triangle (v, a, b) with a, b accepted, minimising the linear
/// interpolant of r along ab plus the Euclidean distance to v. The minimum
/// over the segment includes its endpoints, so the result is monotone and
/// satisfies |r(u) - r(v)| <= |uv| on every edge.
FastMarchingResult fast_marching(const TriangulatedSurface& surface, std::span<const int> seeds);

/// Distance to the boundary, seeded at every boundary vertex.
/// Throws std::invalid_argument if the surface has no boundary.
FastMarchingResult distance_to_boundary(const TriangulatedSurface& surface);

/// Flags vertices near the cut locus: interior vertices that are local maxima
/// of r, or whose upwind triangle gradients differ in direction by more than
/// `threshold_degrees`. Directions are compared in the unfolded one-ring, so
/// the test is intrinsic.
CutFlags cut_flags(const TriangulatedSurface& surface, const ScalarField& r,
                   double threshold_degrees = 30.0);

/// Boundary foot point of each vertex by steepest descent of r along edges.
std::vector<int> descend_to_boundary(const TriangulatedSurface& surface, const ScalarField& r);

/// Largest fast-marching distance between vertices, over double-sweep and
/// strided sources. Throws std::invalid_argument for disconnected meshes.
double mesh_diameter(const TriangulatedSurface& surface, std::size_t extra_sources = 8);

/// Largest distance among boundary vertices in the surface metric.
double boundary_restricted_diameter(const TriangulatedSurface& surface, std::size_t sources = 8);

}  // namespace rcomp::mesh
