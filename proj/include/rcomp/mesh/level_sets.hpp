#pragma once

#include "rcomp/mesh/surface.hpp"

namespace rcomp::mesh {

// The field is interpolated linearly on each triangle. A threshold equal to
// some vertex value is nudged by +1e-12 * (mean edge length) so that the
// clipped topology is well defined.

/// Length of {r = delta}.
double level_length(const TriangulatedSurface& surface, const ScalarField& r, double delta);

/// Area of {r <= delta}; delta may be +infinity.
double sublevel_area(const TriangulatedSurface& surface, const ScalarField& r, double delta);

/// Area of {delta2 < r <= delta1}; delta1 may be +infinity.
double annulus_area(const TriangulatedSurface& surface, const ScalarField& r, double delta2,
                    double delta1);

}  // namespace rcomp::mesh
