#include "rcomp/mesh/level_sets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rcomp::mesh {

namespace {

double nudge(const TriangulatedSurface& surface, const ScalarField& r, double delta) {
  if (!std::isfinite(delta)) {
    return delta;
  }
  const auto& v = r.values();
  if (std::find(v.begin(), v.end(), delta) != v.end()) {
    return delta + 1e-12 * surface.mean_edge_length();
  }
  return delta;
}

Vec3 crossing(const Vec3& a, double ra, const Vec3& b, double rb, double delta) {
  const double s = (delta - ra) / (rb - ra);
  return a + s * (b - a);
}

// Area of the part of triangle (p, values) with value <= delta.
double clipped_area(const std::array<Vec3, 3>& p, const std::array<double, 3>& val, double delta) {
  std::array<Vec3, 4> poly;
  std::size_t count = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const bool in_i = val[i] <= delta;
    const bool in_j = val[j] <= delta;
    if (in_i) {
      poly[count++] = p[i];
    }
    if (in_i != in_j) {
      poly[count++] = crossing(p[i], val[i], p[j], val[j], delta);
    }
  }
  if (count < 3) {
    return 0.0;
  }
  Vec3 acc = Vec3::Zero();
  for (std::size_t i = 1; i + 1 < count; ++i) {
    acc += (poly[i] - poly[0]).cross(poly[i + 1] - poly[0]);
  }
  return 0.5 * acc.norm();
}

}  // namespace

double level_length(const TriangulatedSurface& surface, const ScalarField& r, double delta) {
  if (!std::isfinite(delta)) {
    return 0.0;
  }
  delta = nudge(surface, r, delta);
  double total = 0.0;
  for (const Face& t : surface.faces()) {
    std::array<Vec3, 2> pts;
    std::size_t count = 0;
    for (int i = 0; i < 3; ++i) {
      const int a = t[i];
      const int b = t[(i + 1) % 3];
      const double ra = r[static_cast<std::size_t>(a)];
      const double rb = r[static_cast<std::size_t>(b)];
      if ((ra <= delta) != (rb <= delta) && count < 2) {
        pts[count++] = crossing(surface.position(a), ra, surface.position(b), rb, delta);
      }
    }
    if (count == 2) {
      total += (pts[0] - pts[1]).norm();
    }
  }
  return total;
}

double sublevel_area(const TriangulatedSurface& surface, const ScalarField& r, double delta) {
  if (std::isnan(delta)) {
    throw std::invalid_argument("sublevel_area: NaN threshold");
  }
  delta = nudge(surface, r, delta);
  double total = 0.0;
  for (std::size_t f = 0; f < surface.face_count(); ++f) {
    const Face& t = surface.face(f);
    const std::array<double, 3> val{r[static_cast<std::size_t>(t[0])], r[static_cast<std::size_t>(t[1])],
                                    r[static_cast<std::size_t>(t[2])]};
    if (val[0] <= delta && val[1] <= delta && val[2] <= delta) {
      total += surface.face_area(f);
    } else if (val[0] <= delta || val[1] <= delta || val[2] <= delta) {
      total += clipped_area({surface.position(t[0]), surface.position(t[1]), surface.position(t[2])}, val,
                            delta);
    }
  }
  return total;
}

double annulus_area(const TriangulatedSurface& surface, const ScalarField& r, double delta2,
                    double delta1) {
  if (!(delta2 >= 0.0) || !(delta1 >= delta2)) {
    throw std::invalid_argument("annulus_area needs 0 <= delta2 <= delta1");
  }
  if (delta1 == delta2) {
    return 0.0;
  }
  return sublevel_area(surface, r, delta1) - sublevel_area(surface, r, delta2);
}

}  // namespace rcomp::mesh
