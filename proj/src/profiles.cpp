#include "rcomp/profiles.hpp"

#include <cmath>
#include <string>

namespace rcomp {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

void require_delta(double delta, const char* what) {
  require_finite(delta, what);
  if (delta < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be nonnegative");
  }
}

}  // namespace

ComparisonProfile::ComparisonProfile(int dimension, double mean_curvature_bound)
    : n_(dimension), H_(mean_curvature_bound) {
  if (n_ < 2) {
    throw std::invalid_argument("comparison profile needs dimension n >= 2");
  }
  require_finite(H_, "mean curvature bound");
}

double area_ratio(const ComparisonProfile& prof, double delta) {
  require_delta(delta, "delta");
  const double m = prof.dimension() - 1;
  const double base = prof.mean_curvature() * delta + m;
  if (base <= 0.0) {
    return 0.0;
  }
  return std::pow(base / m, m);
}

double area_ratio_integral(const ComparisonProfile& prof, double delta2, double delta1) {
  require_delta(delta2, "delta2");
  require_delta(delta1, "delta1");
  if (delta2 > delta1) {
    throw std::invalid_argument("area_ratio_integral needs delta2 <= delta1");
  }
  const double H = prof.mean_curvature();
  const double m = prof.dimension() - 1;
  const double n = prof.dimension();
  if (H == 0.0) {
    return delta1 - delta2;
  }

  bool clamped = false;
  double upper = delta1;
  if (H < 0.0) {
    const double focal = -m / H;
    if (delta2 >= focal) {
      return 0.0;
    }
    if (delta1 >= focal) {
      upper = focal;
      clamped = true;
    }
  }

  // (m/(nH)) * [x1^n - x0^n] with x = 1 + H t/m, written as
  // x0^n * expm1(n * log(x1/x0)) so that small |H| and close limits keep
  // full relative precision.
  const double x0 = 1.0 + H * delta2 / m;
  const double x0n = std::pow(x0, n);
  double growth;
  if (clamped) {
    growth = -1.0;
  } else {
    const double ratio_minus_one = H * (upper - delta2) / (m * x0);
    growth = std::expm1(n * std::log1p(ratio_minus_one));
  }
  return m / (n * H) * x0n * growth;
}

double laplacian_bound(int n, double H, double r) {
  if (n < 2) {
    throw std::invalid_argument("laplacian_bound needs n >= 2");
  }
  require_finite(H, "H");
  require_delta(r, "r");
  const double m = n - 1;
  if (H == 0.0) {
    return 0.0;
  }
  const double denom = H * r + m;
  if (denom == 0.0) {
    throw FocalPoleError("laplacian_bound: r lies on the focal threshold H*r + n - 1 = 0");
  }
  return m * H / denom;
}

std::optional<double> focal_radius(const ComparisonProfile& prof) {
  if (prof.mean_curvature() < 0.0) {
    return -(prof.dimension() - 1) / prof.mean_curvature();
  }
  return std::nullopt;
}

double diameter_bound(const ComparisonProfile& prof, double boundary_diameter) {
  if (!(prof.mean_curvature() < 0.0)) {
    throw std::invalid_argument("diameter_bound requires H < 0");
  }
  require_delta(boundary_diameter, "boundary diameter");
  return boundary_diameter - 2.0 * (prof.dimension() - 1) / prof.mean_curvature();
}

double volume_annulus_bound(const ComparisonProfile& prof, double boundary_area,
                            double delta2, double delta1) {
  require_delta(boundary_area, "boundary area");
  const double integral = area_ratio_integral(prof, delta2, delta1);
  return boundary_area == 0.0 ? 0.0 : boundary_area * integral;
}

double swif_tail(const ComparisonProfile& prof, double boundary_area, double delta) {
  return volume_annulus_bound(prof, boundary_area, 0.0, delta);
}

}  // namespace rcomp
