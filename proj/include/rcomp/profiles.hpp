#pragma once

// Closed-form comparison functions for manifolds with boundary, Ric >= 0 in
// the interior and boundary mean curvature bounded above by H.
//
// Sign convention: H is the mean curvature of the boundary normalised so that
// H equals the Laplacian of the distance-to-boundary function r at the
// boundary. With this convention the Euclidean ball of radius R has
// H = -(n-1)/R, a flat boundary has H = 0, and the complement of a small cap
// on the round sphere has H > 0. Texts that use the outward normal get the
// opposite sign.

#include <optional>
#include <stdexcept>

namespace rcomp {

/// Raised by laplacian_bound at the focal threshold H*r + n - 1 = 0.
class FocalPoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The pair (n, H) determining the model Jacobian ratio.
class ComparisonProfile {
 public:
  ComparisonProfile(int dimension, double mean_curvature_bound);

  int dimension() const { return n_; }
  double mean_curvature() const { return H_; }

 private:
  int n_;
  double H_;
};

/// ((H*delta + n - 1)/(n - 1))^(n-1), or 0 once H*delta + n - 1 <= 0.
double area_ratio(const ComparisonProfile& prof, double delta);

/// Integral of area_ratio over [delta2, delta1]; the integrand is clamped to
/// zero past the focal radius when H < 0.
double area_ratio_integral(const ComparisonProfile& prof, double delta2, double delta1);

/// Right-hand side of the Laplacian comparison (n-1)H/(H r + n - 1).
/// Throws FocalPoleError when the denominator vanishes.
double laplacian_bound(int n, double H, double r);

/// -(n-1)/H for H < 0, std::nullopt ("unbounded") otherwise.
std::optional<double> focal_radius(const ComparisonProfile& prof);

/// D' - 2(n-1)/H. Requires H < 0.
double diameter_bound(const ComparisonProfile& prof, double boundary_diameter);

/// boundary_area * area_ratio_integral(prof, delta2, delta1).
double volume_annulus_bound(const ComparisonProfile& prof, double boundary_area,
                            double delta2, double delta1);

/// Collar-volume tail V(delta) = boundary_area * int_0^delta area_ratio.
double swif_tail(const ComparisonProfile& prof, double boundary_area, double delta);

}  // namespace rcomp
