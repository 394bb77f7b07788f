#pragma once

// Warped products M = [0, L] x S^k with metric dt^2 + f(t)^2 g_{S^k}.
// The boundary is the slice t = 0 and the distance to it is r(t, x) = t.
// The far end t = L is either a pole (f(L) = 0), an antipodal cap
// (S^k x {L} / x ~ -x), or, only with validation bypassed, an open second
// boundary component.

#include "rcomp/check_result.hpp"
#include "rcomp/profiles.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace rcomp {

/// Natural cubic spline through (t_i, y_i), t strictly increasing.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> t, std::vector<double> y);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

 private:
  std::size_t segment(double x) const;

  std::vector<double> t_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

/// The warping function f on [0, L] with its first two derivatives.
class WarpProfile {
 public:
  using Fn = std::function<double(double)>;

  WarpProfile(std::string description, double length, Fn f, Fn df, Fn ddf);

  /// Spline reconstruction of a tabulated profile; t must start at 0.
  static WarpProfile tabulated(std::vector<double> t, std::vector<double> f,
                               std::string description = "tabulated");

  /// Two-column text file "t f"; '#' starts a comment.
  static WarpProfile load_table(const std::string& path);

  double length() const { return length_; }
  double f(double t) const { return f_(t); }
  double df(double t) const { return df_(t); }
  double ddf(double t) const { return ddf_(t); }
  const std::string& description() const { return description_; }

 private:
  std::string description_;
  double length_;
  Fn f_, df_, ddf_;
};

enum class FarEnd { Pole, Cap, Open };

struct WarpedOptions {
  bool bypass_validation = false;
  std::size_t certificate_grid = 4000;
  double ricci_tolerance = 1e-9;
  /// f(L) <= pole_tolerance * f(0) counts as closing off at a pole.
  double pole_tolerance = 1e-12;
};

/// Result of the grid checks performed at construction.
struct WarpCertificate {
  bool positive = true;
  bool monotone = true;
  bool ricci_nonnegative = true;
  bool closed_far_end = true;
  std::vector<std::string> violations;

  bool ok() const { return positive && monotone && ricci_nonnegative && closed_far_end; }
};

struct DiameterOptions {
  std::size_t angular_nodes = 128;
  std::size_t max_radial_nodes = 400;
  std::size_t stencil = 3;
  std::size_t source_count = 17;
};

class WarpedProductManifold {
 public:
  int sphere_dimension() const { return k_; }
  int dimension() const { return k_ + 1; }
  const WarpProfile& profile() const { return profile_; }
  bool cap() const { return cap_; }
  double sigma_k() const { return sigma_k_; }
  FarEnd far_end() const { return far_end_; }
  const WarpCertificate& certificate() const { return certificate_; }
  bool hypotheses_certified() const { return certificate_.ok(); }
  double length() const { return profile_.length(); }

  /// Descriptor and generator parameters (for reports).
  const std::string& name() const { return name_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }

  double boundary_area() const;
  double boundary_mean_curvature() const;
  /// Intrinsic diameter of the boundary sphere of radius f(0).
  double boundary_diameter() const;
  /// sup r = L.
  double max_distance() const { return profile_.length(); }
  double total_volume() const;

  /// Volume of {delta2 < r <= delta1}; limits beyond L are clamped to L.
  double annulus_volume(double delta2, double delta1) const;
  /// Area of the level set {r = delta}, 0 <= delta < L.
  double level_area(double delta) const;
  /// (f(delta)/f(0))^k, the Jacobian of the normal exponential map.
  double jacobian_ratio(double delta) const;
  /// k f'(delta)/f(delta), i.e. the Laplacian of r at distance delta.
  double radial_laplacian(double delta) const;

  /// Intrinsic diameter from shortest paths on the totally geodesic
  /// (t, angle) slice; biased upward by the graph discretisation.
  double diameter(const DiameterOptions& opts = {}) const;

  /// Compares r = t against randomised piecewise-geodesic paths to every
  /// boundary component.
  CheckResult distance_field_validation(std::size_t sample_count, std::uint64_t seed,
                                        double tol = 1e-9) const;

  /// Length of the polyline through (t_i, angle_i) in the reduced slice
  /// metric dt^2 + f(t)^2 dangle^2.
  double slice_path_length(const std::vector<std::pair<double, double>>& nodes) const;

  friend WarpedProductManifold build_warped(int k, WarpProfile profile, bool cap,
                                            const WarpedOptions& opts, std::string name,
                                            std::map<std::string, double> parameters);

 private:
  WarpedProductManifold(int k, WarpProfile profile, bool cap);

  void require_depth(double delta, bool allow_end) const;

  int k_;
  WarpProfile profile_;
  bool cap_;
  double sigma_k_;
  FarEnd far_end_ = FarEnd::Pole;
  WarpCertificate certificate_;
  std::string name_;
  std::map<std::string, double> parameters_;
};

/// Validates the profile (positivity, f' <= 0, the two Ricci diagnostics and
/// a closed far end) on a grid and builds the manifold. Throws
/// ValidationError naming the first violated grid point unless
/// opts.bypass_validation is set, in which case the certificate records it.
WarpedProductManifold build_warped(int k, WarpProfile profile, bool cap,
                                   const WarpedOptions& opts = {}, std::string name = "warped",
                                   std::map<std::string, double> parameters = {});

/// Volume of the unit k-sphere.
double unit_sphere_volume(int k);

/// The comparison profile (n, H) with H the boundary mean curvature of m.
ComparisonProfile comparison_profile(const WarpedProductManifold& m);

// Generators.

/// Euclidean n-ball of radius R: f(t) = R - t, pole at t = R.
WarpedProductManifold euclidean_ball(int n, double R);
/// S^k x [0, j] with antipodal identification on the far slice.
WarpedProductManifold cylinder_cap(int k, double j);
/// Geodesic ball of radius theta0 <= pi/2 in the unit (k+1)-sphere:
/// f(t) = sin(theta0 - t).
WarpedProductManifold spherical_cap(int k, double theta0);
/// f(t) = exp(-t) on [0, L] capped; violates the Ricci certificate, so it is
/// always built with validation bypassed (for hypothesis-gating tests).
WarpedProductManifold exponential_warp(int k, double L);

/// Builds one of the named generators above from a parameter map
/// ("ball": n, R; "cylinder_cap": k, j; "spherical_cap": k, theta0;
/// "exponential": k, L).
WarpedProductManifold make_warped(const std::string& family,
                                  const std::map<std::string, double>& params);

}  // namespace rcomp
