#pragma once
// Executable versions of the comparison inequalities, evaluated on warped
// products (analytic) or triangulated surfaces (discrete).

#include "rcomp/check_result.hpp"
#include "rcomp/mesh/manifold.hpp"
#include "rcomp/warped.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rcomp {

/// Tolerances and sampling for the suite. Mesh tolerances for
/// second-derivative quantities are laplacian_c1 * h + laplacian_c2 * sqrt(h),
/// calibrated on the polar disk and frozen here.
struct VerifyConfig {
  std::uint64_t seed = 1;
  /// Explicit delta grid; when empty, grid_points values spanning [0, max r].
  std::vector<double> delta_grid;
  std::size_t grid_points = 50;
  /// Multiplies every tolerance (not the equality tolerances).
  double tol_scale = 1.0;

  double warped_rel_tol = 1e-9;
  double warped_equality_tol = 1e-7;
  double jacobian_tol = 1e-9;
  double warped_diameter_rel_tol = 0.01;
  std::size_t distance_samples = 200;

  double mesh_rel_tol = 0.03;
  double mesh_equality_tol = 0.01;
  /// Lipschitz slack epsilon_h = lipschitz_per_h * h.
  double lipschitz_per_h = 0.5;
  double laplacian_c1 = 1.0;
  double laplacian_c2 = 0.0;
  double mesh_diameter_rel_tol = 0.05;
  double curvature_tol = 1e-6;
  /// Area checks skip delta within cut_skip_h * h of a flagged vertex's r.
  double cut_skip_h = 2.0;

  /// Restricts the suite to these check names; empty means all.
  std::vector<std::string> enabled;
};

// Check names, also used as report keys.
inline constexpr const char* kCheckHypotheses = "hypotheses";
inline constexpr const char* kCheckLipschitz = "lipschitz";
inline constexpr const char* kCheckDistanceField = "distance_field";
inline constexpr const char* kCheckLaplacian = "laplacian_comparison";
inline constexpr const char* kCheckVolume = "volume_bound";
inline constexpr const char* kCheckArea = "area_bound";
inline constexpr const char* kCheckFocal = "focal";
inline constexpr const char* kCheckDiameter = "diameter";
inline constexpr const char* kCheckJacobian = "jacobian";
inline constexpr const char* kCheckTail = "tail_bound";

/// All check names in report order.
const std::vector<std::string>& all_check_names();

/// The delta grid the suite uses for a manifold whose max r is `max_r`.
std::vector<double> resolve_delta_grid(const VerifyConfig& cfg, double max_r);

CheckResult check_hypotheses(const WarpedProductManifold& m);
CheckResult check_hypotheses(const mesh::MeshManifold& m);

CheckResult check_lipschitz(const WarpedProductManifold& m, const VerifyConfig& cfg = {});
CheckResult check_lipschitz(const mesh::MeshManifold& m, const VerifyConfig& cfg = {});

CheckResult check_laplacian_comparison(const WarpedProductManifold& m, const VerifyConfig& cfg = {});
/// Unflagged interior vertices only; flagged vertices and vertices past the
/// focal radius of their foot are counted in the notes.
CheckResult check_laplacian_comparison(const mesh::MeshManifold& m, const VerifyConfig& cfg = {});

/// Every pair delta2 <= delta1 of the grid, plus the whole manifold.
CheckResult check_volume_bound(const WarpedProductManifold& m, const std::vector<double>& grid,
                               const VerifyConfig& cfg = {});
CheckResult check_volume_bound(const mesh::MeshManifold& m, const std::vector<double>& grid,
                               const VerifyConfig& cfg = {});

CheckResult check_area_bound(const WarpedProductManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg = {});
CheckResult check_area_bound(const mesh::MeshManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg = {});

CheckResult check_focal(const WarpedProductManifold& m, const VerifyConfig& cfg = {});
CheckResult check_focal(const mesh::MeshManifold& m, const VerifyConfig& cfg = {});

CheckResult check_diameter(const WarpedProductManifold& m, const VerifyConfig& cfg = {});
CheckResult check_diameter(const mesh::MeshManifold& m, const VerifyConfig& cfg = {});

CheckResult check_jacobian(const WarpedProductManifold& m, const std::vector<double>& grid,
                           const VerifyConfig& cfg = {});

enum class SuiteStatus { Pass, Fail, HypothesesViolated };
const char* to_string(SuiteStatus s);

struct VerificationReport {
  static constexpr int kVersion = 1;

  std::string backend;  // "warped" or "mesh"
  std::string name;
  std::map<std::string, double> parameters;
  int dimension = 0;
  double H_max = 0.0;
  double boundary_area = 0.0;
  double volume = 0.0;
  double max_distance = 0.0;
  /// Mesh size h (0 for warped).
  double resolution = 0.0;
  std::size_t vertex_count = 0;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  std::vector<double> delta_grid;
  bool hypotheses_certified = false;
  /// Sorted by name.
  std::vector<CheckResult> checks;

  SuiteStatus status() const;
  const CheckResult* find(const std::string& name) const;
  /// Deterministic JSON: sorted keys, 17 significant digits, non-finite
  /// numbers as null.
  std::string to_json() const;
  std::string to_text() const;
};

VerificationReport run_suite(const WarpedProductManifold& m, const VerifyConfig& cfg = {});
VerificationReport run_suite(const mesh::MeshManifold& m, const VerifyConfig& cfg = {});

}  // namespace rcomp
