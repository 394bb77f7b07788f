#pragma once
// Flat-distance upper bounds and sequence bookkeeping. Every "flat" number
// here is an upper bound on a flat distance, never the distance itself: the
// collar M \ M^delta has volume at least the flat distance between M and
// its delta-inner region.

#include "rcomp/check_result.hpp"
#include "rcomp/mesh/manifold.hpp"
#include "rcomp/profiles.hpp"
#include "rcomp/warped.hpp"

#include <json.hpp>

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rcomp {

struct VerifyConfig;

/// Mass, boundary mass, diameter and sup of boundary mean curvature.
struct CurrentSummary {
  int n = 0;
  double mass = 0.0;
  double boundary_mass = 0.0;
  double diameter = 0.0;
  double H_max = 0.0;
};

CurrentSummary summarize(const WarpedProductManifold& m);
CurrentSummary summarize(const mesh::MeshManifold& m);

ComparisonProfile comparison_profile(const mesh::MeshManifold& m);

/// Vol(M) - Vol(M^delta): the collar volume {r <= delta}.
double flat_upper_inner(const WarpedProductManifold& m, double delta);
double flat_upper_inner(const mesh::MeshManifold& m, double delta);

/// flat_upper_inner(m, delta) <= swif_tail(profile, boundary mass, delta) on
/// the grid, relative margins.
CheckResult tail_bound_check(const WarpedProductManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg);
CheckResult tail_bound_check(const mesh::MeshManifold& m, const std::vector<double>& grid,
                             const VerifyConfig& cfg);

/// v + N * 2 pi (1 - cos R_w): volume outside the isometric part plus the
/// replaced caps, an upper bound on the flat distance to the round sphere.
double wells_flat_bound(int N, double R_w, double v);

/// Uniform bounds a family is tested against; infinite means "no a priori
/// bound", leaving only the trend test.
struct SequenceThresholds {
  double boundary_area = std::numeric_limits<double>::infinity();
  double mean_curvature = std::numeric_limits<double>::infinity();
  double diameter = std::numeric_limits<double>::infinity();
  double boundary_diameter = std::numeric_limits<double>::infinity();
};

struct HypothesisFlags {
  bool curvature_certified = false;
  bool boundary_area_bounded = false;
  bool mean_curvature_bounded = false;
  bool mean_curvature_negative = false;
  bool diameter_bounded = false;
  bool boundary_diameter_bounded = false;

  bool operator==(const HypothesisFlags&) const = default;
};

/// Pure function of the stored summary; never set by hand.
HypothesisFlags compute_flags(const CurrentSummary& s, double boundary_diameter,
                              bool curvature_certified, const SequenceThresholds& t);

struct SequenceRecord {
  std::string family;
  int j = 0;
  std::map<std::string, double> parameters;
  /// Empty on success; otherwise the generator's diagnostic.
  std::string error;
  /// "mesh", "warped" or "accounting".
  std::string source;
  CurrentSummary summary;
  double boundary_diameter = 0.0;
  bool curvature_certified = false;
  std::vector<double> deltas;
  /// flat_upper_inner at each delta (NaN when not measured).
  std::vector<double> flat_bounds;
  /// swif_tail(profile, boundary mass, delta).
  std::vector<double> tail_bounds;
  std::optional<double> wells_flat_bound;
  HypothesisFlags flags;

  bool ok() const { return error.empty(); }
};

/// Builds the record for index j of a family, or records the failure.
using FamilyGenerator = std::function<SequenceRecord(int j)>;

struct SequenceOptions {
  std::vector<double> deltas{0.05, 0.1, 0.2, 0.4};
  SequenceThresholds thresholds;
  std::map<std::string, double> parameters;
  unsigned jobs = 1;
};

/// Generator for a named family: "cylinder_cap" (k), "ball" (n; R = j),
/// "jfold" (h, default min(0.05, 1/(3j))), "wells" (N = j, R_w = j^-3,
/// v = 1/j; hole, max_depth). Wells records come from the generator's
/// exact accounting.
FamilyGenerator family_generator(const std::string& family, const SequenceOptions& opts);

/// Evaluates j_first..j_last (concurrently when opts.jobs > 1); records are
/// returned in index order.
std::vector<SequenceRecord> classify_sequence(const std::string& family, int j_first, int j_last,
                                              const SequenceOptions& opts);
std::vector<SequenceRecord> classify_sequence(const FamilyGenerator& gen, int j_first, int j_last,
                                              unsigned jobs = 1);

/// Growth diagnostic for one quantity over the index range.
struct Trend {
  std::string quantity;
  std::vector<double> values;
  bool strictly_increasing = false;
  /// Least-squares slope of log(value) against log(j); NaN unless all
  /// values are positive.
  double growth_exponent = std::numeric_limits<double>::quiet_NaN();
  bool diverging = false;
  double max = -std::numeric_limits<double>::infinity();
};

Trend fit_trend(const std::string& quantity, const std::vector<int>& js,
                const std::vector<double>& values);

struct HypothesisVerdict {
  std::string name;
  bool holds = false;
  std::string reason;
};

/// Fold over the records: which hypotheses of the two compactness
/// statements hold uniformly and which diverge.
struct SequenceVerdict {
  std::string family;
  int j_first = 0;
  int j_last = 0;
  std::vector<int> failed_indices;
  std::vector<Trend> trends;
  /// Ric >= 0, Vol(boundary) <= A, H <= H0, Diam(M) <= D.
  std::vector<HypothesisVerdict> bounded_diameter;
  /// Ric >= 0, Vol(boundary) <= A, H <= H0 < 0, Diam(boundary) <= D'.
  std::vector<HypothesisVerdict> negative_curvature;
  std::vector<std::string> statements;
  /// Pairwise tail chain flat_j + flat_k <= 2 V(delta, H0, A, n) with the
  /// family's uniform H0 and A; evaluated when those bounds hold.
  bool tail_chain_applicable = false;
  std::size_t tail_chain_pairs = 0;
  std::size_t tail_chain_violations = 0;
  double tail_chain_worst_margin = std::numeric_limits<double>::infinity();

  nlohmann::json to_json() const;
};

SequenceVerdict summarize_sequence(const std::vector<SequenceRecord>& records,
                                   const SequenceThresholds& thresholds = {});

/// CSV with one row per index: family, j, status, summary fields,
/// curvature flag, wells_flat_bound, then flat@delta and tail@delta columns.
std::string sequence_csv(const std::vector<SequenceRecord>& records);
nlohmann::json sequence_json(const std::vector<SequenceRecord>& records);

}  // namespace rcomp
