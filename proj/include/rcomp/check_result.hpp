#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace rcomp {

enum class Verdict { Pass, Fail, Skipped, HypothesesViolated };

const char* to_string(Verdict v);

/// One sample of a measured-versus-bound curve (plot-ready data).
struct CurvePoint {
  double x = 0.0;
  double measured = 0.0;
  double bound = 0.0;
};

/// Outcome of one inequality check over a set of samples.
///
/// Margins are `bound - measured` (normalised when `margin_kind` is
/// "relative"); a negative margin is a violation of that magnitude.
struct CheckResult {
  std::string name;
  std::size_t sample_count = 0;
  std::size_t violation_count = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double max_abs_margin = 0.0;
  double tolerance = 0.0;
  double equality_tolerance = 0.0;
  std::string margin_kind = "relative";
  Verdict verdict = Verdict::Skipped;
  bool equality = false;
  std::vector<std::string> witnesses;
  std::vector<std::string> notes;
  std::vector<CurvePoint> curve;

  static constexpr std::size_t kMaxWitnesses = 20;

  /// Adds one sample. `describe` is only invoked for violating samples.
  void add_sample(double margin, const std::function<std::string()>& describe);

  /// Sets verdict and equality flag from the accumulated samples.
  void finalize();

  /// Marks a check that does not apply, with the reason as a note.
  void skip(const std::string& reason);
};

/// Relative margin (bound - measured) / max(|bound|, |measured|, floor).
double relative_margin(double measured, double bound, double floor = 1e-12);

}  // namespace rcomp
