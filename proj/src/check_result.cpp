#include "rcomp/check_result.hpp"

#include <algorithm>
#include <cmath>

namespace rcomp {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Skipped:
      return "skipped";
    case Verdict::HypothesesViolated:
      return "hypotheses-violated";
  }
  return "unknown";
}

void CheckResult::add_sample(double margin, const std::function<std::string()>& describe) {
  ++sample_count;
  worst_margin = std::min(worst_margin, margin);
  max_abs_margin = std::max(max_abs_margin, std::abs(margin));
  if (margin < -tolerance || std::isnan(margin)) {
    ++violation_count;
    if (witnesses.size() < kMaxWitnesses) {
      witnesses.push_back(describe());
    }
  }
}

void CheckResult::finalize() {
  if (sample_count == 0) {
    verdict = Verdict::Skipped;
    equality = false;
    return;
  }
  verdict = violation_count == 0 ? Verdict::Pass : Verdict::Fail;
  equality = max_abs_margin <= equality_tolerance;
}

void CheckResult::skip(const std::string& reason) {
  verdict = Verdict::Skipped;
  equality = false;
  notes.push_back(reason);
}

double relative_margin(double measured, double bound, double floor) {
  const double scale = std::max({std::abs(bound), std::abs(measured), floor});
  return (bound - measured) / scale;
}

}  // namespace rcomp
