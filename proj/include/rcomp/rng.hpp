#pragma once

#include <cstdint>
#include <random>

namespace rcomp {

/// Seeded generator with a platform-independent uniform draw (the standard
/// distributions are implementation-defined, which would break byte-identical
/// reports across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rcomp
