#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace rfk {

/// FNV-1a, 64-bit, over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Seeded generator with platform-independent sampling helpers.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. All derived quantities are computed here rather than through
/// <random> distributions, which are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform double in [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform integer in the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return uniform01() < p; }

  /// Direction uniform on the unit sphere (Archimedes' projection).
  std::array<double, 3> unit_vector();

 private:
  std::mt19937_64 engine_;
};

}  // namespace rfk
