#include "rfk/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rfk {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  if (lo == hi) {
    return lo;
  }
  // Closed upper end is only reachable through rounding; clamp for safety.
  const double value = lo + (hi - lo) * uniform01();
  return value > hi ? hi : value;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  // Reject the low (2^64 mod n) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t draw = engine_();
  while (draw < threshold) {
    draw = engine_();
  }
  return draw % n;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) {
    return static_cast<std::int64_t>(engine_());
  }
  return lo + static_cast<std::int64_t>(uniform_index(span));
}

std::array<double, 3> Rng::unit_vector() {
  const double z = uniform(-1.0, 1.0);
  const double phi = 2.0 * std::numbers::pi * uniform01();
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

}  // namespace rfk
