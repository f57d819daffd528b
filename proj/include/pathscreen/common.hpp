#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pathscreen {

/// Inclusion mask over features or groups; 1 = member.
using Mask = std::vector<std::uint8_t>;

inline Mask full_mask(std::size_t size) { return Mask(size, 1); }
inline Mask empty_mask(std::size_t size) { return Mask(size, 0); }

inline int mask_count(const Mask& m) {
  int count = 0;
  for (auto b : m) count += (b != 0);
  return count;
}

/// Soft-thresholding operator: argmin_b (1/2)(b - z)^2 + t|b|.
inline double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

/// Sign with sign_of(0) = 1 (used only where the argument is nonzero in exact
/// arithmetic and any fixed convention works at zero).
inline double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace pathscreen
