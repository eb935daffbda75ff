#pragma once

#include <cstdint>
#include <stdexcept>

namespace mixmetro {

/// C(n, k) by the multiplicative recurrence in floating point; usable for
/// large n where the integer value overflows.
inline double binomial_real(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

/// Exact C(n, k); throws std::overflow_error if it does not fit in 64 bits.
inline std::uint64_t binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (n-k+i) is divisible by i at every step.
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    if (c > UINT64_MAX / factor) throw std::overflow_error("binomial_exact overflow");
    c = c * factor / static_cast<std::uint64_t>(i);
  }
  return c;
}

}  // namespace mixmetro
