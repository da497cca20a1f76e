#pragma once

#include <cmath>

namespace hcgibbs::detail {

inline double ipow(double base, int n) {
  if (n < 0) return 1.0 / ipow(base, -n);
  double result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// (1 + lambda z)^{k/i}
inline double term_t(int k, int i, double lambda, double z) {
  const double base = 1.0 + lambda * z;
  if (k % i == 0) return ipow(base, k / i);
  return std::pow(base, static_cast<double>(k) / i);
}

// z^{1-1/i}; exactly 1 for i == 1 so that z -> 0 never meets 0^0.
inline double term_s(int i, double z) {
  if (i == 1) return 1.0;
  return std::pow(z, 1.0 - 1.0 / i);
}

// (1 + lambda z)^{-(k-i)}
inline double term_u(int k, int i, double lambda, double z) { return ipow(1.0 + lambda * z, -(k - i)); }

inline double image(int i, double lambda, double t, double s, double u) {
  return ipow(t / (t + lambda * s), i) * u;
}

}  // namespace hcgibbs::detail
