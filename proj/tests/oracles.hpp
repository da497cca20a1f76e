#pragma once

// Reference computations shared by the tests. Nothing here calls into the
// library; every value is recomputed from the defining formulas.

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <random>

namespace oracle {

// The fixed-point system exactly as printed, in long double.
struct Law {
  long double z1, z2, z7, z8;
};

inline long double printed_component(int k, int i, long double lam, long double a, long double b, long double c) {
  const long double num = std::pow(1 + lam * a, (long double)k);
  const long double den = std::pow(std::pow(1 + lam * a, (long double)k / i) + lam * std::pow(b, 1 - 1.0L / i), (long double)i);
  return num / den / std::pow(1 + lam * c, (long double)(k - i));
}

inline Law printed_W(int k, int i, long double lam, const Law& z) {
  return {printed_component(k, i, lam, z.z7, z.z8, z.z2), printed_component(k, i, lam, z.z8, z.z7, z.z1),
          printed_component(k, i, lam, z.z1, z.z2, z.z8), printed_component(k, i, lam, z.z2, z.z1, z.z7)};
}

// x (1 + lambda x)^k = 1 by Boost bisection on the log form.
inline double ti_root(int k, double lam) {
  auto g = [&](double x) { return std::log(x) + k * std::log1p(lam * x); };
  const auto r = boost::math::tools::bisect(g, 1e-300, 1.0, boost::math::tools::eps_tolerance<double>(52));
  return 0.5 * (r.first + r.second);
}

// mt19937_64 output is fixed by the standard; the distributions are not,
// so the conversion to doubles is done here.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double a, double b) { return a + (b - a) * ((eng() >> 11) * 0x1.0p-53); }
  int integer(int a, int b) { return a + static_cast<int>(eng() % static_cast<std::uint64_t>(b - a + 1)); }
};

}  // namespace oracle
