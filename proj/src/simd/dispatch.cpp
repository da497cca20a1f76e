#include <stdexcept>
#include <vector>

#include "hcgibbs/simd/kernels.hpp"

namespace hcgibbs::simd {

#if defined(HCGIBBS_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(HCGIBBS_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = avx2_kernels() ? *avx2_kernels() : scalar_kernels();
  return chosen;
}

void eval_w_batch(const KernelTable& kt, const TermParams& p, std::span<const double> z1, std::span<const double> z2,
                  std::span<const double> z7, std::span<const double> z8, std::span<double> w1, std::span<double> w2,
                  std::span<double> w7, std::span<double> w8) {
  const std::size_t n = z1.size();
  if (z2.size() != n || z7.size() != n || z8.size() != n || w1.size() != n || w2.size() != n || w7.size() != n ||
      w8.size() != n) {
    throw std::invalid_argument("eval_w_batch: span length mismatch");
  }
  struct Terms {
    std::vector<double> t, s, u;
    explicit Terms(std::size_t m) : t(m), s(m), u(m) {}
  };
  Terms a(n), b(n), c(n), d(n);
  kt.terms(p, z1.data(), n, a.t.data(), a.s.data(), a.u.data());
  kt.terms(p, z2.data(), n, b.t.data(), b.s.data(), b.u.data());
  kt.terms(p, z7.data(), n, c.t.data(), c.s.data(), c.u.data());
  kt.terms(p, z8.data(), n, d.t.data(), d.s.data(), d.u.data());
  // z1' uses t(z7), s(z8), u(z2); the other three rotate the roles.
  kt.image(p.i, p.lambda, c.t.data(), d.s.data(), b.u.data(), n, w1.data());
  kt.image(p.i, p.lambda, d.t.data(), c.s.data(), a.u.data(), n, w2.data());
  kt.image(p.i, p.lambda, a.t.data(), b.s.data(), d.u.data(), n, w7.data());
  kt.image(p.i, p.lambda, b.t.data(), a.s.data(), c.u.data(), n, w8.data());
}

}  // namespace hcgibbs::simd
