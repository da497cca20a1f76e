#pragma once

// Data-parallel kernels behind the 2D grid oracle and batch evaluation of W.
//
// Every component of W factors into per-coordinate terms
//   t(z) = (1 + lambda z)^{k/i},  s(z) = z^{1-1/i},  u(z) = (1 + lambda z)^{-(k-i)}
// combined as  W = (t_a / (t_a + lambda s_b))^i * u_c.
// The scalar table is the reference; other tables must agree with it to
// within a few ulps (see tests/test_simd.cpp).

#include <cstddef>
#include <span>
#include <string_view>

namespace hcgibbs::simd {

enum class Isa { Scalar, Avx2 };

struct TermParams {
  int k = 1;
  int i = 1;
  double lambda = 1.0;
};

using TermsFn = void (*)(const TermParams& p, const double* z, std::size_t n, double* t, double* s, double* u);
using ImageFn = void (*)(int i, double lambda, const double* t, const double* s, const double* u, std::size_t n,
                         double* out);
using UnaryFn = void (*)(const double* x, std::size_t n, double* out);

struct KernelTable {
  Isa isa;
  std::string_view name;
  TermsFn terms;
  ImageFn image;
  UnaryFn exp;
  UnaryFn log;
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 kernels were not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

/// Best table for this CPU, chosen once on first use.
const KernelTable& active_kernels();

/// Batch W over structure-of-arrays points. All spans must have equal length.
void eval_w_batch(const KernelTable& kt, const TermParams& p, std::span<const double> z1, std::span<const double> z2,
                  std::span<const double> z7, std::span<const double> z8, std::span<double> w1, std::span<double> w2,
                  std::span<double> w7, std::span<double> w8);

}  // namespace hcgibbs::simd
