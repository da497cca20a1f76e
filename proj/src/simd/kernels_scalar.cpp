#include <cmath>

#include "hcgibbs/simd/kernels.hpp"
#include "scalar_terms.hpp"

namespace hcgibbs::simd {
namespace {

void terms_scalar(const TermParams& p, const double* z, std::size_t n, double* t, double* s, double* u) {
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = detail::term_t(p.k, p.i, p.lambda, z[j]);
    s[j] = detail::term_s(p.i, z[j]);
    u[j] = detail::term_u(p.k, p.i, p.lambda, z[j]);
  }
}

void image_scalar(int i, double lambda, const double* t, const double* s, const double* u, std::size_t n,
                  double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = detail::image(i, lambda, t[j], s[j], u[j]);
}

void exp_scalar(const double* x, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = std::exp(x[j]);
}

void log_scalar(const double* x, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = std::log(x[j]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, "scalar", terms_scalar, image_scalar, exp_scalar, log_scalar};
  return table;
}

}  // namespace hcgibbs::simd
