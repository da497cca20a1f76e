// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstdint>

#include "hcgibbs/simd/kernels.hpp"

namespace hcgibbs::simd {
namespace {

// Cephes-style rational approximations, ~1 ulp over the reduced ranges.
constexpr double kLogP[] = {1.01875663804580931796E-4, 4.97494994976747001425E-1, 4.70579119878881725854E0,
                            1.44989225341610930846E1,  1.79368678507819816313E1,  7.70838733755885391666E0};
constexpr double kLogQ[] = {1.12873587189167450590E1, 4.52279145837532221105E1, 8.29875266912776603211E1,
                            7.11544750618563894466E1, 2.31251620126765340583E1};
constexpr double kExpP[] = {1.26177193074810590878E-4, 3.02994407707441961300E-2, 9.99999999999999999910E-1};
constexpr double kExpQ[] = {3.00198505138664455042E-6, 2.52448340349684104192E-3, 2.27265548208155028766E-1,
                            2.00000000000000000009E0};

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

inline __m256d exp_pd(__m256d x) {
  x = _mm256_min_pd(_mm256_max_pd(x, set1(-708.0)), set1(709.0));
  const __m256d fx = _mm256_round_pd(_mm256_fmadd_pd(x, set1(1.4426950408889634073599), set1(0.5)),
                                     _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(fx, set1(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(fx, set1(1.42860682030941723212E-6), x);
  const __m256d xx = _mm256_mul_pd(x, x);

  __m256d p = set1(kExpP[0]);
  p = _mm256_fmadd_pd(p, xx, set1(kExpP[1]));
  p = _mm256_fmadd_pd(p, xx, set1(kExpP[2]));
  p = _mm256_mul_pd(p, x);

  __m256d q = set1(kExpQ[0]);
  q = _mm256_fmadd_pd(q, xx, set1(kExpQ[1]));
  q = _mm256_fmadd_pd(q, xx, set1(kExpQ[2]));
  q = _mm256_fmadd_pd(q, xx, set1(kExpQ[3]));

  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_fmadd_pd(r, set1(2.0), set1(1.0));

  // 2^fx through the exponent field; fx + 1023 lies in [1, 2046].
  const __m256d biased = _mm256_add_pd(fx, set1(1023.0 + 4503599627370496.0));
  const __m256i pow2 = _mm256_slli_epi64(_mm256_castpd_si256(biased), 52);
  return _mm256_mul_pd(r, _mm256_castsi256_pd(pow2));
}

// Positive, normal inputs only.
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exp_bits = _mm256_srli_epi64(bits, 52);
  const __m256i mant_bits = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                            _mm256_set1_epi64x(0x3FF0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mant_bits);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exp_bits, _mm256_set1_epi64x(0x4330000000000000LL))),
      set1(4503599627370496.0 + 1023.0));

  const __m256d big = _mm256_cmp_pd(m, set1(1.41421356237309504880), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set1(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, set1(1.0)));

  const __m256d f = _mm256_sub_pd(m, set1(1.0));
  const __m256d z = _mm256_mul_pd(f, f);

  __m256d p = set1(kLogP[0]);
  for (int j = 1; j < 6; ++j) p = _mm256_fmadd_pd(p, f, set1(kLogP[j]));
  __m256d q = _mm256_add_pd(f, set1(kLogQ[0]));
  for (int j = 1; j < 5; ++j) q = _mm256_fmadd_pd(q, f, set1(kLogQ[j]));

  __m256d y = _mm256_mul_pd(f, _mm256_div_pd(_mm256_mul_pd(z, p), q));
  y = _mm256_fnmadd_pd(e, set1(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(z, set1(0.5), y);
  __m256d r = _mm256_add_pd(f, y);
  return _mm256_fmadd_pd(e, set1(0.693359375), r);
}

inline __m256d ipow_pd(__m256d base, int n) {
  const bool invert = n < 0;
  if (invert) n = -n;
  __m256d result = set1(1.0);
  while (n > 0) {
    if (n & 1) result = _mm256_mul_pd(result, base);
    base = _mm256_mul_pd(base, base);
    n >>= 1;
  }
  return invert ? _mm256_div_pd(set1(1.0), result) : result;
}

struct TermBlock {
  __m256d t, s, u;
};

inline TermBlock terms_block(const TermParams& p, __m256d z) {
  const __m256d base = _mm256_fmadd_pd(set1(p.lambda), z, set1(1.0));
  TermBlock b;
  if (p.k % p.i == 0) {
    b.t = ipow_pd(base, p.k / p.i);
  } else {
    b.t = exp_pd(_mm256_mul_pd(set1(static_cast<double>(p.k) / p.i), log_pd(base)));
  }
  if (p.i == 1) {
    b.s = set1(1.0);
  } else {
    b.s = exp_pd(_mm256_mul_pd(set1(1.0 - 1.0 / p.i), log_pd(z)));
  }
  b.u = ipow_pd(base, -(p.k - p.i));
  return b;
}

void terms_avx2(const TermParams& p, const double* z, std::size_t n, double* t, double* s, double* u) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const TermBlock b = terms_block(p, _mm256_loadu_pd(z + j));
    _mm256_storeu_pd(t + j, b.t);
    _mm256_storeu_pd(s + j, b.s);
    _mm256_storeu_pd(u + j, b.u);
  }
  if (j < n) {
    alignas(32) double zin[4] = {1.0, 1.0, 1.0, 1.0};
    alignas(32) double tt[4], ss[4], uu[4];
    for (std::size_t r = 0; r < n - j; ++r) zin[r] = z[j + r];
    const TermBlock b = terms_block(p, _mm256_load_pd(zin));
    _mm256_store_pd(tt, b.t);
    _mm256_store_pd(ss, b.s);
    _mm256_store_pd(uu, b.u);
    for (std::size_t r = 0; r < n - j; ++r) {
      t[j + r] = tt[r];
      s[j + r] = ss[r];
      u[j + r] = uu[r];
    }
  }
}

inline __m256d image_block(int i, __m256d lam, __m256d t, __m256d s, __m256d u) {
  const __m256d ratio = _mm256_div_pd(t, _mm256_fmadd_pd(lam, s, t));
  return _mm256_mul_pd(ipow_pd(ratio, i), u);
}

void image_avx2(int i, double lambda, const double* t, const double* s, const double* u, std::size_t n,
                double* out) {
  const __m256d lam = set1(lambda);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    _mm256_storeu_pd(out + j,
                     image_block(i, lam, _mm256_loadu_pd(t + j), _mm256_loadu_pd(s + j), _mm256_loadu_pd(u + j)));
  }
  if (j < n) {
    alignas(32) double tt[4] = {1, 1, 1, 1}, ss[4] = {1, 1, 1, 1}, uu[4] = {1, 1, 1, 1}, oo[4];
    for (std::size_t r = 0; r < n - j; ++r) {
      tt[r] = t[j + r];
      ss[r] = s[j + r];
      uu[r] = u[j + r];
    }
    _mm256_store_pd(oo, image_block(i, lam, _mm256_load_pd(tt), _mm256_load_pd(ss), _mm256_load_pd(uu)));
    for (std::size_t r = 0; r < n - j; ++r) out[j + r] = oo[r];
  }
}

template <__m256d (*Fn)(__m256d)>
void unary_avx2(const double* x, std::size_t n, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) _mm256_storeu_pd(out + j, Fn(_mm256_loadu_pd(x + j)));
  if (j < n) {
    alignas(32) double in[4] = {1.0, 1.0, 1.0, 1.0}, res[4];
    for (std::size_t r = 0; r < n - j; ++r) in[r] = x[j + r];
    _mm256_store_pd(res, Fn(_mm256_load_pd(in)));
    for (std::size_t r = 0; r < n - j; ++r) out[j + r] = res[r];
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{Isa::Avx2, "avx2", terms_avx2, image_avx2, unary_avx2<exp_pd>, unary_avx2<log_pd>};
  return table;
}

}  // namespace hcgibbs::simd
