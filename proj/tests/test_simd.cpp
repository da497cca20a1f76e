#include <cmath>
#include <vector>

#include "doctest.h"
#include "hcgibbs/core.hpp"
#include "hcgibbs/simd/kernels.hpp"
#include "oracles.hpp"

using namespace hcgibbs;
using namespace hcgibbs::simd;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> sample(oracle::Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  return v;
}

}  // namespace

TEST_CASE("dispatch picks a usable table") {
  const auto& a = active_kernels();
  CHECK(a.terms != nullptr);
  CHECK(a.image != nullptr);
  if (avx2_kernels()) {
    CHECK(a.isa == Isa::Avx2);
  } else {
    MESSAGE("AVX2 kernels unavailable; only the scalar table is exercised");
    CHECK(a.isa == Isa::Scalar);
  }
  CHECK(scalar_kernels().name == "scalar");
}

TEST_CASE("AVX2 exp and log track libm") {
  const KernelTable* v = avx2_kernels();
  if (!v) return;
  oracle::Rng rng(5);
  std::vector<double> x(1003);
  for (auto& t : x) t = rng.uniform(-700.0, 700.0);
  x[0] = 0.0;
  x[1] = -1e-300;
  std::vector<double> out(x.size());
  v->exp(x.data(), x.size(), out.data());
  for (std::size_t j = 0; j < x.size(); ++j) CHECK(rel(out[j], std::exp(x[j])) < 4e-16);

  const auto y = sample(rng, 1001, 1e-300, 1e300);
  v->log(y.data(), y.size(), out.data());
  for (std::size_t j = 0; j < y.size(); ++j) CHECK(std::abs(out[j] - std::log(y[j])) <= 4e-16 * std::max(1.0, std::abs(std::log(y[j]))));
  const double one = 1.0;
  v->log(&one, 1, out.data());
  CHECK(out[0] == 0.0);
}

TEST_CASE("AVX2 terms and image agree with the scalar reference") {
  const KernelTable* v = avx2_kernels();
  if (!v) return;
  const KernelTable& s = scalar_kernels();
  oracle::Rng rng(9);
  for (int k = 1; k <= 7; ++k) {
    for (int i = 1; i <= k; ++i) {
      const TermParams p{k, i, std::exp(rng.uniform(std::log(0.05), std::log(500.0)))};
      // odd length exercises the tail
      const std::size_t n = 37 + static_cast<std::size_t>(rng.integer(0, 6));
      const auto z = sample(rng, n, 1e-6, 5.0);
      std::vector<double> t1(n), s1(n), u1(n), t2(n), s2(n), u2(n), w1(n), w2(n);
      s.terms(p, z.data(), n, t1.data(), s1.data(), u1.data());
      v->terms(p, z.data(), n, t2.data(), s2.data(), u2.data());
      s.image(i, p.lambda, t1.data(), s1.data(), u1.data(), n, w1.data());
      v->image(i, p.lambda, t1.data(), s1.data(), u1.data(), n, w2.data());
      for (std::size_t j = 0; j < n; ++j) {
        INFO("k=" << k << " i=" << i << " z=" << z[j]);
        CHECK(rel(t2[j], t1[j]) < 1e-14);
        CHECK(rel(s2[j], s1[j]) < 1e-14);
        CHECK(rel(u2[j], u1[j]) < 1e-14);
        CHECK(rel(w2[j], w1[j]) < 1e-14);
      }
    }
  }
}

TEST_CASE("batch W equals pointwise W for every table") {
  oracle::Rng rng(13);
  std::vector<const KernelTable*> tables{&scalar_kernels()};
  if (avx2_kernels()) tables.push_back(avx2_kernels());
  for (const auto* kt : tables) {
    for (auto [k, i] : {std::pair{3, 1}, {2, 2}, {4, 3}, {5, 2}, {6, 1}}) {
      const double lam = rng.uniform(0.2, 40.0);
      const std::size_t n = 101;
      auto z1 = sample(rng, n, 1e-4, 2.0), z2 = sample(rng, n, 1e-4, 2.0), z7 = sample(rng, n, 1e-4, 2.0),
           z8 = sample(rng, n, 1e-4, 2.0);
      std::vector<double> w1(n), w2(n), w7(n), w8(n);
      eval_w_batch(*kt, {k, i, lam}, z1, z2, z7, z8, w1, w2, w7, w8);
      for (std::size_t j = 0; j < n; ++j) {
        const auto w = eval_W({z1[j], z2[j], z7[j], z8[j]}, {k, i, lam});
        INFO(kt->name << " k=" << k << " i=" << i);
        CHECK(rel(w1[j], w.z1) < 1e-13);
        CHECK(rel(w2[j], w.z2) < 1e-13);
        CHECK(rel(w7[j], w.z7) < 1e-13);
        CHECK(rel(w8[j], w.z8) < 1e-13);
      }
    }
  }
}
