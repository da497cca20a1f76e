#include "hcgibbs/critical.hpp"

#include <cmath>

#include "hcgibbs/error.hpp"
#include "hcgibbs/reductions.hpp"

namespace hcgibbs {

const Poly36Table& poly36_table() {
  static const Poly36Table t = {{
      {0, 0, 0, 0, 1},     // x^0
      {0, 0, 0, 0, -4},    // x^1
      {0, 0, 0, 0, 6},     // x^2
      {0, 0, 0, 4, -3},    // x^3
      {0, 0, 0, -16, 0},   // x^4
      {0, 0, 0, 24, 0},    // x^5
      {0, 0, 6, -13, 0},   // x^6
      {0, 0, -24, 1, 0},   // x^7
      {0, 0, 36, 0, 0},    // x^8
      {0, 4, -20, 0, 0},   // x^9
      {0, -16, 0, 0, 0},   // x^10
      {0, 24, 3, 0, 0},    // x^11
      {1, -14, 0, 0, 0},   // x^12
      {-4, 0, 0, 0, 0},    // x^13
      {6, 3, 0, 0, 0},     // x^14
      {-4, -1, 0, 0, 0},   // x^15
      {1, 0, 0, 0, 0},     // x^16
  }};
  return t;
}

std::vector<double> poly36_coefficients(double lambda) {
  std::vector<double> c(17);
  const auto& t = poly36_table();
  for (int j = 0; j < 17; ++j) {
    double acc = 0.0;
    for (int m = 4; m >= 0; --m) acc = acc * lambda + t[j][m];
    c[j] = acc;
  }
  return c;
}

double poly36_eval(double x, double lambda) { return horner(poly36_coefficients(lambda), x); }

std::array<double, 4> deflate_f_by_lambda1(double x) { return deflate_f_by_lambda1<double>(x); }

double g_eval(double lambda, double x) {
  const auto c = deflate_f_by_lambda1(x);
  return ((c[3] * lambda + c[2]) * lambda + c[1]) * lambda + c[0];
}

double lambda3(double x) {
  if (!(x > 1.0)) throw DomainError("lambda3: x must exceed 1");
  const double t = std::sqrt((x - 1.0) * (x + 3.0));
  return x * x * x * (2.0 - x - x * x + x * t) / (2.0 * x - 2.0);
}

BranchValues lambda_branches(double x) {
  if (!(x > 1.0)) throw DomainError("lambda_branches: x must exceed 1");
  const double x3 = x * x * x;
  const double t = std::sqrt((x - 1.0) * (x + 3.0));
  BranchValues b;
  b.lambda1 = x3 * x - x3;
  b.lambda2 = x3 * std::pow(x - 1.0, 3) / (3.0 * x * x - 3.0 * x + 1.0);
  b.lambda3 = x3 * (2.0 - x - x * x + x * t) / (2.0 * x - 2.0);
  b.lambda4 = x3 * (2.0 - x - x * x - x * t) / (2.0 * x - 2.0);
  b.lambda2_cond34 = admissibility(x, b.lambda2).cond34;
  const auto a3 = admissibility(x, b.lambda3);
  b.lambda3_cond34 = a3.cond34;
  b.lambda3_cond35 = a3.cond35;
  return b;
}

Admissibility admissibility(double x, double lambda) {
  if (!(x > 1.0)) throw DomainError("admissibility: x must exceed 1");
  const double x3 = x * x * x, x6 = x3 * x3;
  const double d2 = (x - 1.0) * (x - 1.0);
  Admissibility a;
  const double disc = x6 - 4.0 * x3 * d2;
  a.breve = x3 * x - 2.0 * x3;
  const double w = (x3 + lambda) * (x - 1.0);
  a.left_expr = lambda * x6 - w * w;
  a.right_expr = lambda + 2.0 * x3 - x3 * x;
  a.signs_match = (a.left_expr > 0) == (a.right_expr > 0) && (a.left_expr < 0) == (a.right_expr < 0);
  if (disc < 0.0) {
    a.complex = true;
    a.acute1 = a.acute2 = std::nan("");
    return a;
  }
  const double root = x3 * std::sqrt(disc);
  const double mid = x3 * (x3 - 2.0 * d2);
  a.acute1 = (mid - root) / (2.0 * d2);
  a.acute2 = (mid + root) / (2.0 * d2);
  a.cond34 = a.acute1 < lambda && lambda < a.acute2 && lambda > a.breve;
  a.cond35 = lambda < a.acute1 && lambda > a.acute2 && lambda < a.breve;
  return a;
}

double unsquared_residual(double x, double lambda) {
  const double x3 = x * x * x;
  const double w = (x3 + lambda) * (x - 1.0);
  const double left = lambda * x3 * x3 - w * w;
  const double right = x * std::sqrt(lambda * x * (x3 + lambda) * (x - 1.0)) * (lambda * x + x3 - w);
  return left - right;
}

double companion_y(double x, double lambda) {
  const double h = h_map(x, lambda, 3);
  auto second = [&](double y) {
    const double y3 = y * y * y;
    return x * x - lambda * y3 / ((y3 + lambda) * (y - 1.0));
  };
  return std::abs(second(h)) <= std::abs(second(-h)) ? h : -h;
}

namespace {

long double lambda3_ld(long double x) {
  const long double t = std::sqrt((x - 1.0L) * (x + 3.0L));
  return x * x * x * (2.0L - x - x * x + x * t) / (2.0L * x - 2.0L);
}

}  // namespace

CriticalReport lambda_cr_I2() {
  CriticalReport r;
  r.case_id = "I2-k3-i1";
  r.k = 3;

  constexpr int kCoarse = 10000;
  const long double a = 1.0L, b = 10.0L;
  long double best_x = b, best = lambda3_ld(b);
  for (int j = 1; j <= kCoarse; ++j) {
    const long double x = a + (b - a) * j / kCoarse;
    const long double v = lambda3_ld(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  const long double step = (b - a) / kCoarse;
  long double lo = std::max(a + step / 2, best_x - step), hi = best_x + step;
  const long double g = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  long double f1 = lambda3_ld(x1), f2 = lambda3_ld(x2);
  while (hi - lo > 1e-12L) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = lambda3_ld(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = lambda3_ld(x2);
    }
  }
  // The minimum is flat to second order, so finish on the sign of the slope.
  auto slope = [](long double x) {
    const long double h = 1e-6L;
    return lambda3_ld(x + h) - lambda3_ld(x - h);
  };
  lo -= 1e-9L;
  hi += 1e-9L;
  for (int it = 0; it < 200 && hi - lo > 1e-15L; ++it) {
    const long double mid = 0.5L * (lo + hi);
    (slope(mid) < 0 ? lo : hi) = mid;
  }
  const long double xs = 0.5L * (lo + hi);
  r.x_star = static_cast<double>(xs);
  r.lambda_cr = static_cast<double>(lambda3_ld(xs));

  constexpr int kConvexGrid = 2000;
  const double ca = 1.05, cb = 5.0, ch = (cb - ca) / (kConvexGrid - 1);
  r.convex = true;
  r.min_second_difference = INFINITY;
  for (int j = 1; j + 1 < kConvexGrid; ++j) {
    const long double x = ca + ch * j;
    const double d2 = static_cast<double>(lambda3_ld(x - ch) - 2.0L * lambda3_ld(x) + lambda3_ld(x + ch));
    r.min_second_difference = std::min(r.min_second_difference, d2);
    if (!(d2 > 0.0)) r.convex = false;
  }
  return r;
}

std::vector<double> lambda3_preimages(double lambda) {
  static const CriticalReport cr = lambda_cr_I2();
  if (std::abs(lambda - cr.lambda_cr) <= 1e-12) return {cr.x_star};
  if (lambda < cr.lambda_cr) return {};
  auto solve = [&](double lo, double hi) {
    // lambda3 - lambda changes sign once on [lo, hi]
    const bool rising = lambda3(hi) > lambda3(lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const bool above = lambda3(mid) > lambda;
      ((above == rising) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };
  double left_end = 1.0 + 0.5 * (cr.x_star - 1.0);
  while (lambda3(left_end) < lambda) left_end = 1.0 + 0.5 * (left_end - 1.0);
  double right_end = 2.0 * cr.x_star;
  while (lambda3(right_end) < lambda) right_end *= 2.0;
  return {solve(left_end, cr.x_star), solve(cr.x_star, right_end)};
}

CriticalReport s_lambda_pm(int k) {
  const double disc = static_cast<double>(k) * k - 6.0 * k + 1.0;
  if (disc < 0.0) {
    throw DomainError("s+-(k) undefined: k^2 - 6k + 1 = " + std::to_string(static_cast<long long>(disc)) + " < 0");
  }
  CriticalReport r;
  r.case_id = "kesten";
  r.k = k;
  const double root = std::sqrt(disc);
  r.s_minus = (k - 3.0 - root) / 4.0;
  r.s_plus = (k - 3.0 + root) / 4.0;
  r.lambda_minus = std::pow(1.0 + r.s_minus, k) * r.s_minus;
  r.lambda_plus = std::pow(1.0 + r.s_plus, k) * r.s_plus;
  return r;
}

double kappa(double xi, int k) {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("kappa: xi must lie in (0, 1)");
  if (k < 1) throw DomainError("kappa: k must be >= 1");
  return (std::pow(xi, -1.0 / k) - 1.0) / xi;
}

RootList poly36_roots(double lambda, double a, double b) { return poly_real_roots(poly36_coefficients(lambda), a, b); }

}  // namespace hcgibbs
