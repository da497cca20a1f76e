#pragma once

// Closed-form algebra for the I2 (k=3, i=1) polynomial, its deflation and
// lambda-branches, sign admissibility, the critical activity, and the
// Kesten-regime endpoints s+-(k), lambda+-(k) on I4 with i = 1.

#include <array>
#include <string>
#include <vector>

#include "hcgibbs/rootfind.hpp"

namespace hcgibbs {

/// coefficient of x^j is sum_m table[j][m] lambda^m
using Poly36Table = std::array<std::array<double, 5>, 17>;
const Poly36Table& poly36_table();

/// Coefficients in x (ascending) at a fixed lambda.
std::vector<double> poly36_coefficients(double lambda);
double poly36_eval(double x, double lambda);

/// Coefficients of g(lambda, x) in lambda (ascending: lambda^0 .. lambda^3),
/// where f(lambda, x) = (lambda + x^3 - x^4) g(lambda, x).
/// Generic over the number type so it can be checked in exact arithmetic.
template <class T>
std::array<T, 4> deflate_f_by_lambda1(const T& x) {
  const T x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x, x6 = x5 * x, x7 = x6 * x;
  const T x8 = x7 * x, x9 = x8 * x, x10 = x9 * x, x11 = x10 * x, x12 = x11 * x;
  return {
      T(-x12 + 3 * x11 - 3 * x10 + x9),
      T(x11 - 2 * x10 - 2 * x9 + 11 * x8 - 10 * x7 + 3 * x6),
      T(-2 * x7 - 4 * x6 + 14 * x5 - 11 * x4 + 3 * x3),
      T(-3 * x3 + 6 * x2 - 4 * x + 1),
  };
}
std::array<double, 4> deflate_f_by_lambda1(double x);
double g_eval(double lambda, double x);

struct BranchValues {
  double lambda1 = 0.0;  // x^4 - x^3, the diagonal branch
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double lambda4 = 0.0;
  bool lambda2_cond34 = false;
  bool lambda3_cond34 = false;
  bool lambda3_cond35 = false;
};

/// Throws DomainError for x <= 1.
BranchValues lambda_branches(double x);
double lambda3(double x);

struct Admissibility {
  bool cond34 = false;
  bool cond35 = false;   // kept exactly as printed; empty whenever acute1 < acute2
  bool complex = false;  // quadratic in lambda has no real roots
  double acute1 = 0.0;
  double acute2 = 0.0;
  double breve = 0.0;
  double left_expr = 0.0;   // lambda x^6 - ((x^3 + lambda)(x - 1))^2
  double right_expr = 0.0;  // lambda + 2x^3 - x^4
  bool signs_match = false;
};

Admissibility admissibility(double x, double lambda);

/// Unsquared equation before squaring into the degree-16 polynomial:
/// left - right, with left = lambda x^6 - ((x^3+lambda)(x-1))^2.
double unsquared_residual(double x, double lambda);

/// Real y > 0 or < 0 among +-h(x) that also satisfies the second equation
/// x^2 = lambda y^3 / ((y^3 + lambda)(y - 1)).
double companion_y(double x, double lambda);

struct CriticalReport {
  std::string case_id;
  double lambda_cr = 0.0;
  double x_star = 0.0;
  bool convex = false;            // all second differences positive
  double min_second_difference = 0.0;
  int k = 0;
  double s_minus = 0.0;
  double s_plus = 0.0;
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
};

/// Minimizes lambda3 on (1, 10]: coarse scan, golden section, then a sign
/// bisection on the derivative, all in long double.
CriticalReport lambda_cr_I2();

/// Solutions of lambda3(x) = lambda on (1, inf): 0, 1 (at the minimum) or 2.
std::vector<double> lambda3_preimages(double lambda);

/// Throws DomainError when k^2 - 6k + 1 < 0.
CriticalReport s_lambda_pm(int k);

/// (1/xi)(xi^{-1/k} - 1), the inverse of xi -> lambda along TI points.
double kappa(double xi, int k);

/// Real roots of the degree-16 polynomial in [a, b].
RootList poly36_roots(double lambda, double a = 1.0, double b = 3.0);

}  // namespace hcgibbs
