#pragma once

// Scalar root isolation, polynomial real roots, the symmetric system
// x = f(y), y = f(x), and Kesten 2-cycles of decreasing maps.

#include <functional>
#include <optional>
#include <vector>

namespace hcgibbs {

using ScalarFn = std::function<double(double)>;

inline constexpr int kDefaultGrid = 4096;
inline constexpr int kPolyGrid = 16384;
inline constexpr double kDedupDistance = 1e-8;

struct RootList {
  std::vector<double> roots;      // strictly increasing
  std::vector<double> residuals;  // |f(root)|
  std::vector<bool> multiple;     // root looks like a tangency / multiple root
  double bracket_width = 0.0;     // scan spacing used

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
};

/// Sign-change scan of grid_n+1 points, bisection to tol, one secant polish.
/// Non-finite samples are skipped. Roots closer than kDedupDistance merge.
RootList bracketed_roots(const ScalarFn& f, double a, double b, int grid_n = kDefaultGrid, double tol = 1e-13);

/// Real roots in [a, b] of sum coeffs[j] x^j. Even-multiplicity roots are
/// picked up as local minima of |p| below touch_tol * scale.
RootList poly_real_roots(const std::vector<double>& coeffs, double a, double b, double tol = 1e-13,
                         double touch_tol = 1e-8);

double horner(const std::vector<double>& coeffs, double x);

struct ReducedPoint {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const ReducedPoint&) const = default;
};

struct SymmetricOptions {
  int grid_n = kDefaultGrid;
  // Refuse non-decreasing f. Disable for maps that are only eventually
  // monotone; roots of f(f(x)) - x still give every solution.
  bool check_decreasing = true;
};

/// All (x, y) with x = f(y), y = f(x), x and y in [a, b]. Diagonal points
/// first, then off-diagonal pairs sorted by x.
std::vector<ReducedPoint> solve_symmetric_system(const ScalarFn& f, double a, double b, double tol = 1e-13,
                                                 SymmetricOptions options = {});

struct TwoCycle {
  double x1 = 0.0;
  double x2 = 0.0;
  double xi = 0.0;
  double derivative = 0.0;  // f'(xi)
};

/// Empty when f'(xi) >= -1: the Kesten criterion does not apply, which says
/// nothing about whether a cycle exists.
std::optional<TwoCycle> two_cycle_kesten(const ScalarFn& f, double xi, double tol = 1e-12);

/// Central difference with step h.
double central_diff(const ScalarFn& f, double x, double h = 1e-6);

}  // namespace hcgibbs
