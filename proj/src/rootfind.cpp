#include "hcgibbs/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hcgibbs/error.hpp"

namespace hcgibbs {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Bisect [lo, hi] (f(lo), f(hi) of opposite sign) until the interval stops
// shrinking or is below tol, then try one secant step from the final bracket.
double bisect(const ScalarFn& f, double lo, double hi, double flo, double tol) {
  for (int it = 0; it < 300; ++it) {
    if (hi - lo <= tol) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (!std::isfinite(fm)) break;
    if (sign_of(fm) == sign_of(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fhi = f(hi);
  const double fm = f(mid);
  if (std::isfinite(flo) && std::isfinite(fhi) && fhi != flo) {
    const double xs = lo - flo * (hi - lo) / (fhi - flo);
    if (xs >= lo && xs <= hi) {
      const double fs = f(xs);
      if (std::isfinite(fs) && std::abs(fs) < std::abs(fm)) return xs;
    }
  }
  return mid;
}

void merge_close(RootList& out, double dist) {
  RootList merged;
  merged.bracket_width = out.bracket_width;
  std::vector<std::size_t> order(out.roots.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return out.roots[a] < out.roots[b]; });
  for (auto j : order) {
    if (!merged.roots.empty() && out.roots[j] - merged.roots.back() <= dist) {
      if (out.residuals[j] < merged.residuals.back()) {
        merged.roots.back() = out.roots[j];
        merged.residuals.back() = out.residuals[j];
      }
      merged.multiple.back() = merged.multiple.back() || out.multiple[j];
      continue;
    }
    merged.roots.push_back(out.roots[j]);
    merged.residuals.push_back(out.residuals[j]);
    merged.multiple.push_back(out.multiple[j]);
  }
  out = std::move(merged);
}

// Sum |c_j| |x|^j: the magnitude rounding errors in p(x) scale with.
double abs_scale(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * std::abs(x) + std::abs(*it);
  return s;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t j = 1; j < c.size(); ++j) d.push_back(static_cast<double>(j) * c[j]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double central_diff(const ScalarFn& f, double x, double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }

RootList bracketed_roots(const ScalarFn& f, double a, double b, int grid_n, double tol) {
  if (!(a < b)) throw DomainError("bracketed_roots: need a < b");
  if (grid_n < 2) throw DomainError("bracketed_roots: grid_n must be >= 2");
  RootList out;
  out.bracket_width = (b - a) / grid_n;
  std::vector<double> xs(grid_n + 1), fs(grid_n + 1);
  for (int j = 0; j <= grid_n; ++j) {
    xs[j] = (j == grid_n) ? b : a + j * out.bracket_width;
    fs[j] = f(xs[j]);
  }
  auto push = [&](double r) {
    const double fr = f(r);
    out.roots.push_back(r);
    out.residuals.push_back(std::isfinite(fr) ? std::abs(fr) : kNaN);
    out.multiple.push_back(false);
  };
  for (int j = 0; j <= grid_n; ++j) {
    if (fs[j] == 0.0) push(xs[j]);
    if (j == grid_n) break;
    if (!std::isfinite(fs[j]) || !std::isfinite(fs[j + 1])) continue;
    if (fs[j] == 0.0 || fs[j + 1] == 0.0) continue;
    if (sign_of(fs[j]) != sign_of(fs[j + 1])) push(bisect(f, xs[j], xs[j + 1], fs[j], tol));
  }
  merge_close(out, kDedupDistance);
  return out;
}

RootList poly_real_roots(const std::vector<double>& coeffs_in, double a, double b, double tol, double touch_tol) {
  std::vector<double> c = coeffs_in;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw DomainError("poly_real_roots: zero polynomial");
  if (!(a < b)) throw DomainError("poly_real_roots: need a < b");
  const int degree = static_cast<int>(c.size()) - 1;
  RootList out;
  if (degree == 0) return out;
  const auto dc = derivative(c);
  const ScalarFn p = [&](double x) { return horner(c, x); };

  const int n = degree > 8 ? kPolyGrid : kDefaultGrid;
  out.bracket_width = (b - a) / n;
  std::vector<double> xs(n + 1), ps(n + 1);
  for (int j = 0; j <= n; ++j) {
    xs[j] = (j == n) ? b : a + j * out.bracket_width;
    ps[j] = p(xs[j]);
  }

  auto is_multiple = [&](double r) { return std::abs(horner(dc, r)) <= 1e-6 * abs_scale(dc, r); };
  auto push = [&](double r, bool touch) {
    out.roots.push_back(r);
    out.residuals.push_back(std::abs(p(r)));
    out.multiple.push_back(touch || is_multiple(r));
  };

  std::vector<bool> near_change(n + 1, false);
  for (int j = 0; j <= n; ++j) {
    if (ps[j] == 0.0) {
      push(xs[j], false);
      near_change[j] = true;
    }
    if (j == n) break;
    if (ps[j] != 0.0 && ps[j + 1] != 0.0 && sign_of(ps[j]) != sign_of(ps[j + 1])) {
      push(bisect(p, xs[j], xs[j + 1], ps[j], tol), false);
      near_change[j] = near_change[j + 1] = true;
    }
  }

  // Touch points: interior local minima of |p| with no sign change nearby,
  // refined by golden section and kept if |p| is at rounding level.
  for (int j = 1; j < n; ++j) {
    if (near_change[j - 1] || near_change[j] || near_change[j + 1]) continue;
    const double m = std::abs(ps[j]);
    if (!(m <= std::abs(ps[j - 1]) && m <= std::abs(ps[j + 1]))) continue;
    double lo = xs[j - 1], hi = xs[j + 1];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = std::abs(p(x1)), f2 = std::abs(p(x2));
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = std::abs(p(x1));
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = std::abs(p(x2));
      }
    }
    const double xm = 0.5 * (lo + hi);
    if (std::abs(p(xm)) < touch_tol * abs_scale(c, xm)) push(xm, true);
  }

  merge_close(out, kDedupDistance);

  // Sign flips inside the rounding band of a multiple root can leave several
  // nearby brackets; collapse neighbours whose gap never leaves that band.
  RootList collapsed;
  collapsed.bracket_width = out.bracket_width;
  for (std::size_t j = 0; j < out.roots.size(); ++j) {
    if (!collapsed.roots.empty()) {
      const double r0 = collapsed.roots.back(), r1 = out.roots[j];
      bool flat = r1 - r0 < 16 * out.bracket_width;
      for (int s = 1; flat && s < 8; ++s) {
        const double x = r0 + (r1 - r0) * s / 8.0;
        flat = std::abs(p(x)) < touch_tol * abs_scale(c, x);
      }
      if (flat) {
        collapsed.roots.back() = 0.5 * (r0 + r1);
        collapsed.residuals.back() = std::abs(p(collapsed.roots.back()));
        collapsed.multiple.back() = true;
        continue;
      }
    }
    collapsed.roots.push_back(out.roots[j]);
    collapsed.residuals.push_back(out.residuals[j]);
    collapsed.multiple.push_back(out.multiple[j]);
  }

  // Back-substitution check relative to the evaluation scale.
  RootList verified;
  verified.bracket_width = collapsed.bracket_width;
  for (std::size_t j = 0; j < collapsed.roots.size(); ++j) {
    const double r = collapsed.roots[j];
    const double bound = collapsed.multiple[j] ? touch_tol : std::max(tol, 1e-10);
    if (collapsed.residuals[j] <= bound * abs_scale(c, r)) {
      verified.roots.push_back(r);
      verified.residuals.push_back(collapsed.residuals[j]);
      verified.multiple.push_back(collapsed.multiple[j]);
    }
  }
  return verified;
}

std::vector<ReducedPoint> solve_symmetric_system(const ScalarFn& f, double a, double b, double tol,
                                                 SymmetricOptions options) {
  if (!(a < b)) throw DomainError("solve_symmetric_system: need a < b");
  const int n = options.grid_n;
  if (options.check_decreasing) {
    double prev = f(a);
    for (int j = 1; j <= n; ++j) {
      const double x = (j == n) ? b : a + (b - a) * j / n;
      const double v = f(x);
      if (!(v < prev)) throw DomainError("solve_symmetric_system: map is not strictly decreasing on the domain");
      prev = v;
    }
  }
  auto in_domain = [&](double v) { return std::isfinite(v) && v >= a && v <= b; };
  const ScalarFn fixed = [&](double x) { return f(x) - x; };
  const ScalarFn composed = [&](double x) {
    const double y = f(x);
    if (!in_domain(y)) return kNaN;
    return f(y) - x;
  };

  std::vector<ReducedPoint> diag, off;
  for (double r : bracketed_roots(fixed, a, b, n, tol).roots) diag.push_back({r, r});

  const double sep = 1e-7;
  auto near_any = [&](const std::vector<ReducedPoint>& pts, ReducedPoint q) {
    for (const auto& p : pts) {
      if (std::hypot(p.x - q.x, p.y - q.y) <= sep) return true;
    }
    return false;
  };
  for (double r : bracketed_roots(composed, a, b, n, tol).roots) {
    const double y = f(r);
    if (!in_domain(y)) continue;
    const ReducedPoint q{r, y};
    if (std::abs(y - r) <= sep || near_any(diag, q) || near_any(off, q)) continue;
    off.push_back(q);
  }
  // Each off-diagonal root r brings (r, f(r)); make sure the mirror is
  // present even if the scan caught only one end of the pair.
  const auto found = off;
  for (const auto& q : found) {
    const ReducedPoint m{q.y, q.x};
    if (!near_any(off, m)) off.push_back(m);
  }
  std::sort(off.begin(), off.end(), [](auto p, auto q) { return p.x < q.x; });
  diag.insert(diag.end(), off.begin(), off.end());
  return diag;
}

std::optional<TwoCycle> two_cycle_kesten(const ScalarFn& f, double xi, double tol) {
  const double fx = f(xi);
  if (!(std::abs(fx - xi) <= std::max(tol, 1e-12))) {
    throw DomainError("two_cycle_kesten: xi is not a fixed point within tolerance");
  }
  const double d = central_diff(f, xi, 1e-6);
  // strict inequality; the margin absorbs finite-difference noise
  if (!(d < -1.0 - 1e-8)) return std::nullopt;

  const double delta = 10.0 * tol;
  const ScalarFn g = [&](double x) { return f(f(x)) - x; };
  const auto roots = bracketed_roots(g, 0.0, xi - delta, kDefaultGrid, 1e-15);
  for (auto it = roots.roots.rbegin(); it != roots.roots.rend(); ++it) {
    const double x1 = *it, x2 = f(x1);
    if (x1 < xi && x2 > xi && std::abs(x1 - xi) > delta) return TwoCycle{x1, x2, xi, d};
  }
  return std::nullopt;
}

}  // namespace hcgibbs
