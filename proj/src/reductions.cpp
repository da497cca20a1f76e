#include "hcgibbs/reductions.hpp"

#include <cmath>
#include <string>

#include "hcgibbs/error.hpp"

namespace hcgibbs {
namespace {

constexpr double kEdge = 1e-12;

std::string case_label(InvariantSet set, int k, int i) {
  return std::string(to_string(set)) + " (k=" + std::to_string(k) + ", i=" + std::to_string(i) + ")";
}

// Root in (0, 1] of an increasing g with g(0+) < 0 <= g(1).
template <class G>
double solve_increasing(G g) {
  double lo = 0.0, hi = 1.0;
  if (g(hi) <= 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double i3_power_map(double u, int i, double lambda) {
  const double ui = std::pow(u, i);
  const double denom = 1.0 + lambda * ui + lambda * std::pow(u, i - 1);
  return (1.0 + lambda * ui) / denom;
}

// v with v (1 + lambda v)^{k-1} = (1 + lambda u)^k / ((1 + lambda u)^k + lambda)
double i3_implicit_map(double u, int k, double lambda) {
  const double log_rhs = -std::log1p(lambda * std::exp(-k * std::log1p(lambda * u)));
  return solve_increasing([&](double v) { return std::log(v) + (k - 1) * std::log1p(lambda * v) - log_rhs; });
}

// (1 + lambda u^i) / ((1 + lambda u^i)^{k/i} + lambda w^{i-1}); w is the
// variable being solved for on the left.
double i4_power_rhs(double u, double w, int k, int i, double lambda) {
  const double n = 1.0 + lambda * std::pow(u, i);
  return n / (std::pow(n, static_cast<double>(k) / i) + lambda * std::pow(w, i - 1));
}

// y with y ((1 + lambda x^i)^{k/i} + lambda y^{i-1}) = 1 + lambda x^i
double i4_power_branch(double x, int k, int i, double lambda) {
  const double n = 1.0 + lambda * std::pow(x, i);
  const double t = std::pow(n, static_cast<double>(k) / i);
  if (i == 2) {
    // lambda y^2 + t y - n = 0, positive root in cancellation-free form
    return 2.0 * n / (t + std::sqrt(t * t + 4.0 * lambda * n));
  }
  return solve_increasing([&](double y) { return y * (t + lambda * std::pow(y, i - 1)) - n; });
}

double i2_square_map(double u, double lambda) { return (1.0 + lambda * u * u) * (1.0 - u) / (lambda * u); }

double diagonal_image(double u, int k, int i, double lambda) {
  return eval_W(BoundaryLaw4::constant(u), ModelParams{k, i, lambda}).z1;
}

}  // namespace

bool is_supported(InvariantSet set, int k, int i) {
  if (k < 1 || i < 1 || i > k + 1) return false;
  switch (set) {
    case InvariantSet::I1: return i <= k;
    case InvariantSet::I2: return (k == 3 && i == 1) || (k == 2 && (i == 1 || i == 2));
    case InvariantSet::I3: return k == i || (i == 1 && k >= 2);
    case InvariantSet::I4:
      return i == 1 || k == i || (k == 3 && i == 2) || (k == 4 && (i == 2 || i == 3));
  }
  return false;
}

ReducedCase make_case(InvariantSet set, int k, int i) {
  if (!is_supported(set, k, i)) throw UnsupportedCase("no reduction for " + case_label(set, k, i));
  ReducedCase rc{set, k, i, ReducedKind::Scalar, "", ""};
  switch (set) {
    case InvariantSet::I1:
      rc.kind = ReducedKind::Scalar;
      rc.map_id = "i1-scalar";
      rc.substitution = "z1=z2=z7=z8=x";
      break;
    case InvariantSet::I3:
      if (k == i) {
        rc.kind = ReducedKind::I3Power;
        rc.map_id = "i3-power";
        rc.substitution = "z1=z2=x^i, z7=z8=y^i";
      } else {
        rc.kind = ReducedKind::I3Implicit;
        rc.map_id = "i3-implicit";
        rc.substitution = "z1=z2=x, z7=z8=y";
      }
      break;
    case InvariantSet::I4:
      if (i == 1) {
        rc.kind = ReducedKind::I4Gamma;
        rc.map_id = "i4-gamma";
        rc.substitution = "z1=z8=y, z2=z7=x";
      } else {
        rc.kind = ReducedKind::I4Power;
        rc.map_id = "i4-power";
        rc.substitution = "z1=z8=y^i, z2=z7=x^i";
      }
      break;
    case InvariantSet::I2:
      if (i == 1) {
        rc.kind = ReducedKind::I2Shifted;
        rc.map_id = k == 3 ? "i2-h3" : "i2-h2";
        rc.substitution = "z1=z7=(x-1)/lambda, z2=z8=(y-1)/lambda";
      } else {
        rc.kind = ReducedKind::I2Square;
        rc.map_id = "i2-square";
        rc.substitution = "z1=z7=x^2, z2=z8=y^2";
      }
      break;
  }
  return rc;
}

double h_map(double x, double lambda, int k) {
  if (!(x > 1.0)) throw DomainError("h_map: x must exceed 1");
  if (!(lambda > 0.0)) throw DomainError("h_map: lambda must be positive");
  if (k != 2 && k != 3) throw UnsupportedCase("h_map: only k = 2 and k = 3 are implemented");
  const double xk = std::pow(x, k);
  const double q = lambda * xk / ((xk + lambda) * (x - 1.0));
  return k == 3 ? std::sqrt(q) : q;
}

double gamma_map(double x, int k, double lambda) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("gamma_map: x must lie in [0, 1]");
  if (k < 1) throw DomainError("gamma_map: k must be >= 1");
  if (!(lambda > 0.0)) throw DomainError("gamma_map: lambda must be positive");
  const double b = 1.0 + lambda * x;
  return b / (std::pow(b, k) + lambda);
}

double gamma_derivative_at_fixed_point(double xi, int k, double lambda) {
  const double b = 1.0 + lambda * xi;
  return (lambda * xi * (1.0 - k) + lambda * lambda * xi * xi) / (b * b);
}

Interval domain(const ReducedCase& rc, double lambda) {
  switch (rc.kind) {
    case ReducedKind::I4Gamma: return {0.0, 1.0};
    case ReducedKind::I2Shifted: return {1.0 + kEdge, 1.0 + lambda};
    default: return {kEdge, 1.0 - kEdge};
  }
}

bool in_domain(const ReducedCase& rc, const ReducedPoint& p, double lambda) {
  const auto d = domain(rc, lambda);
  return p.x >= d.lo && p.x <= d.hi && p.y >= d.lo && p.y <= d.hi;
}

ScalarFn symmetric_branch(const ReducedCase& rc, double lambda) {
  const int k = rc.k, i = rc.i;
  switch (rc.kind) {
    case ReducedKind::Scalar: return [=](double u) { return diagonal_image(u, k, i, lambda); };
    case ReducedKind::I3Power: return [=](double u) { return i3_power_map(u, i, lambda); };
    case ReducedKind::I3Implicit: return [=](double u) { return i3_implicit_map(u, k, lambda); };
    case ReducedKind::I4Gamma: return [=](double u) { return gamma_map(u, k, lambda); };
    case ReducedKind::I4Power: return [=](double u) { return i4_power_branch(u, k, i, lambda); };
    case ReducedKind::I2Shifted: return [=](double u) { return h_map(u, lambda, k); };
    case ReducedKind::I2Square: return [=](double u) { return i2_square_map(u, lambda); };
  }
  throw UnsupportedCase("unknown reduction kind");
}

ReducedPoint reduced_map(const ReducedCase& rc, const ReducedPoint& p, double lambda) {
  if (!in_domain(rc, p, lambda)) throw DomainError("reduced_map: point outside the case domain");
  const int k = rc.k, i = rc.i;
  switch (rc.kind) {
    case ReducedKind::Scalar:
      return {diagonal_image(p.x, k, i, lambda), diagonal_image(p.y, k, i, lambda)};
    case ReducedKind::I3Power: return {i3_power_map(p.y, i, lambda), i3_power_map(p.x, i, lambda)};
    case ReducedKind::I3Implicit: return project(rc, eval_W(lift(rc, p, lambda), {k, i, lambda}), lambda);
    case ReducedKind::I4Gamma: return {gamma_map(p.y, k, lambda), gamma_map(p.x, k, lambda)};
    case ReducedKind::I4Power:
      // both right sides carry the left-hand variable of the other equation
      return {i4_power_rhs(p.y, p.x, k, i, lambda), i4_power_rhs(p.x, p.y, k, i, lambda)};
    case ReducedKind::I2Shifted: return {h_map(p.y, lambda, k), h_map(p.x, lambda, k)};
    case ReducedKind::I2Square: return {i2_square_map(p.y, lambda), i2_square_map(p.x, lambda)};
  }
  throw UnsupportedCase("unknown reduction kind");
}

BoundaryLaw4 lift(const ReducedCase& rc, const ReducedPoint& p, double lambda) {
  const int i = rc.i;
  switch (rc.kind) {
    case ReducedKind::Scalar: return BoundaryLaw4::constant(p.x);
    case ReducedKind::I3Power: {
      const double a = std::pow(p.x, i), b = std::pow(p.y, i);
      return {a, a, b, b};
    }
    case ReducedKind::I3Implicit: return {p.x, p.x, p.y, p.y};
    case ReducedKind::I4Gamma: return {p.y, p.x, p.x, p.y};
    case ReducedKind::I4Power: {
      const double a = std::pow(p.y, i), b = std::pow(p.x, i);
      return {a, b, b, a};
    }
    case ReducedKind::I2Shifted: {
      const double a = (p.x - 1.0) / lambda, b = (p.y - 1.0) / lambda;
      return {a, b, a, b};
    }
    case ReducedKind::I2Square: {
      const double a = p.x * p.x, b = p.y * p.y;
      return {a, b, a, b};
    }
  }
  throw UnsupportedCase("unknown reduction kind");
}

ReducedPoint project(const ReducedCase& rc, const BoundaryLaw4& z, double lambda) {
  const double inv_i = 1.0 / rc.i;
  switch (rc.kind) {
    case ReducedKind::Scalar: return {z.z1, z.z1};
    case ReducedKind::I3Power: return {std::pow(z.z1, inv_i), std::pow(z.z7, inv_i)};
    case ReducedKind::I3Implicit: return {z.z1, z.z7};
    case ReducedKind::I4Gamma: return {z.z2, z.z1};
    case ReducedKind::I4Power: return {std::pow(z.z2, inv_i), std::pow(z.z1, inv_i)};
    case ReducedKind::I2Shifted: return {1.0 + lambda * z.z1, 1.0 + lambda * z.z2};
    case ReducedKind::I2Square: return {std::sqrt(z.z1), std::sqrt(z.z2)};
  }
  throw UnsupportedCase("unknown reduction kind");
}

double ti_reduced(const ReducedCase& rc, double lambda) {
  const double z = ti_fixed_point(rc.k, lambda);
  return project(rc, BoundaryLaw4::constant(z), lambda).x;
}

}  // namespace hcgibbs
