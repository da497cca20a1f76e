#pragma once

// Case-specific two-variable reductions of the weakly periodic system.
//
// Every supported case becomes x = f(y), y = f(x) for a scalar branch map f
// on an interval, so all solutions are roots of f(f(x)) - x. reduced_map
// applies the reduced right-hand sides as written for the case, which for
// the power forms on I4 keeps the "other" variable on the right.

#include <string>

#include "hcgibbs/core.hpp"
#include "hcgibbs/rootfind.hpp"

namespace hcgibbs {

enum class ReducedKind {
  Scalar,      // I1: the diagonal, one unknown
  I3Power,     // I3, k = i:  z1 = z2 = x^i, z7 = z8 = y^i
  I3Implicit,  // I3, i = 1:  z1 = z2 = x, z7 = z8 = y
  I4Gamma,     // I4, i = 1:  z1 = z8 = y, z2 = z7 = x
  I4Power,     // I4, i >= 2: z1 = z8 = y^i, z2 = z7 = x^i
  I2Shifted,   // I2, i = 1, k in {2,3}: x = 1 + lambda z1, y = 1 + lambda z2
  I2Square,    // I2, k = i = 2: z1 = z7 = x^2, z2 = z8 = y^2
};

struct ReducedCase {
  InvariantSet set = InvariantSet::I1;
  int k = 1;
  int i = 1;
  ReducedKind kind = ReducedKind::Scalar;
  std::string map_id;
  std::string substitution;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

bool is_supported(InvariantSet set, int k, int i);
/// Throws UnsupportedCase for anything outside the support table.
ReducedCase make_case(InvariantSet set, int k, int i);

/// sqrt(lambda x^3 / ((x^3 + lambda)(x - 1))) for k = 3; the k = 2 analogue
/// has no root. Throws DomainError for x <= 1 or k outside {2, 3}.
double h_map(double x, double lambda, int k = 3);

/// (1 + lambda x) / ((1 + lambda x)^k + lambda), x in [0, 1].
double gamma_map(double x, int k, double lambda);

/// Closed-form derivative of gamma at its fixed point xi.
double gamma_derivative_at_fixed_point(double xi, int k, double lambda);

/// Search interval for the reduced coordinates (open ends pulled in by 1e-12).
Interval domain(const ReducedCase& rc, double lambda);
bool in_domain(const ReducedCase& rc, const ReducedPoint& p, double lambda);

/// Scalar map f with x = f(y), y = f(x). Values outside the domain come back
/// unchanged so callers can reject them.
ScalarFn symmetric_branch(const ReducedCase& rc, double lambda);

/// One application of the reduced right-hand sides.
ReducedPoint reduced_map(const ReducedCase& rc, const ReducedPoint& p, double lambda);

BoundaryLaw4 lift(const ReducedCase& rc, const ReducedPoint& p, double lambda);
ReducedPoint project(const ReducedCase& rc, const BoundaryLaw4& law, double lambda);

/// The translation-invariant point in reduced coordinates (x = y).
double ti_reduced(const ReducedCase& rc, double lambda);

}  // namespace hcgibbs
