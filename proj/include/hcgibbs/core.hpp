#pragma once

// Model parameters, the index-4 weakly periodic map W, and the
// translation-invariant scalar equation of the hard-core model.

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace hcgibbs {

inline constexpr double kResidualTol = 1e-12;
inline constexpr double kScalarRootTol = 1e-13;
inline constexpr double kMembershipTol = 1e-9;

/// Tree order k, |A| = i and activity lambda.
struct ModelParams {
  int k = 1;
  int i = 1;
  double lambda = 1.0;

  /// Throws DomainError unless k >= 1, 1 <= i <= k+1 and lambda > 0.
  void validate() const;
};

/// Normalized boundary law (z1, z2, z7, z8) of the weakly periodic system.
struct BoundaryLaw4 {
  double z1 = 0.0;
  double z2 = 0.0;
  double z7 = 0.0;
  double z8 = 0.0;

  std::array<double, 4> as_array() const { return {z1, z2, z7, z8}; }
  static BoundaryLaw4 from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
  static BoundaryLaw4 constant(double z) { return {z, z, z, z}; }
};

struct Residual {
  std::array<double, 4> component{};
  double max_norm = 0.0;
};

enum class InvariantSet { I1, I2, I3, I4 };

std::string_view to_string(InvariantSet s);
/// Accepts "I1".."I4" (case-insensitive). Throws DomainError otherwise.
InvariantSet parse_invariant_set(std::string_view text);

/// exp(-J/T).
double lambda_from_temperature(double coupling, double temperature);

/// One application of W. Components are computed as
///   z1' = [t(z7) / (t(z7) + lambda * s(z8))]^i * (1 + lambda z2)^{-(k-i)}
/// with t(z) = (1 + lambda z)^{k/i} and s(z) = z^{1-1/i}, which is the
/// printed right-hand side divided through by (1 + lambda z7)^k.
BoundaryLaw4 eval_W(const BoundaryLaw4& state, const ModelParams& params);

Residual residual(const BoundaryLaw4& state, const ModelParams& params);

/// Unique root in (0, 1) of x (1 + lambda x)^k = 1.
double ti_fixed_point(int k, double lambda);

/// Every I_m whose defining equalities hold within tol, in order I1..I4.
std::vector<InvariantSet> invariant_set_membership(const BoundaryLaw4& state, double tol = kMembershipTol);

bool in_invariant_set(const BoundaryLaw4& state, InvariantSet set, double tol = kMembershipTol);

}  // namespace hcgibbs
