#include "hcgibbs/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "hcgibbs/error.hpp"
#include "simd/scalar_terms.hpp"

namespace hcgibbs {

void ModelParams::validate() const {
  if (k < 1) throw DomainError("tree order k must be >= 1, got " + std::to_string(k));
  if (i < 1 || i > k + 1) {
    throw DomainError("|A| must satisfy 1 <= i <= k+1, got i=" + std::to_string(i) + " for k=" + std::to_string(k));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("activity lambda must be positive and finite");
}

std::string_view to_string(InvariantSet s) {
  switch (s) {
    case InvariantSet::I1: return "I1";
    case InvariantSet::I2: return "I2";
    case InvariantSet::I3: return "I3";
    case InvariantSet::I4: return "I4";
  }
  return "?";
}

InvariantSet parse_invariant_set(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (t == "I1") return InvariantSet::I1;
  if (t == "I2") return InvariantSet::I2;
  if (t == "I3") return InvariantSet::I3;
  if (t == "I4") return InvariantSet::I4;
  throw DomainError("unknown invariant set '" + std::string(text) + "' (expected I1..I4)");
}

double lambda_from_temperature(double coupling, double temperature) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  return std::exp(-coupling / temperature);
}

BoundaryLaw4 eval_W(const BoundaryLaw4& state, const ModelParams& params) {
  params.validate();
  const auto z = state.as_array();
  for (double c : z) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("boundary law components must be positive and finite");
  }
  const int k = params.k, i = params.i;
  const double lam = params.lambda;
  std::array<double, 4> t{}, s{}, u{};
  for (int j = 0; j < 4; ++j) {
    t[j] = detail::term_t(k, i, lam, z[j]);
    s[j] = detail::term_s(i, z[j]);
    u[j] = detail::term_u(k, i, lam, z[j]);
  }
  // index order 0..3 = z1, z2, z7, z8
  BoundaryLaw4 out{
      detail::image(i, lam, t[2], s[3], u[1]),
      detail::image(i, lam, t[3], s[2], u[0]),
      detail::image(i, lam, t[0], s[1], u[3]),
      detail::image(i, lam, t[1], s[0], u[2]),
  };
  for (double c : out.as_array()) {
    if (!std::isfinite(c) || !(c > 0.0)) throw NumericRangeError("W image left the positive reals (overflow?)");
  }
  return out;
}

Residual residual(const BoundaryLaw4& state, const ModelParams& params) {
  const auto img = eval_W(state, params).as_array();
  const auto z = state.as_array();
  Residual r;
  for (int j = 0; j < 4; ++j) {
    r.component[j] = std::abs(z[j] - img[j]);
    r.max_norm = std::max(r.max_norm, r.component[j]);
  }
  return r;
}

double ti_fixed_point(int k, double lambda) {
  if (k < 1) throw DomainError("tree order k must be >= 1");
  if (!(lambda > 0.0)) throw DomainError("activity lambda must be positive");
  // log form keeps large k*lambda from overflowing; strictly increasing in x.
  auto g = [&](double x) { return std::log(x) + k * std::log1p(lambda * x); };
  double lo = 0.0, hi = 1.0;
  if (g(hi) <= 0.0) return 1.0;  // unreachable for lambda > 0
  // relative stop: xi is tiny when k * lambda is large
  for (int it = 0; it < 400 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {
bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

bool in_invariant_set(const BoundaryLaw4& z, InvariantSet set, double tol) {
  switch (set) {
    case InvariantSet::I1:
      return close(z.z1, z.z2, tol) && close(z.z1, z.z7, tol) && close(z.z1, z.z8, tol);
    case InvariantSet::I2: return close(z.z1, z.z7, tol) && close(z.z2, z.z8, tol);
    case InvariantSet::I3: return close(z.z1, z.z2, tol) && close(z.z7, z.z8, tol);
    case InvariantSet::I4: return close(z.z1, z.z8, tol) && close(z.z2, z.z7, tol);
  }
  return false;
}

std::vector<InvariantSet> invariant_set_membership(const BoundaryLaw4& state, double tol) {
  if (!(tol > 0.0)) throw DomainError("membership tolerance must be positive");
  std::vector<InvariantSet> out;
  // I1 implies the others exactly in theory; report them together so a point
  // near the diagonal never shows up as I1 without I2..I4.
  if (in_invariant_set(state, InvariantSet::I1, tol)) {
    return {InvariantSet::I1, InvariantSet::I2, InvariantSet::I3, InvariantSet::I4};
  }
  for (auto s : {InvariantSet::I2, InvariantSet::I3, InvariantSet::I4}) {
    if (in_invariant_set(state, s, tol)) out.push_back(s);
  }
  return out;
}

}  // namespace hcgibbs
