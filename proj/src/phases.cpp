#include "hcgibbs/phases.hpp"

#include <algorithm>
#include <cmath>

#include "hcgibbs/error.hpp"

namespace hcgibbs {

std::string_view to_string(SolutionClass c) { return c == SolutionClass::TI ? "TI" : "WP"; }

int SolutionSet::count_ti() const {
  return static_cast<int>(std::count_if(solutions.begin(), solutions.end(),
                                        [](const Solution& s) { return s.cls == SolutionClass::TI; }));
}

int SolutionSet::count_wp() const { return static_cast<int>(solutions.size()) - count_ti(); }

namespace {

double dist(const ReducedPoint& a, const ReducedPoint& b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

std::vector<ReducedPoint> solver_points(const ReducedCase& rc, double lambda, int grid_n) {
  const auto d = domain(rc, lambda);
  const auto f = symmetric_branch(rc, lambda);
  if (rc.kind == ReducedKind::Scalar) {
    std::vector<ReducedPoint> out;
    const ScalarFn g = [&](double x) { return f(x) - x; };
    for (double r : bracketed_roots(g, d.lo, d.hi, grid_n, 1e-15).roots) out.push_back({r, r});
    return out;
  }
  // f need not be monotone for large lambda; the composition scan still
  // finds every solution, so the precondition check is off here.
  return solve_symmetric_system(f, d.lo, d.hi, 1e-15, {grid_n, false});
}

bool locations_agree(const std::vector<ReducedPoint>& a, const std::vector<ReducedPoint>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    if (std::none_of(b.begin(), b.end(), [&](const ReducedPoint& q) { return dist(p, q) <= tol; })) return false;
  }
  return true;
}

}  // namespace

SolutionSet enumerate_solutions(const ModelParams& params, InvariantSet set, const EnumerateOptions& options) {
  params.validate();
  const ReducedCase rc = make_case(set, params.k, params.i);
  const double lambda = params.lambda;

  SolutionSet out;
  out.params = params;
  out.set = set;

  const auto solved = solver_points(rc, lambda, options.grid_n);
  OracleOptions oo;
  oo.resolution = options.resolution;
  oo.kernels = options.kernels;
  const auto oracle = grid_oracle(rc, lambda, oo);
  out.oracle_count = static_cast<int>(oracle.size());
  if (options.check_doubling) {
    oo.resolution = 2 * options.resolution;
    out.oracle_count_doubled = static_cast<int>(grid_oracle(rc, lambda, oo).size());
  }

  std::vector<Solution> merged;
  auto add = [&](const ReducedPoint& p, bool solver) {
    for (auto& s : merged) {
      if (dist(s.reduced, p) <= kSolutionDedup) {
        (solver ? s.from_solver : s.from_oracle) = true;
        return;
      }
    }
    Solution s;
    s.reduced = p;
    (solver ? s.from_solver : s.from_oracle) = true;
    merged.push_back(s);
  };
  for (const auto& p : solved) add(p, true);
  for (const auto& p : oracle) add(p, false);

  const auto f = symmetric_branch(rc, lambda);
  const auto d = domain(rc, lambda);
  auto slope = [&](double x) {
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    const double lo = std::max(d.lo, x - h), hi = std::min(d.hi, x + h);
    return (f(hi) - f(lo)) / (hi - lo);
  };

  for (auto& s : merged) {
    s.law = lift(rc, s.reduced, lambda);
    s.residual = residual(s.law, params).max_norm;
    const auto z = s.law.as_array();
    const auto [mn, mx] = std::minmax_element(z.begin(), z.end());
    s.cls = (*mx - *mn <= kClassTol) ? SolutionClass::TI : SolutionClass::WP;
    // x = f(y), y = f(x) is singular where f'(x) f'(y) = 1
    if (rc.kind != ReducedKind::Scalar) {
      s.tangent = std::abs(1.0 - slope(s.reduced.x) * slope(s.reduced.y)) < kTangentTol;
    }
    s.multiplicity = s.tangent ? 2 : 1;
    out.tangent = out.tangent || s.tangent;
  }
  // At a pitchfork the swap pair collapses onto the tangent TI point; what is
  // left of it a few ulps of the branch map away is the same solution.
  std::vector<ReducedPoint> pinch;
  for (const auto& t : merged) {
    if (t.cls == SolutionClass::TI && t.tangent) pinch.push_back(t.reduced);
  }
  auto absorbed_by = [&](const ReducedPoint& p) -> const ReducedPoint* {
    if (std::abs(p.x - p.y) <= kClassTol) return nullptr;
    for (const auto& q : pinch) {
      if (dist(p, q) <= kTangentMerge) return &q;
    }
    return nullptr;
  };
  std::erase_if(merged, [&](const Solution& s) { return s.cls == SolutionClass::WP && absorbed_by(s.reduced); });
  // snap to the pinch point, so an oracle that only converged near it still agrees
  auto kept = [&](const std::vector<ReducedPoint>& v) {
    std::vector<ReducedPoint> r;
    for (const auto& p : v) {
      const auto* q = absorbed_by(p);
      const ReducedPoint x = q ? *q : p;
      if (std::none_of(r.begin(), r.end(), [&](const ReducedPoint& y) { return dist(x, y) <= kSolutionDedup; }))
        r.push_back(x);
    }
    return r;
  };
  out.oracle_agrees = locations_agree(kept(solved), kept(oracle), 1e-6);
  std::stable_sort(merged.begin(), merged.end(), [](const Solution& a, const Solution& b) {
    if (a.cls != b.cls) return a.cls == SolutionClass::TI;
    return a.reduced.x < b.reduced.x;
  });
  out.solutions = std::move(merged);
  return out;
}

std::vector<BifurcationRow> count_vs_lambda(const ModelParams& tmpl, InvariantSet set,
                                            const std::vector<double>& lambdas, const EnumerateOptions& options) {
  make_case(set, tmpl.k, tmpl.i);
  std::vector<BifurcationRow> rows;
  rows.reserve(lambdas.size());
  for (double lam : lambdas) {
    if (!(lam > 0.0)) throw DomainError("count_vs_lambda: lambda values must be positive");
    ModelParams p = tmpl;
    p.lambda = lam;
    const auto ss = enumerate_solutions(p, set, options);
    BifurcationRow row;
    row.lambda = lam;
    row.total = static_cast<int>(ss.solutions.size());
    row.ti = ss.count_ti();
    row.wp = ss.count_wp();
    row.tangent = ss.tangent;
    row.oracle_agrees = ss.oracle_agrees;
    for (const auto& s : ss.solutions) row.points.push_back(s.reduced);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hcgibbs
