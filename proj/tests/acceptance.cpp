// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any fails. Each criterion also has a wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "exact.hpp"
#include "hcgibbs/core.hpp"
#include "hcgibbs/critical.hpp"
#include "hcgibbs/measure.hpp"
#include "hcgibbs/phases.hpp"
#include "hcgibbs/reductions.hpp"
#include "oracles.hpp"

using namespace hcgibbs;

namespace {

struct Outcome {
  bool pass = true;
  std::string evidence;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      evidence += "[failed: " + what + "] ";
    }
  }
  void note(const std::string& s) { evidence += s + " "; }
};

std::string num(double v, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Every off-diagonal solution seen in criteria 3-6, for the swap check in 9.
std::vector<std::vector<ReducedPoint>> g_solution_sets;

double printed_residual(const ModelParams& p, const BoundaryLaw4& z) {
  const oracle::Law in{z.z1, z.z2, z.z7, z.z8};
  const auto out = oracle::printed_W(p.k, p.i, p.lambda, in);
  const long double d[4] = {out.z1 - in.z1, out.z2 - in.z2, out.z7 - in.z7, out.z8 - in.z8};
  const long double s[4] = {in.z1, in.z2, in.z7, in.z8};
  double worst = 0;
  for (int j = 0; j < 4; ++j) worst = std::max(worst, static_cast<double>(std::fabs(d[j]) / std::max(1.0L, s[j])));
  return worst;
}

SolutionSet solve_doubled(const ModelParams& p, InvariantSet set) {
  EnumerateOptions opt;
  opt.check_doubling = true;
  auto ss = enumerate_solutions(p, set, opt);
  std::vector<ReducedPoint> pts;
  for (const auto& s : ss.solutions) pts.push_back(s.reduced);
  g_solution_sets.push_back(pts);
  return ss;
}

bool has_swap_pair(const SolutionSet& ss) {
  for (const auto& a : ss.solutions) {
    if (a.cls != SolutionClass::WP) continue;
    for (const auto& b : ss.solutions) {
      if (&a != &b && std::abs(a.reduced.x - b.reduced.y) < 1e-6 && std::abs(a.reduced.y - b.reduced.x) < 1e-6) {
        return true;
      }
    }
  }
  return false;
}

// Common checks on an enumerated set: oracle agreement, resolution stability
// and every solution a fixed point of the system as printed.
void check_set(Outcome& o, const SolutionSet& ss, const std::string& tag) {
  o.require(ss.oracle_agrees, tag + " oracle disagrees");
  o.require(ss.resolution_stable(), tag + " count changes under doubling");
  for (const auto& s : ss.solutions) o.require(printed_residual(ss.params, s.law) < 1e-9, tag + " residual");
}

Outcome c1_poly36_roots() {
  Outcome o;
  const double want[4] = {1.285720838, 1.516308807, 1.846900632, 2.150852569};
  const auto r = poly36_roots(1.8, 1.0, 3.0);
  o.require(r.roots.size() == 4, "expected 4 roots, got " + std::to_string(r.roots.size()));
  for (std::size_t j = 0; j < std::min<std::size_t>(4, r.roots.size()); ++j) {
    o.require(std::abs(r.roots[j] - want[j]) <= 1e-6, "root " + std::to_string(j));
    o.note(num(r.roots[j]));
  }
  return o;
}

Outcome c2_lambda_cr() {
  Outcome o;
  const auto c = lambda_cr_I2();
  o.require(std::abs(c.x_star - 1.5) <= 1e-9, "x*");
  o.require(std::abs(c.lambda_cr - 27.0 / 16) <= 1e-12, "lambda_cr");
  o.note("x*=" + num(c.x_star, 15) + " lambda_cr=" + num(c.lambda_cr, 15));
  return o;
}

Outcome c3_i2_counts() {
  Outcome o;
  for (double lam : {1.0, 1.5, 1.6, 1.8, 2.5, 5.0}) {
    const auto ss = solve_doubled({3, 1, lam}, InvariantSet::I2);
    const std::size_t want = lam < 27.0 / 16 ? 1 : 3;
    const std::string tag = "lambda=" + num(lam, 3);
    o.require(ss.solutions.size() == want, tag + " count " + std::to_string(ss.solutions.size()));
    o.require(ss.count_ti() == 1, tag + " TI count");
    if (want == 3) o.require(ss.count_wp() == 2 && has_swap_pair(ss), tag + " WP pair");
    check_set(o, ss, tag);
    o.note(tag + ":" + std::to_string(ss.solutions.size()));
  }
  return o;
}

Outcome c4_uniqueness_grid() {
  Outcome o;
  struct Case {
    InvariantSet set;
    int k, i;
  };
  const Case cases[] = {{InvariantSet::I3, 2, 2}, {InvariantSet::I3, 3, 3}, {InvariantSet::I3, 4, 4},
                        {InvariantSet::I4, 3, 2}, {InvariantSet::I4, 4, 1}, {InvariantSet::I4, 4, 2},
                        {InvariantSet::I4, 4, 3}, {InvariantSet::I4, 5, 1}};
  int runs = 0;
  for (const auto& c : cases) {
    for (double lam : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 50.0}) {
      const auto ss = solve_doubled({c.k, c.i, lam}, c.set);
      const std::string tag = std::string(to_string(c.set)) + "(" + std::to_string(c.k) + "," +
                              std::to_string(c.i) + ") lambda=" + num(lam, 3);
      o.require(ss.solutions.size() == 1 && ss.count_ti() == 1, tag + " count " + std::to_string(ss.solutions.size()));
      check_set(o, ss, tag);
      ++runs;
    }
  }
  o.note(std::to_string(runs) + " (case, lambda) pairs, all unique TI");
  return o;
}

Outcome c5_kesten_regime() {
  Outcome o;
  const auto c6 = s_lambda_pm(6);
  o.require(c6.s_minus == 0.5 && c6.s_plus == 1.0, "s+-(6)");
  o.require(c6.lambda_minus == 729.0 / 128 && c6.lambda_plus == 64.0, "lambda+-(6)");
  o.note("lambda+-(6)=(" + num(c6.lambda_minus, 12) + "," + num(c6.lambda_plus, 12) + ")");

  for (int k : {6, 7}) {
    const auto c = s_lambda_pm(k);
    const double lo = c.lambda_minus, hi = c.lambda_plus;
    std::vector<double> inside{lo + 1e-3, hi - 1e-3}, outside{lo - 1e-3, hi + 1e-3};
    for (int j = 1; j < 20; ++j) inside.push_back(lo + (hi - lo) * j / 20.0);
    for (int j = 1; j < 10; ++j) {
      outside.push_back((lo - 1e-3) * j / 10.0);
      outside.push_back(hi + 1e-3 + hi * j);
    }
    auto derivative = [&](double lam) {
      return gamma_derivative_at_fixed_point(oracle::ti_root(k, lam), k, lam);
    };
    for (double lam : inside) o.require(derivative(lam) < -1.0, "k=" + std::to_string(k) + " inside " + num(lam));
    for (double lam : outside) o.require(derivative(lam) >= -1.0, "k=" + std::to_string(k) + " outside " + num(lam));

    const double mid = 0.5 * (lo + hi);
    const auto ss = solve_doubled({k, 1, mid}, InvariantSet::I4);
    const std::string tag = "k=" + std::to_string(k) + " midpoint";
    o.require(ss.solutions.size() >= 3 && ss.count_ti() == 1 && has_swap_pair(ss), tag + " 2-cycle");
    check_set(o, ss, tag);
    // the pair is a genuine 2-cycle of gamma, not a pair of fixed points
    for (const auto& s : ss.solutions) {
      if (s.cls != SolutionClass::WP) continue;
      o.require(std::abs(gamma_map(s.reduced.x, k, mid) - s.reduced.y) < 1e-9, tag + " gamma(x) = y");
    }
    o.note(tag + ": n=" + std::to_string(ss.solutions.size()));
  }
  return o;
}

Outcome c6_prior_anchors() {
  Outcome o;
  for (int i : {1, 2}) {
    const std::string tag = "k=2 i=" + std::to_string(i);
    const auto below = solve_doubled({2, i, 3.5}, InvariantSet::I2);
    const auto above = solve_doubled({2, i, 4.5}, InvariantSet::I2);
    o.require(below.solutions.size() == 1, tag + " 1 below");
    o.require(above.solutions.size() == 3 && has_swap_pair(above), tag + " 3 above");
    check_set(o, below, tag + " 3.5");
    check_set(o, above, tag + " 4.5");
    for (double lam : {4.0 - 1e-6, 4.0, 4.0 + 1e-6}) {
      const auto ss = enumerate_solutions({2, i, lam}, InvariantSet::I2);
      o.require(ss.tangent, tag + " tangency at " + num(lam, 12));
    }
    o.note(tag + ": 1 -> 3");
  }
  return o;
}

Outcome c7_algebraic_identities() {
  Outcome o;
  using oracle::cpp_rational;
  oracle::Rng rng(7);

  int exact = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const cpp_rational x = oracle::rat(rng, -4, 6, 101), lam = oracle::rat(rng, -3, 8, 67);
    const auto c = deflate_f_by_lambda1(x);
    const cpp_rational g = ((c[3] * lam + c[2]) * lam + c[1]) * lam + c[0];
    exact += oracle::poly36_exact(x, lam) == (lam + x * x * x - x * x * x * x) * g;
  }
  o.require(exact == 100, "deflation identity");
  o.note("deflation exact " + std::to_string(exact) + "/100");

  double worst = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const double x = rng.uniform(1.0 + 1e-9, 5.0);
    const auto ac = oracle::abs_deflation(x);
    const auto b = lambda_branches(x);
    for (double l : {b.lambda2, b.lambda3, b.lambda4}) {
      const double L = std::abs(l);
      const double scale = ((ac[3] * L + ac[2]) * L + ac[1]) * L + ac[0];
      worst = std::max(worst, std::abs(g_eval(l, x)) / scale);
    }
  }
  o.require(worst < 1e-8, "branch residual " + num(worst, 3));
  o.note("branch residual " + num(worst, 3));

  const std::size_t n_below = lambda3_preimages(27.0 / 16 - 1e-3).size();
  const std::size_t n_at = lambda3_preimages(27.0 / 16).size();
  const std::size_t n_above = lambda3_preimages(27.0 / 16 + 1e-3).size();
  o.require(n_below == 0 && n_at == 1 && n_above == 2, "preimage counts");
  o.note("preimages " + std::to_string(n_below) + "/" + std::to_string(n_at) + "/" + std::to_string(n_above));

  double kworst = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int k = rng.integer(1, 8);
    const double lam = std::exp(rng.uniform(std::log(0.01), std::log(100.0)));
    kworst = std::max(kworst, std::abs(kappa(ti_fixed_point(k, lam), k) - lam) / std::max(1.0, lam));
  }
  o.require(kworst <= 1e-9, "kappa round trip " + num(kworst, 3));
  o.note("kappa " + num(kworst, 3));
  return o;
}

// Brute-force admissible count: every subset of V_n with no occupied edge.
std::uint64_t brute_admissible(const LabeledTree& t) {
  const int nv = static_cast<int>(t.parent.size());
  std::vector<std::uint64_t> parent_mask(nv, 0);
  for (int v = 1; v < nv; ++v) parent_mask[v] = std::uint64_t{1} << t.parent[v];
  std::uint64_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << nv); ++s) {
    bool ok = true;
    for (int v = 1; ok && v < nv; ++v) ok = !((s >> v & 1) && (s & parent_mask[v]));
    count += ok;
  }
  return count;
}

Outcome c8_measure_oracle() {
  Outcome o;
  struct Run {
    int k, n;
    double lam;
  };
  for (const Run r : {Run{2, 2, 0.5}, Run{2, 2, 1.5}, Run{3, 2, 1.8}}) {
    const auto t = build_tree(r.k, r.n);
    const double z = oracle::ti_root(r.k, r.lam);
    const double v = consistency_check(t, r.lam, [&](int) { return z; });
    o.require(v < 1e-12, "TI violation " + num(v, 3));
    o.note("k=" + std::to_string(r.k) + " lambda=" + num(r.lam, 3) + ": " + num(v, 2));
  }
  const double bad = consistency_check(build_tree(2, 2), 1.5, [](int) { return 0.9; });
  o.require(bad > 1e-3, "non-solution violation " + num(bad, 3));
  o.note("non-solution: " + num(bad, 3));

  for (auto [k, n] : {std::pair{1, 4}, {2, 2}, {2, 3}, {3, 2}}) {
    const auto t = build_tree(k, n);
    const auto got = enumerate_admissible(t).size();
    const auto want = brute_admissible(t);
    o.require(got == want, "admissible k=" + std::to_string(k) + " n=" + std::to_string(n));
    o.note("|adm(" + std::to_string(k) + "," + std::to_string(n) + ")|=" + std::to_string(got));
  }
  return o;
}

Outcome c9_invariance_and_swaps() {
  Outcome o;
  oracle::Rng rng(9);
  for (int m = 0; m < 4; ++m) {
    int bad = 0;
    for (int rep = 0; rep < 1000; ++rep) {
      const int k = rng.integer(1, 7), i = rng.integer(1, k);
      const double lam = std::exp(rng.uniform(std::log(0.01), std::log(100.0)));
      const double a = rng.uniform(0.01, 5.0), b = rng.uniform(0.01, 5.0);
      BoundaryLaw4 z;
      switch (m) {
        case 0: z = {a, a, a, a}; break;
        case 1: z = {a, b, a, b}; break;
        case 2: z = {a, a, b, b}; break;
        default: z = {a, b, b, a}; break;
      }
      const auto w = eval_W(z, {k, i, lam});
      auto same = [](double p, double q) { return std::abs(p - q) <= 1e-12 * std::max(std::abs(p), std::abs(q)); };
      bool ok = true;
      switch (m) {
        case 0: ok = same(w.z1, w.z2) && same(w.z1, w.z7) && same(w.z1, w.z8); break;
        case 1: ok = same(w.z1, w.z7) && same(w.z2, w.z8); break;
        case 2: ok = same(w.z1, w.z2) && same(w.z7, w.z8); break;
        default: ok = same(w.z1, w.z8) && same(w.z2, w.z7); break;
      }
      bad += !ok;
    }
    o.require(bad == 0, "I" + std::to_string(m + 1) + " not preserved at " + std::to_string(bad) + " points");
  }
  o.note("I1-I4 preserved on 4x1000 points");

  int off = 0, missing = 0;
  for (const auto& pts : g_solution_sets) {
    for (const auto& p : pts) {
      if (std::abs(p.x - p.y) < 1e-9) continue;
      ++off;
      const bool found = std::any_of(pts.begin(), pts.end(), [&](const ReducedPoint& q) {
        return std::abs(q.x - p.y) < 1e-6 && std::abs(q.y - p.x) < 1e-6;
      });
      missing += !found;
    }
  }
  o.require(off > 0, "no off-diagonal solutions were collected");
  o.require(missing == 0, std::to_string(missing) + " swaps missing");
  o.note(std::to_string(off) + " off-diagonal solutions, all swap-closed");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "poly36 roots at lambda=1.8", 1, c1_poly36_roots},
      {2, "lambda_cr recovery", 1, c2_lambda_cr},
      {3, "I2 (3,1) counts", 20, c3_i2_counts},
      {4, "uniqueness grid", 30, c4_uniqueness_grid},
      {5, "Kesten regime on I4", 5, c5_kesten_regime},
      {6, "lambda_cr = 4 anchors", 10, c6_prior_anchors},
      {7, "algebraic identities", 5, c7_algebraic_identities},
      {8, "finite-volume measures", 10, c8_measure_oracle},
      {9, "invariance and swap closure", 5, c9_invariance_and_swaps},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.evidence = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.require(false, "over budget " + num(c.budget_s, 3) + " s");
    failed += !o.pass;
    std::printf("%s %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.evidence.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
