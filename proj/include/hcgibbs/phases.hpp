#pragma once

// Solution enumeration on the invariant sets, bifurcation tables, the
// brute-force 2D grid oracle, and named theorem checks.

#include <string>
#include <string_view>
#include <vector>

#include "hcgibbs/core.hpp"
#include "hcgibbs/reductions.hpp"
#include "hcgibbs/rootfind.hpp"

namespace hcgibbs {

namespace simd {
struct KernelTable;
}

enum class SolutionClass { TI, WP };
std::string_view to_string(SolutionClass c);

struct Solution {
  BoundaryLaw4 law;
  ReducedPoint reduced;
  SolutionClass cls = SolutionClass::TI;
  double residual = 0.0;
  bool tangent = false;   // |1 - f'(x) f'(y)| below kTangentTol
  int multiplicity = 1;   // 2 for a tangent solution
  bool from_solver = false;
  bool from_oracle = false;
};

inline constexpr double kTangentTol = 1e-5;
inline constexpr double kSolutionDedup = 1e-7;
inline constexpr double kClassTol = 1e-9;
/// WP points this close to a tangent TI solution are absorbed into it.
inline constexpr double kTangentMerge = 1e-4;

struct SolutionSet {
  ModelParams params;
  InvariantSet set = InvariantSet::I1;
  std::vector<Solution> solutions;  // TI first, then WP by reduced x
  int oracle_count = 0;
  int oracle_count_doubled = -1;    // -1 when doubling was not run
  bool oracle_agrees = false;       // same count and locations within 1e-6
  bool tangent = false;

  int count_ti() const;
  int count_wp() const;
  bool resolution_stable() const { return oracle_count_doubled < 0 || oracle_count_doubled == oracle_count; }
};

struct OracleOptions {
  int resolution = 2000;
  int threads = 0;                              // 0: HC_THREADS or hardware
  const simd::KernelTable* kernels = nullptr;   // nullptr: best available
  bool contract = true;                         // shrink the box by sampling W first
};

/// Brute-force scan of the reduced square for cells where both residual
/// components change sign, refined by damped Newton on the full map W.
std::vector<ReducedPoint> grid_oracle(const ReducedCase& rc, double lambda, const OracleOptions& options = {});

struct EnumerateOptions {
  int resolution = 2000;
  bool check_doubling = false;
  int grid_n = kDefaultGrid;
  const simd::KernelTable* kernels = nullptr;
};

/// Throws UnsupportedCase for combinations without a reduction.
SolutionSet enumerate_solutions(const ModelParams& params, InvariantSet set, const EnumerateOptions& options = {});

struct BifurcationRow {
  double lambda = 0.0;
  int total = 0;
  int ti = 0;
  int wp = 0;
  bool tangent = false;
  bool oracle_agrees = false;
  std::vector<ReducedPoint> points;
};

std::vector<BifurcationRow> count_vs_lambda(const ModelParams& tmpl, InvariantSet set,
                                            const std::vector<double>& lambdas, const EnumerateOptions& options = {});

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string evidence;
};

struct TheoremReport {
  std::string id;
  bool pass = false;
  std::vector<CheckLine> checks;
};

const std::vector<std::string>& theorem_ids();
/// Throws DomainError for an unknown id.
TheoremReport verify_theorem(std::string_view id);

/// HC_THREADS if set and positive, else hardware concurrency (at least 1).
int worker_threads();

}  // namespace hcgibbs
