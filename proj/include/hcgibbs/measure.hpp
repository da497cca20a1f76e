#pragma once

// Finite-volume ground truth on depth-n Cayley trees: labelled trees, the
// four classes H0..H3, admissible (independent-set) configurations, the
// finite-volume measures and their consistency across levels.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hcgibbs/core.hpp"

namespace hcgibbs {

/// Vertices in BFS order, so V_m for m <= depth is a prefix.
struct LabeledTree {
  int k = 1;
  int depth = 0;
  std::vector<int> parent;  // -1 for the root
  std::vector<int> label;   // label of the edge to the parent, 0 for the root
  std::vector<int> level;
  std::vector<std::vector<int>> children;
  std::vector<int> level_end;  // level_end[m] = |V_m|

  std::size_t size() const { return parent.size(); }
  std::vector<int> level_vertices(int m) const;  // W_m
};

/// HC_MAX_TREE_VERTICES if set, else 25.
std::size_t max_tree_vertices();

/// Throws SizeGuardError when |V_n| exceeds guard (0 means max_tree_vertices()).
LabeledTree build_tree(int k, int n, std::size_t guard = 0);

/// Class index = (A-letter parity) + 2 * (length parity), relative to the
/// root's class. A holds edge labels in 1..k+1.
std::vector<int> assign_classes(const LabeledTree& tree, const std::vector<int>& A, int root_class = 0);

using Config = std::uint64_t;  // bit v set = vertex v occupied

/// Independent sets on V_depth (depth < 0: the whole tree).
std::vector<Config> enumerate_admissible(const LabeledTree& tree, int depth = -1);
/// Same count by the leaf-to-root product recursion.
std::uint64_t independence_count(const LabeledTree& tree, int depth = -1);

struct FiniteMeasure {
  int depth = 0;
  std::vector<Config> configs;
  std::vector<double> prob;
  double partition = 0.0;
};

/// law[v] is z_v for v on W_depth; other entries are ignored. For depth 0
/// the root itself is the boundary.
FiniteMeasure finite_volume_measure(const LabeledTree& tree, double lambda, const std::vector<double>& law,
                                    int depth = -1);

/// z_x = prod_{y child of x} 1/(1 + lambda z_y) on W_{depth-1}; a copy of
/// law with those entries replaced.
std::vector<double> induced_parent_law(const LabeledTree& tree, double lambda, const std::vector<double>& law,
                                       int depth);

/// Max |marginal of mu^(n) on V_{n-1} - mu^(n-1)| with both levels' laws
/// taken from the generator (n = tree.depth >= 1).
double consistency_check(const LabeledTree& tree, double lambda, const std::function<double(int)>& law);

/// As above, but the level n-1 law is induced from level n by the recursion.
double consistency_check_induced(const LabeledTree& tree, double lambda, const std::vector<double>& law);

/// table[c][p]: z for a vertex in H_c whose parent is in H_p; NaN for pairs
/// that cannot be adjacent. mapping[c] picks which of (z1, z2, z7, z8)
/// serves the non-A pair (c, c^2); A pairs follow from the recursion.
using ClassPairTable = std::array<std::array<double, 4>, 4>;
inline constexpr std::array<int, 4> kFrozenMapping = {0, 2, 1, 3};

ClassPairTable class_pair_table(const BoundaryLaw4& law, const ModelParams& params,
                                const std::array<int, 4>& mapping = kFrozenMapping);

/// consistency_check on a depth-n tree with the weakly periodic law.
double weakly_periodic_violation(const BoundaryLaw4& law, const ModelParams& params, int depth,
                                 const std::array<int, 4>& mapping = kFrozenMapping, int root_class = 0);

struct MappingSearch {
  std::vector<std::array<int, 4>> passing;
  int tried = 0;
  double best = 0.0;
  double worst = 0.0;
};

/// Tries all 24 assignments of (z1, z2, z7, z8) to the non-A class pairs
/// and keeps those consistent for every root class.
MappingSearch search_class_pair_mapping(const BoundaryLaw4& law, const ModelParams& params, int depth = 2,
                                        double tol = 1e-10);

}  // namespace hcgibbs
