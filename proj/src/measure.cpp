#include "hcgibbs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>

#include "hcgibbs/error.hpp"

namespace hcgibbs {

std::vector<int> LabeledTree::level_vertices(int m) const {
  if (m < 0 || m > depth) throw DomainError("level outside the tree");
  const int begin = m == 0 ? 0 : level_end[m - 1];
  std::vector<int> out;
  for (int v = begin; v < level_end[m]; ++v) out.push_back(v);
  return out;
}

std::size_t max_tree_vertices() {
  if (const char* env = std::getenv("HC_MAX_TREE_VERTICES")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 25;
}

LabeledTree build_tree(int k, int n, std::size_t guard) {
  if (k < 1) throw DomainError("build_tree: k must be >= 1");
  if (n < 0) throw DomainError("build_tree: depth must be >= 0");
  if (guard == 0) guard = max_tree_vertices();
  std::size_t total = 1, width = 1;
  for (int m = 1; m <= n; ++m) {
    width = (m == 1) ? static_cast<std::size_t>(k + 1) : width * k;
    total += width;
    if (total > guard) {
      throw SizeGuardError("tree with k=" + std::to_string(k) + ", n=" + std::to_string(n) + " exceeds " +
                           std::to_string(guard) + " vertices (set HC_MAX_TREE_VERTICES to override)");
    }
  }
  LabeledTree t;
  t.k = k;
  t.depth = n;
  t.parent.push_back(-1);
  t.label.push_back(0);
  t.level.push_back(0);
  t.children.emplace_back();
  t.level_end.push_back(1);
  for (int m = 1; m <= n; ++m) {
    const int begin = m == 1 ? 0 : t.level_end[m - 2];
    const int end = t.level_end[m - 1];
    for (int v = begin; v < end; ++v) {
      for (int lab = 1; lab <= k + 1; ++lab) {
        if (lab == t.label[v]) continue;  // no backtracking along the parent edge
        const int c = static_cast<int>(t.parent.size());
        t.parent.push_back(v);
        t.label.push_back(lab);
        t.level.push_back(m);
        t.children.emplace_back();
        t.children[v].push_back(c);
      }
    }
    t.level_end.push_back(static_cast<int>(t.parent.size()));
  }
  return t;
}

std::vector<int> assign_classes(const LabeledTree& tree, const std::vector<int>& A, int root_class) {
  if (A.empty()) throw DomainError("assign_classes: A must be nonempty");
  if (root_class < 0 || root_class > 3) throw DomainError("assign_classes: root class must be 0..3");
  std::vector<bool> in_a(tree.k + 2, false);
  for (int a : A) {
    if (a < 1 || a > tree.k + 1) throw DomainError("assign_classes: label outside 1..k+1");
    in_a[a] = true;
  }
  std::vector<int> cls(tree.size());
  cls[0] = root_class;
  for (std::size_t v = 1; v < tree.size(); ++v) {
    // length parity always flips; A parity flips on A-labelled edges
    cls[v] = cls[tree.parent[v]] ^ 2 ^ (in_a[tree.label[v]] ? 1 : 0);
  }
  return cls;
}

namespace {

int vertex_count(const LabeledTree& tree, int depth) {
  if (depth < 0) depth = tree.depth;
  if (depth > tree.depth) throw DomainError("depth exceeds tree depth");
  return tree.level_end[depth];
}

// Listing stores every configuration, so memory bounds it before time does.
constexpr std::uint64_t kMaxConfigs = std::uint64_t{1} << 22;

void check_enumerable(const LabeledTree& tree, int depth, int nv) {
  if (static_cast<std::size_t>(nv) > max_tree_vertices() || nv > 63) {
    throw SizeGuardError("exhaustive enumeration over " + std::to_string(nv) + " vertices refused");
  }
  const auto count = independence_count(tree, depth);
  if (count > kMaxConfigs) {
    throw SizeGuardError("exhaustive enumeration of " + std::to_string(count) + " configurations refused");
  }
}

}  // namespace

std::vector<Config> enumerate_admissible(const LabeledTree& tree, int depth) {
  const int nv = vertex_count(tree, depth);
  check_enumerable(tree, depth, nv);
  std::vector<Config> out;
  // vertices are assigned in BFS order, so the parent is always decided first
  auto rec = [&](auto&& self, int v, Config cfg) -> void {
    if (v == nv) {
      out.push_back(cfg);
      return;
    }
    self(self, v + 1, cfg);
    const int p = tree.parent[v];
    if (p < 0 || !((cfg >> p) & 1u)) self(self, v + 1, cfg | (Config{1} << v));
  };
  rec(rec, 0, 0);
  return out;
}

std::uint64_t independence_count(const LabeledTree& tree, int depth) {
  const int nv = vertex_count(tree, depth);
  std::vector<std::uint64_t> empty(nv, 1), occupied(nv, 1);
  for (int v = nv - 1; v >= 0; --v) {
    for (int c : tree.children[v]) {
      if (c >= nv) continue;
      empty[v] *= empty[c] + occupied[c];
      occupied[v] *= empty[c];
    }
  }
  return empty[0] + occupied[0];
}

FiniteMeasure finite_volume_measure(const LabeledTree& tree, double lambda, const std::vector<double>& law,
                                    int depth) {
  if (depth < 0) depth = tree.depth;
  if (!(lambda > 0.0)) throw DomainError("finite_volume_measure: lambda must be positive");
  if (law.size() < static_cast<std::size_t>(vertex_count(tree, depth))) {
    throw DomainError("finite_volume_measure: law too short");
  }
  const int begin = depth == 0 ? 0 : tree.level_end[depth - 1];
  const int end = tree.level_end[depth];
  for (int v = begin; v < end; ++v) {
    if (!(law[v] > 0.0)) throw DomainError("finite_volume_measure: boundary law must be positive");
  }
  FiniteMeasure m;
  m.depth = depth;
  m.configs = enumerate_admissible(tree, depth);
  m.prob.resize(m.configs.size());
  for (std::size_t j = 0; j < m.configs.size(); ++j) {
    const Config c = m.configs[j];
    double w = std::pow(lambda, static_cast<double>(__builtin_popcountll(c)));
    for (int v = begin; v < end; ++v) {
      if ((c >> v) & 1u) w *= law[v];
    }
    m.prob[j] = w;
    m.partition += w;
  }
  for (double& p : m.prob) p /= m.partition;
  return m;
}

std::vector<double> induced_parent_law(const LabeledTree& tree, double lambda, const std::vector<double>& law,
                                       int depth) {
  if (depth < 1 || depth > tree.depth) throw DomainError("induced_parent_law: need 1 <= depth <= tree depth");
  std::vector<double> out = law;
  const int begin = depth == 1 ? 0 : tree.level_end[depth - 2];
  for (int v = begin; v < tree.level_end[depth - 1]; ++v) {
    double z = 1.0;
    for (int c : tree.children[v]) z /= 1.0 + lambda * law[c];
    out[v] = z;
  }
  return out;
}

namespace {

double compare_levels(const LabeledTree& tree, double lambda, const std::vector<double>& law_n,
                      const std::vector<double>& law_prev) {
  const int n = tree.depth;
  if (n < 1) throw DomainError("consistency_check: tree depth must be >= 1");
  const auto fine = finite_volume_measure(tree, lambda, law_n, n);
  const auto coarse = finite_volume_measure(tree, lambda, law_prev, n - 1);
  const Config mask = (Config{1} << tree.level_end[n - 1]) - 1;
  std::unordered_map<Config, double> marginal;
  for (std::size_t j = 0; j < fine.configs.size(); ++j) marginal[fine.configs[j] & mask] += fine.prob[j];
  double worst = 0.0;
  for (std::size_t j = 0; j < coarse.configs.size(); ++j) {
    const auto it = marginal.find(coarse.configs[j]);
    const double m = it == marginal.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(m - coarse.prob[j]));
  }
  return worst;
}

}  // namespace

double consistency_check(const LabeledTree& tree, double lambda, const std::function<double(int)>& law) {
  std::vector<double> z(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) z[v] = law(static_cast<int>(v));
  return compare_levels(tree, lambda, z, z);
}

double consistency_check_induced(const LabeledTree& tree, double lambda, const std::vector<double>& law) {
  return compare_levels(tree, lambda, law, induced_parent_law(tree, lambda, law, tree.depth));
}

ClassPairTable class_pair_table(const BoundaryLaw4& law, const ModelParams& params, const std::array<int, 4>& mapping) {
  params.validate();
  const auto z = law.as_array();
  const double nan = std::nan("");
  ClassPairTable t;
  for (auto& row : t) row.fill(nan);
  std::array<double, 4> non_a{};
  for (int c = 0; c < 4; ++c) non_a[c] = z[mapping[c]];
  const double inv_i = 1.0 / params.i;
  for (int c = 0; c < 4; ++c) {
    t[c][c ^ 2] = non_a[c];
    // parent across an A edge: z_{c,c^3} = N_c^{1-1/i} (1 + lambda N_{c^2})^{-k/i}
    t[c][c ^ 3] = std::pow(non_a[c], 1.0 - inv_i) * std::pow(1.0 + params.lambda * non_a[c ^ 2], -params.k * inv_i);
  }
  return t;
}

double weakly_periodic_violation(const BoundaryLaw4& law, const ModelParams& params, int depth,
                                 const std::array<int, 4>& mapping, int root_class) {
  const auto tree = build_tree(params.k, depth);
  std::vector<int> A;
  for (int a = 1; a <= params.i; ++a) A.push_back(a);
  const auto cls = assign_classes(tree, A, root_class);
  const auto table = class_pair_table(law, params, mapping);
  return consistency_check(tree, params.lambda, [&](int v) {
    if (tree.parent[v] < 0) return 1.0;  // never on a boundary for depth >= 1
    return table[cls[v]][cls[tree.parent[v]]];
  });
}

MappingSearch search_class_pair_mapping(const BoundaryLaw4& law, const ModelParams& params, int depth, double tol) {
  MappingSearch s;
  s.best = INFINITY;
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    ++s.tried;
    double worst = 0.0;
    for (int root = 0; root < 4; ++root) {
      worst = std::max(worst, weakly_periodic_violation(law, params, depth, perm, root));
    }
    s.best = std::min(s.best, worst);
    s.worst = std::max(s.worst, worst);
    if (worst < tol) s.passing.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

}  // namespace hcgibbs
