#include "patternex/classifier.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace patternex {

namespace {

// Spanning columns of the band [first, last] cut after `first + cut - 1`.
std::vector<int> band_spanning(const Pattern& p, int first, int last, int cut) {
  std::vector<int> out;
  const int split = first + cut;
  for (int y = 0; y < p.cols(); ++y) {
    bool above = false;
    bool below = false;
    for (int x = first; x < split && !above; ++x) above = p.get(x, y);
    for (int x = split; x <= last && !below; ++x) below = p.get(x, y);
    if (above && below) out.push_back(y);
  }
  return out;
}

std::optional<Separation> first_separation(const Pattern& p) {
  if (p.rows() < 2) throw std::invalid_argument("separability is undefined for a single row");
  for (int a = 1; a < p.rows(); ++a) {
    auto span = band_spanning(p, 0, p.rows() - 1, a);
    if (span.size() <= 1) {
      Separation sep{a, std::nullopt};
      if (!span.empty()) sep.spanning_column = span.front();
      return sep;
    }
  }
  return std::nullopt;
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<int> parent;
};

}  // namespace

bool is_acyclic(const Pattern& p) {
  DisjointSets sets(p.rows() + p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p.get(i, j) && !sets.unite(i, p.rows() + j)) return false;
  return true;
}

std::vector<int> spanning_columns(const Pattern& p, int cut) {
  if (cut < 1 || cut >= p.rows())
    throw std::out_of_range("cut position " + std::to_string(cut) + " outside [1, " + std::to_string(p.rows() - 1) +
                            "]");
  return band_spanning(p, 0, p.rows() - 1, cut);
}

std::optional<Separation> is_vertically_separable(const Pattern& p) { return first_separation(p); }

std::optional<Separation> is_horizontally_separable(const Pattern& p) { return first_separation(transpose(p)); }

std::optional<ClassWitness> class_number(const Pattern& p) {
  const int l = p.rows();
  constexpr int kUnknown = -2;
  constexpr int kNone = -1;
  // best[i][j]: minimal class of band [i, j]; choice[i][j]: its smallest cut.
  std::vector<std::vector<int>> best(l, std::vector<int>(l, kUnknown));
  std::vector<std::vector<int>> choice(l, std::vector<int>(l, 0));

  std::function<int(int, int)> solve = [&](int i, int j) -> int {
    int& memo = best[i][j];
    if (memo != kUnknown) return memo;
    if (i == j) return memo = 0;
    int result = kNone;
    for (int a = 1; a <= j - i; ++a) {
      if (band_spanning(p, i, j, a).size() > 1) continue;
      const int up = solve(i, i + a - 1);
      const int down = solve(i + a, j);
      if (up == kNone || down == kNone) continue;
      const int s = 1 + std::max(up, down);
      if (result == kNone || s < result) {
        result = s;
        choice[i][j] = a;
      }
    }
    return memo = result;
  };

  if (solve(0, l - 1) == kNone) return std::nullopt;

  ClassWitness witness;
  witness.s = best[0][l - 1];
  std::function<int(int, int)> build = [&](int i, int j) -> int {
    SeparationTree::Node node;
    node.first_row = i;
    node.last_row = j;
    node.depth = best[i][j];
    const int index = static_cast<int>(witness.tree.nodes.size());
    witness.tree.nodes.push_back(node);
    if (i == j) return index;
    const int a = choice[i][j];
    auto span = band_spanning(p, i, j, a);
    const int up = build(i, i + a - 1);
    const int down = build(i + a, j);
    auto& n = witness.tree.nodes[index];
    n.cut = a;
    if (!span.empty()) n.spanning_column = span.front();
    n.upper = up;
    n.lower = down;
    return index;
  };
  witness.tree.root = build(0, l - 1);
  return witness;
}

bool is_vertically_degenerate(const Pattern& p) { return class_number(p).has_value(); }

bool validate_tree(const Pattern& p, const SeparationTree& tree) {
  if (tree.root < 0 || tree.root >= static_cast<int>(tree.nodes.size())) return false;
  std::function<bool(int, int, int)> check = [&](int index, int first, int last) -> bool {
    if (index < 0 || index >= static_cast<int>(tree.nodes.size())) return false;
    const auto& n = tree.nodes[index];
    if (n.first_row != first || n.last_row != last) return false;
    if (n.is_leaf()) return first == last && n.depth == 0;
    if (n.cut < 1 || n.cut > last - first) return false;
    auto span = band_spanning(p, first, last, n.cut);
    if (span.size() > 1) return false;
    if (span.empty() ? n.spanning_column.has_value() : n.spanning_column != span.front()) return false;
    if (!check(n.upper, first, first + n.cut - 1) || !check(n.lower, first + n.cut, last)) return false;
    return n.depth == 1 + std::max(tree.nodes[n.upper].depth, tree.nodes[n.lower].depth);
  };
  return check(tree.root, 0, p.rows() - 1);
}

std::optional<int> relaxed_class_number(const Pattern& p) {
  std::function<std::optional<int>(int, int)> rounds = [&](int first, int last) -> std::optional<int> {
    if (first == last) return 0;
    std::vector<int> cuts;
    for (int a = 1; a <= last - first; ++a)
      if (band_spanning(p, first, last, a).size() <= 1) cuts.push_back(first + a);
    if (cuts.empty()) return std::nullopt;
    cuts.push_back(last + 1);
    int worst = 0;
    int start = first;
    for (int split : cuts) {
      auto sub = rounds(start, split - 1);
      if (!sub) return std::nullopt;
      worst = std::max(worst, *sub);
      start = split;
    }
    return 1 + worst;
  };
  return rounds(0, p.rows() - 1);
}

std::optional<std::vector<int>> find_degenerate_row_permutation(const Pattern& p) {
  std::vector<int> perm(p.rows());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (is_vertically_degenerate(permute_rows(p, perm))) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (is_acyclic(p))
    throw std::logic_error("acyclic pattern admits no vertically degenerate row order");
  return std::nullopt;
}

OrderedGraph pattern_to_ordered_graph(const Pattern& p) {
  OrderedGraph g;
  g.vertex_count = p.rows() + p.cols();
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p.get(i, j)) g.edges.emplace_back(i, p.rows() + j);
  return g;
}

int interval_chromatic_number(const OrderedGraph& g) {
  // Greedy sweep: the current interval starts at `start`; vertex v opens a new
  // interval when it has a neighbour in [start, v).
  std::vector<std::vector<int>> earlier(g.vertex_count);
  for (auto [u, v] : g.edges) {
    const int lo = std::min(u, v);
    const int hi = std::max(u, v);
    earlier[hi].push_back(lo);
  }
  int intervals = g.vertex_count > 0 ? 1 : 0;
  int start = 0;
  for (int v = 0; v < g.vertex_count; ++v) {
    const bool clash = std::any_of(earlier[v].begin(), earlier[v].end(), [&](int w) { return w >= start; });
    if (clash) {
      ++intervals;
      start = v;
    }
  }
  return std::max(intervals, 1);
}

}  // namespace patternex
