#include "patternex/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "patternex/classifier.hpp"

namespace patternex {

namespace {

void require_weight(const Pattern& pattern) {
  if (pattern.weight() == 0) throw std::invalid_argument("ex(n, P) is not defined for a pattern of weight 0");
}

// Best of a few random saturations and of saturating a shorter optimum
// with a new row inserted at each position.
GreedyResult warm_start(int rows, int cols, const Pattern& pattern, std::uint64_t seed, const Matrix01* shorter) {
  GreedyResult best = ex_lower_greedy_rect(rows, cols, pattern, seed);
  for (std::uint64_t t = 1; t < 8; ++t) {
    auto g = ex_lower_greedy_rect(rows, cols, pattern, seed + t);
    if (g.weight > best.weight) best = std::move(g);
  }
  if (!shorter) return best;
  for (int gap = 0; gap < rows; ++gap) {
    Matrix01 m(rows, cols);
    for (int r = 0; r < rows - 1; ++r)
      for (int c = 0; c < cols; ++c)
        if (shorter->get(r, c)) m.set(r < gap ? r : r + 1, c, true);
    for (int c = 0; c < cols; ++c) {
      m.set(gap, c, true);
      if (contains(m, pattern)) m.set(gap, c, false);
    }
    if (m.weight() > best.weight) best = {m.weight(), m};
  }
  return best;
}

class BranchAndBound {
 public:
  BranchAndBound(const Pattern& pattern, int cols, const ExtremalOptions& options)
      : pattern_(pattern), cols_(cols), options_(options) {}

  ExtremalResult solve(int rows) {
    if (auto it = memo_.find(rows); it != memo_.end()) return it->second;
    ExtremalResult result;
    result.rows = rows;
    result.cols = cols_;
    if (rows < pattern_.rows() || cols_ < pattern_.cols()) {
      result.witness = all_ones(rows, cols_);
      result.max_weight = result.witness.weight();
      return memo_[rows] = result;
    }
    for (int j = 1; j < rows; ++j) solve(j);
    // Weight caps for any j consecutive rows.
    cap_.assign(rows + 1, 0);
    for (int j = 1; j < rows; ++j) cap_[j] = memo_.at(j).max_weight;
    cap_[rows] = static_cast<std::int64_t>(rows) * cols_;

    auto it = memo_.find(rows - 1);
    auto warm = warm_start(rows, cols_, pattern_, options_.seed, it == memo_.end() ? nullptr : &it->second.witness);
    rows_ = rows;
    best_ = warm.weight;
    best_matrix_ = warm.matrix;
    current_ = Matrix01(rows, cols_);
    dead_ = Matrix01(rows, cols_);
    prefix_.assign(rows + 1, 0);
    killed_.clear();
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols_; ++c) {
        current_.set(r, c, true);
        if (contains_through(current_, pattern_, r, c)) dead_.set(r, c, true);
        current_.set(r, c, false);
      }
    dfs(0, 0, 0);

    result.max_weight = best_;
    result.witness = best_matrix_;
    result.nodes_explored = nodes_;
    return memo_[rows] = result;
  }

 private:
  // Cells are decided in row-major order. A cell is dead when setting it
  // would complete a copy of P; since 1-entries are only ever added along a
  // branch, dead cells stay dead, so only live cells after a new 1 are rechecked.
  void dfs(int cell, std::int64_t weight, std::int64_t before_row) {
    if (++nodes_ > options_.budget) throw BudgetExceeded(options_.budget);
    if (cell == rows_ * cols_) {
      if (weight > best_) {
        best_ = weight;
        best_matrix_ = current_;
      }
      return;
    }
    const int r = cell / cols_;
    const int c = cell % cols_;
    if (c == 0) {
      before_row = weight;
      prefix_[r] = weight;
    }
    const std::int64_t in_row = weight - before_row;

    // Every suffix of rows avoids P on its own, as does row r, as does the
    // block below row r.
    auto bound = [&](int from) {
      std::int64_t row_live = 0;
      for (int q = from; q < cols_; ++q) row_live += !dead_.get(r, q);
      std::int64_t below = 0;
      for (int i = r + 1; i < rows_; ++i) below += std::min<std::int64_t>(live_in_row(i), cap_[1]);
      const std::int64_t this_row = std::min<std::int64_t>(in_row + row_live, cap_[1]);
      std::int64_t best = before_row + std::min(this_row + std::min(below, cap_[rows_ - r - 1]), cap_[rows_ - r]);
      for (int i = 0; i < r; ++i) best = std::min(best, prefix_[i] + cap_[rows_ - i]);
      return best;
    };

    if (!dead_.get(r, c) && bound(c) > best_) {
      current_.set(r, c, true);
      const std::size_t mark = killed_.size();
      for (int next = cell + 1; next < rows_ * cols_; ++next) {
        const int nr = next / cols_;
        const int nc = next % cols_;
        if (dead_.get(nr, nc)) continue;
        current_.set(nr, nc, true);
        if (contains_through(current_, pattern_, nr, nc)) {
          dead_.set(nr, nc, true);
          killed_.push_back(next);
        }
        current_.set(nr, nc, false);
      }
      dfs(cell + 1, weight + 1, before_row);
      for (std::size_t i = mark; i < killed_.size(); ++i) dead_.set(killed_[i] / cols_, killed_[i] % cols_, false);
      killed_.resize(mark);
      current_.set(r, c, false);
    }
    if (bound(c + 1) > best_) dfs(cell + 1, weight, before_row);
  }

  int live_in_row(int r) const { return cols_ - dead_.row_weight(r); }

  const Pattern& pattern_;
  int cols_;
  ExtremalOptions options_;
  std::map<int, ExtremalResult> memo_;
  std::vector<std::int64_t> cap_;
  int rows_ = 0;
  std::int64_t best_ = 0;
  Matrix01 best_matrix_;
  Matrix01 current_;
  Matrix01 dead_;
  std::vector<int> killed_;
  std::vector<std::int64_t> prefix_;  // weight of the rows above row i
  std::uint64_t nodes_ = 0;
};

std::vector<int> top_indices(const std::vector<std::int64_t>& score, int count) {
  std::vector<int> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return score[a] > score[b]; });
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::optional<DenseCertificate> try_certificate(const BitMatrix& host, const SparsityBound& bound,
                                                std::vector<int> rows, std::vector<int> cols) {
  DenseCertificate cert{std::move(rows), std::move(cols), 0, bound};
  cert.weight = induced_weight(host, cert.rows, cert.cols);
  if (verify_certificate(host, cert)) return cert;
  return std::nullopt;
}

SparsityCheck exact_sparsity(const BitMatrix& host, const SparsityBound& bound) {
  const bool flip = host.rows() > host.cols();
  const Matrix01 m = flip ? transpose(Matrix01(host)) : Matrix01(host);
  const int small = m.rows();
  if (small > 14) throw std::invalid_argument("exact h-sparsity check needs min(rows, cols) <= 14");
  for (int size = 1; size <= small; ++size) {
    const double cap = weight_cap(bound, size);
    for (std::uint32_t mask = 0; mask < (1U << small); ++mask) {
      if (std::popcount(mask) != size) continue;
      std::vector<int> rows;
      for (int r = 0; r < small; ++r)
        if (mask >> r & 1U) rows.push_back(r);
      std::vector<std::int64_t> colw(m.cols(), 0);
      for (int r : rows)
        for (int c = 0; c < m.cols(); ++c) colw[c] += m.get(r, c);
      auto cols = top_indices(colw, size);
      std::int64_t w = 0;
      for (int c : cols) w += colw[c];
      if (static_cast<double>(w) <= cap) continue;
      auto cert = flip ? try_certificate(host, bound, cols, rows) : try_certificate(host, bound, rows, cols);
      if (cert) return {cert, true};
    }
  }
  return {std::nullopt, true};
}

SparsityCheck heuristic_sparsity(const BitMatrix& host, const SparsityBound& bound) {
  const int limit = std::min(host.rows(), host.cols());
  for (int size = 1; size <= limit; ++size) {
    std::vector<std::int64_t> roww(host.rows());
    for (int r = 0; r < host.rows(); ++r) roww[r] = host.row_weight(r);
    auto rows = top_indices(roww, size);
    std::vector<int> cols;
    std::int64_t last = -1;
    for (int iter = 0; iter < 64; ++iter) {
      std::vector<std::int64_t> colw(host.cols(), 0);
      for (int r : rows)
        for (int c = 0; c < host.cols(); ++c) colw[c] += host.get(r, c);
      cols = top_indices(colw, size);
      std::vector<std::int64_t> rw(host.rows(), 0);
      for (int r = 0; r < host.rows(); ++r)
        for (int c : cols) rw[r] += host.get(r, c);
      rows = top_indices(rw, size);
      const std::int64_t w = induced_weight(host, rows, cols);
      if (w <= last) break;
      last = w;
    }
    if (auto cert = try_certificate(host, bound, rows, cols)) return {cert, false};
  }
  return {std::nullopt, false};
}

// Next k-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

// Rows are appended one at a time. After a prefix of rows the state records,
// for each t < l, the column k-tuples onto which pattern rows 0..t-1 embed.
// Prefixes with equal states have the same completions, so only the heaviest
// one per state survives a layer.
class RowProfileSearch {
 public:
  static constexpr int kMaxCols = 16;
  static constexpr int kMaxTuples = 1 << 14;

  RowProfileSearch(const Pattern& pattern, int cols, const ExtremalOptions& options)
      : pattern_(pattern), cols_(cols), options_(options) {
    if (cols > kMaxCols) throw std::invalid_argument("row-profile search needs at most 16 columns");
    if (cols < pattern.cols()) return;
    const int k = pattern.cols();
    if (binomial(cols, k) > kMaxTuples) throw std::invalid_argument("row-profile search: too many column tuples");
    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<std::vector<std::uint32_t>> need(pattern.rows());
    do {
      for (int t = 0; t < pattern.rows(); ++t) {
        std::uint32_t m = 0;
        for (int j = 0; j < k; ++j)
          if (pattern.get(t, j)) m |= 1U << comb[j];
        need[t].push_back(m);
      }
    } while (next_combination(comb, cols));
    tuples_ = static_cast<int>(need[0].size());
    words_ = (tuples_ + 63) / 64;
    const std::size_t choices = std::size_t{1} << cols;
    masks_.assign(pattern.rows() * choices * words_, 0);
    for (int t = 0; t < pattern.rows(); ++t)
      for (std::size_t x = 0; x < choices; ++x) {
        std::uint64_t* m = mask(t, static_cast<std::uint32_t>(x));
        for (int i = 0; i < tuples_; ++i)
          if ((x & need[t][i]) == need[t][i]) m[i / 64] |= std::uint64_t{1} << (i % 64);
      }
  }

  ExtremalResult solve(int rows) {
    if (auto it = memo_.find(rows); it != memo_.end()) return it->second;
    ExtremalResult result;
    result.rows = rows;
    result.cols = cols_;
    if (rows < pattern_.rows() || cols_ < pattern_.cols()) {
      result.witness = all_ones(rows, cols_);
      result.max_weight = result.witness.weight();
      return memo_[rows] = result;
    }
    std::vector<std::int64_t> cap(rows + 1, 0);
    for (int j = 1; j < rows; ++j) cap[j] = solve(j).max_weight;

    const GreedyResult warm =
        warm_start(rows, cols_, pattern_, options_.seed, rows > 1 ? &memo_.at(rows - 1).witness : nullptr);

    const int levels = pattern_.rows() - 1;
    const std::size_t width = static_cast<std::size_t>(levels) * words_;
    // Heaviest rows first, so the weight cut below can stop the scan.
    std::vector<std::uint32_t> order(std::size_t{1} << cols_);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
    std::vector<std::uint64_t> all(words_, ~std::uint64_t{0});
    if (tuples_ % 64) all.back() = (std::uint64_t{1} << (tuples_ % 64)) - 1;

    Layer layer(width);
    layer.insert(std::vector<std::uint64_t>(width, 0).data(), {0, -1, 0});
    std::vector<std::vector<Node>> history;
    std::vector<std::uint64_t> next(width);
    for (int r = 1; r <= rows; ++r) {
      Layer out(width);
      for (std::size_t i = 0; i < layer.nodes.size(); ++i) {
        const std::uint64_t* state = layer.state(i);
        const std::int64_t weight = layer.nodes[i].weight;
        for (std::uint32_t x : order) {
          const std::int64_t w = weight + std::popcount(x);
          if (w + cap[rows - r] <= warm.weight) break;
          if (++nodes_ > options_.budget) throw BudgetExceeded(options_.budget);
          const std::uint64_t* top = levels ? state + (levels - 1) * words_ : all.data();
          const std::uint64_t* last = mask(levels, x);
          bool hit = false;
          for (int q = 0; q < words_ && !hit; ++q) hit = (top[q] & last[q]) != 0;
          if (hit) continue;
          for (int t = 1; t <= levels; ++t) {
            const std::uint64_t* prev = t == 1 ? all.data() : state + (t - 2) * words_;
            const std::uint64_t* m = mask(t - 1, x);
            for (int q = 0; q < words_; ++q) {
              const std::size_t at = (t - 1) * words_ + q;
              next[at] = state[at] | (prev[q] & m[q]);
            }
          }
          out.insert(next.data(), {w, static_cast<int>(i), x});
        }
      }
      history.push_back(std::move(layer.nodes));
      layer = std::move(out);
    }

    result.nodes_explored = nodes_;
    int best = -1;
    for (std::size_t i = 0; i < layer.nodes.size(); ++i)
      if (best < 0 || layer.nodes[i].weight > layer.nodes[best].weight) best = static_cast<int>(i);
    if (best < 0) {
      result.max_weight = warm.weight;
      result.witness = warm.matrix;
      return memo_[rows] = result;
    }
    history.push_back(std::move(layer.nodes));
    result.max_weight = history.back()[best].weight;
    result.witness = Matrix01(rows, cols_);
    for (int r = rows; r >= 1; --r) {
      const Node& node = history[r][best];
      for (int c = 0; c < cols_; ++c)
        if (node.row >> c & 1U) result.witness.set(r - 1, c, true);
      best = node.parent;
    }
    return memo_[rows] = result;
  }

 private:
  struct Node {
    std::int64_t weight;
    int parent;
    std::uint32_t row;
  };

  // Open-addressing table of states; a heavier arrival replaces the node.
  struct Layer {
    explicit Layer(std::size_t width) : width(width), slots(1024, -1) {}

    const std::uint64_t* state(std::size_t i) const { return states.data() + i * width; }

    void insert(const std::uint64_t* key, Node node) {
      if (2 * (nodes.size() + 1) > slots.size()) grow();
      std::size_t at = hash(key) & (slots.size() - 1);
      while (slots[at] >= 0) {
        if (std::equal(key, key + width, state(slots[at]))) {
          if (node.weight > nodes[slots[at]].weight) nodes[slots[at]] = node;
          return;
        }
        at = (at + 1) & (slots.size() - 1);
      }
      slots[at] = static_cast<int>(nodes.size());
      nodes.push_back(node);
      states.insert(states.end(), key, key + width);
    }

    std::size_t hash(const std::uint64_t* key) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (std::size_t i = 0; i < width; ++i) h = (h ^ key[i]) * 0xff51afd7ed558ccdULL, h ^= h >> 32;
      return static_cast<std::size_t>(h);
    }

    void grow() {
      std::vector<int> bigger(slots.size() * 2, -1);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::size_t at = hash(state(i)) & (bigger.size() - 1);
        while (bigger[at] >= 0) at = (at + 1) & (bigger.size() - 1);
        bigger[at] = static_cast<int>(i);
      }
      slots = std::move(bigger);
    }

    std::size_t width;
    std::vector<int> slots;
    std::vector<Node> nodes;
    std::vector<std::uint64_t> states;
  };

  std::uint64_t* mask(int t, std::uint32_t x) {
    return masks_.data() + ((static_cast<std::size_t>(t) << cols_) + x) * words_;
  }

  const Pattern& pattern_;
  int cols_;
  ExtremalOptions options_;
  int tuples_ = 0;
  int words_ = 1;
  std::vector<std::uint64_t> masks_;  // rows x choices x words
  std::map<int, ExtremalResult> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExtremalResult ex_exact_rect(int rows, int cols, const Pattern& pattern, const ExtremalOptions& options) {
  require_weight(pattern);
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix dimensions must be positive");
  if (options.method == ExtremalMethod::RowProfile) return RowProfileSearch(pattern, cols, options).solve(rows);
  return BranchAndBound(pattern, cols, options).solve(rows);
}

ExtremalResult ex_exact(int n, const Pattern& pattern, const ExtremalOptions& options) {
  return ex_exact_rect(n, n, pattern, options);
}

GreedyResult ex_lower_greedy_rect(int rows, int cols, const Pattern& pattern, std::uint64_t seed) {
  require_weight(pattern);
  std::vector<int> cells(static_cast<std::size_t>(rows) * cols);
  std::iota(cells.begin(), cells.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(cells.begin(), cells.end(), rng);
  GreedyResult out{0, Matrix01(rows, cols)};
  for (int cell : cells) {
    const int r = cell / cols;
    const int c = cell % cols;
    out.matrix.set(r, c, true);
    if (contains(out.matrix, pattern)) out.matrix.set(r, c, false);
  }
  out.weight = out.matrix.weight();
  return out;
}

GreedyResult ex_lower_greedy(int n, const Pattern& pattern, std::uint64_t seed) {
  return ex_lower_greedy_rect(n, n, pattern, seed);
}

SparsityCheck is_h_sparse(const BitMatrix& host, const SparsityBound& bound, SparsityMode mode) {
  validate(bound);
  if (host.rows() == 0 || host.cols() == 0) return {std::nullopt, true};
  return mode == SparsityMode::Exact ? exact_sparsity(host, bound) : heuristic_sparsity(host, bound);
}

double TheoremParameters::log2_threshold() const { return std::pow(10.0 * b * c, s + 1); }

bool TheoremParameters::x_below_tenth(std::int64_t n) const { return n >= 2 && x(n) < 0.1; }

bool TheoremParameters::power_at_least_40(std::int64_t n) const {
  return n >= 2 && std::pow(static_cast<double>(n), std::pow(x(n), s)) >= 40.0;
}

TheoremParameters theorem_parameters(int s, int k) {
  if (s < 0 || k < 1) throw std::invalid_argument("theorem parameters need s >= 0 and k >= 1");
  TheoremParameters p;
  p.s = std::max(s, 1);
  p.k = k;
  p.c = static_cast<double>(p.s) / (p.s + 1);
  p.b = (k + 2) * std::log2(20.0 * k) / p.c;
  p.d = 1.0;
  return p;
}

TheoremParameters theorem_parameters(const Pattern& pattern) {
  auto cls = class_number(pattern);
  if (!cls) throw std::invalid_argument("pattern is not vertically degenerate");
  return theorem_parameters(cls->s, pattern.cols());
}

namespace {

// Geometry, box weights and labels: everything up to the choice of X.
std::variant<BoxDecomposition, Inconclusive> label_boxes(const BitMatrix& host, int k, const SparsityBound& bound) {
  validate(bound);
  if (host.rows() != host.cols()) throw std::invalid_argument("box decomposition needs a square matrix");
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int n = host.rows();
  if (n < 2) return Inconclusive{"regime: n < 2", {"n >= 2"}};

  BoxDecomposition d;
  d.n = n;
  d.k = k;
  d.x = x_eval(bound, n);
  d.n_star = static_cast<int>(std::floor(n / std::pow(6.0 * k, 1.0 / d.x)));
  if (d.n_star < 2)
    return Inconclusive{"regime: n* = " + std::to_string(d.n_star) + " < 2", {"n* >= 2"}};
  d.alpha = n / d.n_star;
  if (d.alpha < k)
    return Inconclusive{"regime: alpha = " + std::to_string(d.alpha) + " < k = " + std::to_string(k), {"alpha >= k"}};

  std::vector<std::int64_t> colw(n);
  for (int c = 0; c < n; ++c) colw[c] = host.column_weight(c);
  d.columns = top_indices(colw, d.alpha * d.n_star);

  d.light_threshold = h_eval(bound, d.n_star) / d.alpha;
  d.heavy_threshold = h_eval(bound, n) / (6.0 * k);
  d.box_weights.assign(n, std::vector<int>(d.alpha, 0));
  d.labels.assign(n, std::vector<BoxLabel>(d.alpha, BoxLabel::Regular));
  d.regular_per_row.assign(n, 0);
  for (int r = 0; r < n; ++r) {
    for (int blk = 0; blk < d.alpha; ++blk) {
      int w = 0;
      for (int q = 0; q < d.n_star; ++q) w += host.get(r, d.columns[blk * d.n_star + q]);
      d.box_weights[r][blk] = w;
      BoxLabel label = BoxLabel::Regular;
      if (w < d.light_threshold)
        label = BoxLabel::Light;
      else if (w > d.heavy_threshold)
        label = BoxLabel::Heavy;
      d.labels[r][blk] = label;
      d.regular_per_row[r] += label == BoxLabel::Regular;
    }
  }

#ifndef NDEBUG
  {
    double light = 0;
    for (int r = 0; r < n; ++r)
      for (int blk = 0; blk < d.alpha; ++blk)
        if (d.labels[r][blk] == BoxLabel::Light) light += d.box_weights[r][blk];
    assert(light <= n * h_eval(bound, d.n_star) * (1 + kThresholdEpsilon));
  }
#endif

  d.m_star = static_cast<int>(std::ceil(n / std::pow(static_cast<double>(d.alpha), k) * (1.0 - kThresholdEpsilon)));
  d.m_star = std::max(d.m_star, 1);
  d.u_star = static_cast<int>(std::ceil(d.light_threshold * (1.0 - kThresholdEpsilon)));
  return d;
}

// Picks X, T and S; fails when no k-set has m* good rows.
std::optional<Inconclusive> select_k_set(const BitMatrix& host, BoxDecomposition& d, const BoxOptions& options) {
  const int n = d.n;
  const int k = d.k;
  auto good_count = [&](const std::vector<int>& set) {
    int count = 0;
    for (int r = 0; r < n; ++r)
      count += std::all_of(set.begin(), set.end(), [&](int blk) { return d.labels[r][blk] == BoxLabel::Regular; });
    return count;
  };

  std::vector<int> best;
  int best_count = -1;
  if (d.alpha <= 20 && binomial(d.alpha, k) <= 2e5) {
    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      const int g = good_count(comb);
      if (g > best_count) {
        best_count = g;
        best = comb;
      }
    } while (next_combination(comb, d.alpha));
  } else {
    d.sampled = true;
    std::mt19937_64 rng(options.seed);
    std::vector<int> all(d.alpha);
    std::iota(all.begin(), all.end(), 0);
    for (int t = 0; t < options.samples; ++t) {
      std::vector<int> comb;
      std::sample(all.begin(), all.end(), std::back_inserter(comb), k, rng);
      const int g = good_count(comb);
      if (g > best_count || (g == best_count && comb < best)) {
        best_count = g;
        best = comb;
      }
    }
  }
  d.chosen_blocks = best;
  d.good_rows = best_count;
  if (best_count < d.m_star)
    return Inconclusive{"no k-set with m* = " + std::to_string(d.m_star) + " good rows (best has " +
                            std::to_string(best_count) + ")",
                        {}};

  for (int r = 0; r < n && static_cast<int>(d.rows.size()) < d.m_star; ++r)
    if (std::all_of(best.begin(), best.end(), [&](int blk) { return d.labels[r][blk] == BoxLabel::Regular; }))
      d.rows.push_back(r);
  for (int blk : best)
    for (int q = 0; q < d.n_star; ++q) d.cols.push_back(d.columns[blk * d.n_star + q]);
  d.complete = submatrix(host, d.rows, d.cols);
  return std::nullopt;
}

}  // namespace

std::variant<BoxDecomposition, Inconclusive> box_decompose(const BitMatrix& host, int k, const SparsityBound& bound,
                                                           const BoxOptions& options) {
  auto labeled = label_boxes(host, k, bound);
  if (auto* d = std::get_if<BoxDecomposition>(&labeled))
    if (auto fail = select_k_set(host, *d, options)) return *fail;
  return labeled;
}

VerifyOutcome verify_bound(const BitMatrix& host, const Pattern& pattern, const TheoremParameters& params,
                           const EmbedOptions& options, const BoxOptions& box_options) {
  if (host.rows() != host.cols()) throw std::invalid_argument("verify_bound needs a square host");
  if (pattern.cols() != params.k)
    throw std::invalid_argument("parameters were computed for k = " + std::to_string(params.k));
  const SparsityBound bound = params.bound();
  validate(bound);
  const int n = host.rows();
  if (n < 2 || static_cast<double>(host.weight()) <= weight_cap(bound, n) * (1.0 + kThresholdEpsilon))
    return Inconclusive{"not a counterexample: weight <= n*h(n)", {}};

  auto cls = class_number(pattern);
  if (!cls) throw std::invalid_argument("pattern is not vertically degenerate");

  auto decomposed = label_boxes(host, params.k, bound);
  if (auto* fail = std::get_if<Inconclusive>(&decomposed)) return *fail;
  auto& d = std::get<BoxDecomposition>(decomposed);

  // Heavy boxes of one vertical block fit in an n* x n* frame of a sparse
  // matrix; a frame that does not is a dense proper submatrix.
  for (int blk = 0; blk < d.alpha; ++blk) {
    std::vector<int> frame_rows;
    for (int r = 0; r < n && static_cast<int>(frame_rows.size()) < d.n_star; ++r)
      if (d.labels[r][blk] == BoxLabel::Heavy) frame_rows.push_back(r);
    for (int r = 0; r < n && static_cast<int>(frame_rows.size()) < d.n_star; ++r)
      if (std::find(frame_rows.begin(), frame_rows.end(), r) == frame_rows.end()) frame_rows.push_back(r);
    std::sort(frame_rows.begin(), frame_rows.end());
    std::vector<int> frame_cols(d.columns.begin() + blk * d.n_star, d.columns.begin() + (blk + 1) * d.n_star);
    if (auto cert = try_certificate(host, bound, frame_rows, frame_cols); cert && cert->size() < n) return *cert;
  }
  if (auto fail = select_k_set(host, d, box_options)) return *fail;

  std::vector<std::string> regime;
  if (!params.x_below_tenth(d.n_star)) regime.emplace_back("x* < 1/10");
  if (!params.power_at_least_40(d.n_star)) regime.emplace_back("n*^(x*^s) >= 40");

  const BlockStructure blocks{params.k, d.n_star};
  auto outcome = recursive_embed(pattern, cls->tree, d.complete, blocks, d.u_star, bound, options);
  if (auto* e = std::get_if<BlockEmbedding>(&outcome)) {
    Embedding mapped;
    for (int r : e->rows) mapped.rows.push_back(d.rows[r]);
    for (int c : e->cols) mapped.cols.push_back(d.cols[c]);
    if (!verify_embedding(host, pattern, mapped)) throw std::logic_error("mapped embedding failed verification");
    return mapped;
  }
  if (auto* c = std::get_if<DenseCertificate>(&outcome)) {
    std::vector<int> rows;
    std::vector<int> cols;
    for (int r : c->rows) rows.push_back(d.rows[r]);
    for (int q : c->cols) cols.push_back(d.cols[q]);
    std::vector<int> sorted_cols = cols;
    std::sort(sorted_cols.begin(), sorted_cols.end());
    if (auto cert = try_certificate(host, bound, rows, sorted_cols); cert && cert->size() < n) return *cert;
    return Inconclusive{"certificate on C did not map to a proper dense submatrix", regime};
  }
  auto inc = std::get<Inconclusive>(outcome);
  inc.failed_hypotheses.insert(inc.failed_hypotheses.begin(), regime.begin(), regime.end());
  return inc;
}

}  // namespace patternex
