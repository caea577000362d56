#include "patternex/embedder.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "parallel.hpp"
#include "patternex/containment.hpp"

namespace patternex {

namespace {

void check_columns(const BitMatrix& host, const BlockStructure& blocks) {
  if (blocks.k < 1 || blocks.width < 1) throw std::invalid_argument("block structure needs k >= 1 and width >= 1");
  if (host.cols() != blocks.k * blocks.width)
    throw std::invalid_argument("host has " + std::to_string(host.cols()) + " columns, expected k*width = " +
                                std::to_string(blocks.k * blocks.width));
}

void check_pattern(const Pattern& pattern, const BlockStructure& blocks) {
  if (pattern.cols() != blocks.k)
    throw std::invalid_argument("pattern has " + std::to_string(pattern.cols()) + " columns but there are " +
                                std::to_string(blocks.k) + " blocks");
}

detail::SearchConstraints block_constraints(const BitMatrix& host, const BlockStructure& blocks) {
  detail::SearchConstraints sc;
  sc.column_masks.reserve(blocks.k);
  for (int j = 0; j < blocks.k; ++j)
    sc.column_masks.push_back(
        detail::column_range_mask(host.cols(), blocks.first_column(j), blocks.first_column(j) + blocks.width));
  return sc;
}

std::optional<BlockEmbedding> to_block(std::optional<Embedding> e) {
  if (!e) return std::nullopt;
  return BlockEmbedding{std::move(e->rows), std::move(e->cols)};
}

bool column_has_one(const Pattern& p, int column) {
  for (int i = 0; i < p.rows(); ++i)
    if (p.get(i, column)) return true;
  return false;
}

}  // namespace

bool is_ku_complete(const BitMatrix& host, const BlockStructure& blocks, int u) {
  check_columns(host, blocks);
  for (int r = 0; r < host.rows(); ++r)
    for (int j = 0; j < blocks.k; ++j)
      if (host.count_in_row(r, blocks.first_column(j), blocks.first_column(j) + blocks.width) < u) return false;
  return true;
}

bool verify_block_embedding(const BitMatrix& host, const Pattern& pattern, const BlockStructure& blocks,
                            const BlockEmbedding& e) {
  if (pattern.cols() != blocks.k || host.cols() != blocks.k * blocks.width) return false;
  if (static_cast<int>(e.cols.size()) != blocks.k) return false;
  for (int j = 0; j < blocks.k; ++j)
    if (e.cols[j] < blocks.first_column(j) || e.cols[j] >= blocks.first_column(j) + blocks.width) return false;
  return verify_embedding(host, pattern, Embedding{e.rows, e.cols});
}

std::optional<BlockEmbedding> find_block_embedding(const Pattern& pattern, const BitMatrix& host,
                                                   const BlockStructure& blocks) {
  check_columns(host, blocks);
  check_pattern(pattern, blocks);
  return to_block(detail::search(host, pattern, block_constraints(host, blocks)));
}

std::optional<BlockEmbedding> find_block_embedding_pinned(const Pattern& pattern, const BitMatrix& host,
                                                          const BlockStructure& blocks, int column, int target) {
  check_columns(host, blocks);
  check_pattern(pattern, blocks);
  if (column < 0 || column >= blocks.k) throw std::out_of_range("pinned column out of range");
  if (blocks.block_of(target) != column) return std::nullopt;
  auto sc = block_constraints(host, blocks);
  sc.column_masks[column] = detail::column_range_mask(host.cols(), target, target + 1);
  return to_block(detail::search(host, pattern, sc));
}

std::vector<int> compute_si_sets(const Pattern& part, int column, const BitMatrix& host,
                                 const BlockStructure& blocks) {
  check_columns(host, blocks);
  check_pattern(part, blocks);
  std::vector<int> out;
  if (host.rows() == 0 || !find_block_embedding(part, host, blocks)) return out;
  const int first = blocks.first_column(column);
  if (!column_has_one(part, column)) {
    out.resize(blocks.width);
    std::iota(out.begin(), out.end(), first);
    return out;
  }
  for (int c = first; c < first + blocks.width; ++c) {
    if (host.column_weight(c) == 0) continue;
    if (find_block_embedding_pinned(part, host, blocks, column, c)) out.push_back(c);
  }
  return out;
}

BlockEmbedding combine_embeddings(const Pattern& pattern, int cut, std::optional<int> spanning_column,
                                  const BlockEmbedding& upper, const BlockEmbedding& lower) {
  const int l = pattern.rows();
  const int k = pattern.cols();
  if (cut < 1 || cut >= l) throw CombineError(CombineFailure::ShapeMismatch, "cut must lie in [1, l-1]");
  if (static_cast<int>(upper.rows.size()) != cut || static_cast<int>(lower.rows.size()) != l - cut ||
      static_cast<int>(upper.cols.size()) != k || static_cast<int>(lower.cols.size()) != k)
    throw CombineError(CombineFailure::ShapeMismatch, "embedding sizes do not match the two parts");

  std::vector<bool> in_upper(k, false);
  std::vector<bool> in_lower(k, false);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < cut; ++i) in_upper[j] = in_upper[j] || pattern.get(i, j);
    for (int i = cut; i < l; ++i) in_lower[j] = in_lower[j] || pattern.get(i, j);
  }
  if (spanning_column) {
    for (int j = 0; j < k; ++j)
      if (in_upper[j] && in_lower[j] && j != *spanning_column)
        throw CombineError(CombineFailure::NotSeparated,
                           "column " + std::to_string(j + 1) + " has 1-entries on both sides of the cut");
  }
  if (upper.rows.back() >= lower.rows.front())
    throw CombineError(CombineFailure::RowOrder, "last upper row must precede first lower row (f'(a) < f''(1))");
  for (int j = 0; j < k; ++j)
    if (in_upper[j] && in_lower[j] && upper.cols[j] != lower.cols[j])
      throw CombineError(CombineFailure::ColumnMismatch,
                         "parts disagree on shared column " + std::to_string(j + 1) + " (g'(b) != g''(b))");

  BlockEmbedding out;
  out.rows = upper.rows;
  out.rows.insert(out.rows.end(), lower.rows.begin(), lower.rows.end());
  out.cols.resize(k);
  for (int j = 0; j < k; ++j) out.cols[j] = in_upper[j] ? upper.cols[j] : lower.cols[j];
  return out;
}

std::optional<std::int64_t> horizontal_block_rows(const SparsityBound& bound, int width, int s, int u) {
  if (u < 1 || s < 1 || width < 2) return std::nullopt;
  const double x = x_eval(bound, width);
  const double ratio = h_eval(bound, width) / u;
  const double value = 27.0 * 40.0 * std::pow(static_cast<double>(width), 1.0 - std::pow(x, s - 1)) * ratio * ratio;
  if (!std::isfinite(value) || value > 1e15) return std::nullopt;
  return static_cast<std::int64_t>(std::ceil(value * (1.0 - kThresholdEpsilon)));
}

std::vector<std::string> failed_lemma_hypotheses(const SparsityBound& bound, std::int64_t m, int width, int s,
                                                 int u) {
  std::vector<std::string> failed;
  if (width < 2) {
    failed.emplace_back("block width n >= 2");
    return failed;
  }
  const double x = x_eval(bound, width);
  const double h = h_eval(bound, width);
  const double n = width;
  if (!(x <= 0.1)) failed.emplace_back("x <= 1/10");
  if (!(std::pow(n, std::pow(x, s)) >= 40.0)) failed.emplace_back("n^(x^s) >= 40");
  if (u < 1 || !(u <= h)) failed.emplace_back("1 <= u <= h(n)");
  if (m > width) failed.emplace_back("m <= n");
  if (u >= 1) {
    const double need = 40.0 * std::pow(n, 1.0 - std::pow(x, s)) * (h / u) * (h / u);
    if (!(static_cast<double>(m) >= need)) failed.emplace_back("m >= 40 n^(1-x^s) (h(n)/u)^2");
  }
  return failed;
}

namespace {

// A matrix entrywise below the top-level host, with its rows' host indices.
struct Host {
  Matrix01 mat;
  std::vector<int> host_rows;
};

Host take_rows(const Host& h, int first, int count) {
  Host out{Matrix01(count, h.mat.cols()), {}};
  out.host_rows.assign(h.host_rows.begin() + first, h.host_rows.begin() + first + count);
  for (int r = 0; r < count; ++r)
    for (int c = 0; c < h.mat.cols(); ++c)
      if (h.mat.get(first + r, c)) out.mat.set(r, c);
  return out;
}

BlockEmbedding lift(BlockEmbedding e, const Host& h) {
  for (int& r : e.rows) r = h.host_rows[r];
  return e;
}

class Embedder {
 public:
  Embedder(const Pattern& pattern, const SeparationTree& tree, const BitMatrix& top, const BlockStructure& blocks,
           const SparsityBound& bound, const EmbedOptions& options)
      : pattern_(pattern), tree_(tree), top_(top), blocks_(blocks), bound_(bound), options_(options) {}

  EmbedOutcome run(int index, const Host& host, int u) {
    const auto& node = tree_.node(index);
    const Pattern part = row_band(pattern_, node.first_row, node.last_row);
    if (node.is_leaf()) {
      if (auto e = find_block_embedding(part, host.mat, blocks_)) return lift(*e, host);
      return Inconclusive{"row pattern has no block-respecting embedding (boxes may be empty, u = " +
                              std::to_string(u) + ")",
                          {}};
    }

    const int s = node.depth;
    const std::int64_t m = host.mat.rows();
    auto hypotheses = failed_lemma_hypotheses(bound_, m, blocks_.width, s, u);
    const auto rows_per_block = horizontal_block_rows(bound_, blocks_.width, s, u);
    if (!rows_per_block) return Inconclusive{"m* undefined or too large (needs u >= 1, n >= 2)", hypotheses};
    const std::int64_t m_star = *rows_per_block;
    const std::int64_t beta = m / m_star;
    if (beta < 1)
      return Inconclusive{"host has " + std::to_string(m) + " rows, fewer than m* = " + std::to_string(m_star),
                          hypotheses};

    const int b = node.spanning_column.value_or(0);
    const Pattern upper = row_band(pattern_, node.first_row, node.first_row + node.cut - 1);
    const Pattern lower = row_band(pattern_, node.first_row + node.cut, node.last_row);

    std::vector<Host> slabs;
    slabs.reserve(beta);
    for (std::int64_t i = 0; i < beta; ++i)
      slabs.push_back(take_rows(host, static_cast<int>(i * m_star), static_cast<int>(m_star)));

    std::vector<std::vector<int>> s_upper(beta);
    std::vector<std::vector<int>> s_lower(beta);
    detail::parallel_for(static_cast<int>(beta), options_.jobs, [&](int i) {
      s_upper[i] = compute_si_sets(upper, b, slabs[i].mat, blocks_);
      s_lower[i] = compute_si_sets(lower, b, slabs[i].mat, blocks_);
    });

    // An upper embedding in an earlier slab and a lower one in a later slab
    // sharing g(b) combine into an embedding of the whole part.
    for (std::int64_t i1 = 0; i1 < beta; ++i1)
      for (std::int64_t i2 = i1 + 1; i2 < beta; ++i2)
        for (int j : s_upper[i1]) {
          if (!std::binary_search(s_lower[i2].begin(), s_lower[i2].end(), j)) continue;
          auto e1 = find_block_embedding_pinned(upper, slabs[i1].mat, blocks_, b, j);
          auto e2 = find_block_embedding_pinned(lower, slabs[i2].mat, blocks_, b, j);
          if (!e1 || !e2) throw std::logic_error("pinned embedding vanished after S-set computation");
          return combine_embeddings(part, node.cut, node.spanning_column, lift(*e1, slabs[i1]), lift(*e2, slabs[i2]));
        }

    // The sets S_i are now pairwise disjoint inside block b.
    std::vector<std::vector<int>> shared(beta);
    for (std::int64_t i = 0; i < beta; ++i)
      std::set_intersection(s_upper[i].begin(), s_upper[i].end(), s_lower[i].begin(), s_lower[i].end(),
                            std::back_inserter(shared[i]));
    std::int64_t chosen = -1;
    for (std::int64_t i = 0; i < beta && chosen < 0; ++i)
      if (static_cast<std::int64_t>(shared[i].size()) * beta <= blocks_.width) chosen = i;
    if (chosen < 0) return Inconclusive{"pigeonhole failed: no slab with |S_i| <= n/beta", hypotheses};

    const Host& slab = slabs[chosen];
    const int band_first = blocks_.first_column(b);
    const int band_last = band_first + blocks_.width;
    auto prune = [&](const std::vector<int>& zeroed) {
      Host out;
      std::vector<int> keep;
      Matrix01 cleared = slab.mat;
      for (int c : zeroed)
        for (int r = 0; r < cleared.rows(); ++r) cleared.set(r, c, false);
      for (int r = 0; r < cleared.rows(); ++r)
        if (3 * cleared.count_in_row(r, band_first, band_last) >= u) keep.push_back(r);
      out.mat = Matrix01(static_cast<int>(keep.size()), cleared.cols());
      for (std::size_t p = 0; p < keep.size(); ++p) {
        out.host_rows.push_back(slab.host_rows[keep[p]]);
        for (int c = 0; c < cleared.cols(); ++c)
          if (cleared.get(keep[p], c)) out.mat.set(static_cast<int>(p), c, true);
      }
      return std::pair{out, keep};
    };
    auto [pruned_upper, kept_upper] = prune(s_upper[chosen]);
    auto [pruned_lower, kept_lower] = prune(s_lower[chosen]);

#ifndef NDEBUG
    {
      std::vector<bool> survives(slab.mat.rows(), false);
      for (int r : kept_upper) survives[r] = true;
      for (int r : kept_lower) survives[r] = true;
      for (int r = 0; r < slab.mat.rows(); ++r) {
        if (survives[r]) continue;
        int inside = 0;
        for (int c : shared[chosen]) inside += slab.mat.get(r, c);
        assert(3 * inside > u && "row removed twice must keep more than u/3 ones inside B");
      }
    }
#endif

    if (auto cert = dense_frame(slab, shared[chosen], m_star)) return *cert;

    // When the size hypotheses hold each pruned slab has fewer than m*/3 rows.
    // A larger slab means the part failed to embed there, so the recursion
    // must end in a dense submatrix.
    const std::pair<const Host*, int> pruned[] = {{&pruned_upper, node.upper}, {&pruned_lower, node.lower}};
    for (auto [h, child] : pruned) {
      if (3 * static_cast<std::int64_t>(h->mat.rows()) < m_star) continue;
      auto inner = run(child, *h, (u + 2) / 3);
      if (std::holds_alternative<DenseCertificate>(inner)) return inner;
    }
    return Inconclusive{"no dense square frame around B (slab " + std::to_string(chosen + 1) + ", |S_i| = " +
                            std::to_string(shared[chosen].size()) + ", m* = " + std::to_string(m_star) + ")",
                        hypotheses};
  }

 private:
  // m* x m* submatrix of the top host containing (slab rows x shared) when
  // |shared| < m*, or the heaviest m* columns of shared otherwise.
  std::optional<DenseCertificate> dense_frame(const Host& slab, const std::vector<int>& shared,
                                              std::int64_t m_star) const {
    if (shared.empty() || m_star > top_.cols()) return std::nullopt;
    const int size = static_cast<int>(m_star);
    std::vector<int> cols;
    if (static_cast<int>(shared.size()) >= size) {
      std::vector<std::pair<std::int64_t, int>> ranked;
      for (int c : shared) {
        std::int64_t w = 0;
        for (int r : slab.host_rows) w += top_.get(r, c);
        ranked.emplace_back(-w, c);
      }
      std::sort(ranked.begin(), ranked.end());
      for (int i = 0; i < size; ++i) cols.push_back(ranked[i].second);
    } else {
      std::vector<bool> taken(top_.cols(), false);
      for (int c : shared) taken[c] = true;
      cols = shared;
      for (int c = shared.front(); c < top_.cols() && static_cast<int>(cols.size()) < size; ++c)
        if (!taken[c]) cols.push_back(c);
      for (int c = shared.front() - 1; c >= 0 && static_cast<int>(cols.size()) < size; --c)
        if (!taken[c]) cols.push_back(c);
    }
    std::sort(cols.begin(), cols.end());
    DenseCertificate cert{slab.host_rows, cols, induced_weight(top_, slab.host_rows, cols), bound_};
    if (static_cast<double>(cert.weight) > cert.threshold() * (1.0 + kThresholdEpsilon) &&
        verify_certificate(top_, cert))
      return cert;
    return std::nullopt;
  }

  const Pattern& pattern_;
  const SeparationTree& tree_;
  const BitMatrix& top_;
  BlockStructure blocks_;
  SparsityBound bound_;
  EmbedOptions options_;
};

}  // namespace

EmbedOutcome recursive_embed(const Pattern& pattern, const SeparationTree& tree, const BitMatrix& host,
                             const BlockStructure& blocks, int u, const SparsityBound& bound,
                             const EmbedOptions& options) {
  check_columns(host, blocks);
  check_pattern(pattern, blocks);
  validate(bound);
  if (!validate_tree(pattern, tree)) throw std::invalid_argument("separation tree does not match the pattern");
  if (u < 0) throw std::invalid_argument("u must be nonnegative");
  if (!is_ku_complete(host, blocks, u)) throw std::invalid_argument("host is not (k,u)-complete");

  Host top{Matrix01(host), {}};
  top.host_rows.resize(host.rows());
  std::iota(top.host_rows.begin(), top.host_rows.end(), 0);

  auto outcome = Embedder(pattern, tree, host, blocks, bound, options).run(tree.root, top, u);
  if (auto* e = std::get_if<BlockEmbedding>(&outcome)) {
    if (!verify_block_embedding(host, pattern, blocks, *e))
      throw std::logic_error("recursive_embed produced an invalid block embedding");
  } else if (auto* c = std::get_if<DenseCertificate>(&outcome)) {
    if (!verify_certificate(host, *c)) throw std::logic_error("recursive_embed produced an invalid certificate");
  }
  return outcome;
}

}  // namespace patternex
