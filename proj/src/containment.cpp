#include "patternex/containment.hpp"

#include <algorithm>
#include <bit>

namespace patternex {

using Word = BitMatrix::Word;

namespace detail {

std::vector<Word> column_range_mask(int host_cols, int first, int last) {
  std::vector<Word> mask((host_cols + BitMatrix::kWordBits - 1) / BitMatrix::kWordBits, 0);
  for (int c = std::max(first, 0); c < std::min(last, host_cols); ++c)
    mask[c / BitMatrix::kWordBits] |= Word{1} << (c % BitMatrix::kWordBits);
  return mask;
}

namespace {

// First set bit strictly after `after`, or -1.
int next_bit(const Word* mask, int words, int after) {
  int start = after + 1;
  int wi = start / BitMatrix::kWordBits;
  if (wi >= words) return -1;
  Word w = mask[wi] & (~Word{0} << (start % BitMatrix::kWordBits));
  while (true) {
    if (w != 0) return wi * BitMatrix::kWordBits + std::countr_zero(w);
    if (++wi >= words) return -1;
    w = mask[wi];
  }
}

class RowSearch {
 public:
  RowSearch(const BitMatrix& host, const BitMatrix& pattern, const SearchConstraints& constraints,
            std::uint64_t* nodes)
      : host_(host),
        pattern_(pattern),
        l_(pattern.rows()),
        k_(pattern.cols()),
        words_(host.words_per_row()),
        nodes_(nodes),
        masks_(static_cast<std::size_t>(l_ + 1) * k_ * std::max(words_, 1), 0),
        row_ones_(l_),
        highest_(l_) {
    const auto full = column_range_mask(host.cols(), 0, host.cols());
    for (int j = 0; j < k_; ++j) {
      const bool custom = j < static_cast<int>(constraints.column_masks.size()) &&
                          !constraints.column_masks[j].empty();
      const auto& src = custom ? constraints.column_masks[j] : full;
      std::copy_n(src.begin(), std::min<std::size_t>(src.size(), words_), mask(0, j));
    }
    for (int i = 0; i < l_; ++i)
      for (int j = 0; j < k_; ++j)
        if (pattern.get(i, j)) row_ones_[i].push_back(j);
    for (int i = 0; i < l_; ++i) highest_[i] = host.rows() - (l_ - i);
    if (constraints.pinned_row) {
      auto [pi, hr] = *constraints.pinned_row;
      pinned_ = pi;
      pinned_host_ = hr;
      for (int i = 0; i <= pi && i < l_; ++i) highest_[i] = std::min(highest_[i], hr - (pi - i));
    }
  }

  std::optional<Embedding> run() {
    if (l_ > host_.rows() || k_ > host_.cols()) return std::nullopt;
    if (!columns_feasible(0, nullptr)) return std::nullopt;
    rows_.assign(l_, -1);
    if (!place(0, -1)) return std::nullopt;
    Embedding e;
    e.rows = rows_;
    e.cols.resize(k_);
    columns_feasible(l_, e.cols.data());
    return e;
  }

 private:
  Word* mask(int level, int j) {
    return masks_.data() + (static_cast<std::size_t>(level) * k_ + j) * words_;
  }

  bool columns_feasible(int level, int* out) {
    int pos = -1;
    for (int j = 0; j < k_; ++j) {
      pos = next_bit(mask(level, j), words_, pos);
      if (pos < 0) return false;
      if (out) out[j] = pos;
    }
    return true;
  }

  bool place(int i, int prev) {
    if (i == l_) return true;
    int lo = prev + 1;
    int hi = highest_[i];
    if (i == pinned_) {
      if (pinned_host_ < lo || pinned_host_ > hi) return false;
      lo = hi = pinned_host_;
    }
    if (row_ones_[i].empty()) hi = std::min(hi, lo);

    const std::size_t level_size = static_cast<std::size_t>(k_) * words_;
    for (int r = lo; r <= hi; ++r) {
      if (nodes_) ++*nodes_;
      std::copy_n(mask(i, 0), level_size, mask(i + 1, 0));
      auto hrow = host_.row_words(r);
      bool empty = false;
      for (int j : row_ones_[i]) {
        Word* m = mask(i + 1, j);
        Word any = 0;
        for (int w = 0; w < words_; ++w) any |= (m[w] &= hrow[w]);
        if (any == 0) {
          empty = true;
          break;
        }
      }
      if (empty || !columns_feasible(i + 1, nullptr)) continue;
      rows_[i] = r;
      if (place(i + 1, r)) return true;
    }
    return false;
  }

  const BitMatrix& host_;
  const BitMatrix& pattern_;
  int l_;
  int k_;
  int words_;
  std::uint64_t* nodes_;
  std::vector<Word> masks_;
  std::vector<std::vector<int>> row_ones_;
  std::vector<int> highest_;
  std::vector<int> rows_;
  int pinned_ = -1;
  int pinned_host_ = -1;
};

}  // namespace

std::optional<Embedding> search(const BitMatrix& host, const BitMatrix& pattern, const SearchConstraints& constraints,
                                std::uint64_t* nodes) {
  if (host.cols() == 0 || host.rows() == 0) return std::nullopt;
  return RowSearch(host, pattern, constraints, nodes).run();
}

}  // namespace detail

std::optional<Embedding> contains(const BitMatrix& host, const Pattern& pattern) {
  return detail::search(host, pattern, {});
}

std::optional<Embedding> contains_through(const BitMatrix& host, const Pattern& pattern, int row, int col) {
  int pi = -1;
  int pj = -1;
  for (int i = pattern.rows() - 1; i >= 0 && pi < 0; --i)
    for (int j = pattern.cols() - 1; j >= 0; --j)
      if (pattern.get(i, j)) {
        pi = i;
        pj = j;
        break;
      }
  if (pi < 0) return std::nullopt;
  if (row < 0 || row >= host.rows() || col < 0 || col >= host.cols()) return std::nullopt;
  detail::SearchConstraints sc;
  sc.column_masks.resize(pattern.cols());
  sc.column_masks[pj] = detail::column_range_mask(host.cols(), col, col + 1);
  sc.pinned_row = {pi, row};
  return detail::search(host, pattern, sc);
}

bool verify_embedding(const BitMatrix& host, const Pattern& pattern, const Embedding& e) {
  if (static_cast<int>(e.rows.size()) != pattern.rows() || static_cast<int>(e.cols.size()) != pattern.cols())
    return false;
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.rows[i] < 0 || e.rows[i] >= host.rows()) return false;
    if (i > 0 && e.rows[i] <= e.rows[i - 1]) return false;
  }
  for (std::size_t j = 0; j < e.cols.size(); ++j) {
    if (e.cols[j] < 0 || e.cols[j] >= host.cols()) return false;
    if (j > 0 && e.cols[j] <= e.cols[j - 1]) return false;
  }
  for (int i = 0; i < pattern.rows(); ++i)
    for (int j = 0; j < pattern.cols(); ++j)
      if (pattern.get(i, j) && !host.get(e.rows[i], e.cols[j])) return false;
  return true;
}

}  // namespace patternex
