#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "patternex/bit_matrix.hpp"

namespace patternex {

/// Witness of P ≺ A: strictly increasing row and column maps, 0-based.
struct Embedding {
  std::vector<int> rows;
  std::vector<int> cols;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Leftmost embedding of `pattern` in `host`, if any. Rows are chosen in
/// lexicographically smallest order; columns greedily leftmost for those rows.
std::optional<Embedding> contains(const BitMatrix& host, const Pattern& pattern);

/// Embedding that sends the last 1-entry of `pattern` (row-major order) onto
/// host cell (row, col). Every embedding that uses a freshly set cell which is
/// row-major last among the host's 1-entries has this shape.
std::optional<Embedding> contains_through(const BitMatrix& host, const Pattern& pattern, int row, int col);

bool verify_embedding(const BitMatrix& host, const Pattern& pattern, const Embedding& e);

namespace detail {

/// Restrictions for the shared row-by-row backtracking search.
struct SearchConstraints {
  /// Allowed host columns per pattern column; an empty list means all.
  std::vector<std::vector<BitMatrix::Word>> column_masks;
  /// Pattern row -> host row.
  std::optional<std::pair<int, int>> pinned_row;
};

std::optional<Embedding> search(const BitMatrix& host, const BitMatrix& pattern, const SearchConstraints& constraints,
                                std::uint64_t* nodes = nullptr);

std::vector<BitMatrix::Word> column_range_mask(int host_cols, int first, int last);

}  // namespace detail

}  // namespace patternex
