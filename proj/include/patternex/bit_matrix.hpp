#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace patternex {

/// Dense 0-1 matrix with bit-packed rows. Indices are 0-based; the text and
/// JSON boundaries convert to 1-based.
class BitMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return words_; }

  bool get(int r, int c) const {
    return (data_[static_cast<std::size_t>(r) * words_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(int r, int c, bool value = true);

  /// Cached number of 1-entries.
  std::int64_t weight() const { return weight_; }

  std::span<const Word> row_words(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * words_, static_cast<std::size_t>(words_)};
  }
  int row_weight(int r) const;
  /// Ones of row r within the half-open column range [first, last).
  int count_in_row(int r, int first, int last) const;
  std::int64_t column_weight(int c) const;

  /// Rows are separated by '\n', cells are '0'/'1', with a trailing newline.
  std::string to_text() const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 protected:
  void check_cell(int r, int c) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::int64_t weight_ = 0;
  std::vector<Word> data_;
};

/// The small forbidden configuration. Always at least 1x1.
class Pattern : public BitMatrix {
 public:
  Pattern(int rows, int cols);
  explicit Pattern(const BitMatrix& m);
};

/// A host matrix searched for patterns.
class Matrix01 : public BitMatrix {
 public:
  Matrix01() = default;
  Matrix01(int rows, int cols) : BitMatrix(rows, cols) {}
  explicit Matrix01(const BitMatrix& m) : BitMatrix(m) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// One line per row over {0,1}. Spaces, tabs and '\r' inside a line are
/// ignored, as are blank lines and lines starting with '#'.
Pattern parse_pattern(std::string_view text);
Matrix01 parse_matrix(std::string_view text);

Pattern transpose(const Pattern& p);
Matrix01 transpose(const Matrix01& m);

/// Submatrix induced by ordered index sets; order of rows and columns is
/// taken from the index lists, which must be strictly increasing.
Matrix01 submatrix(const BitMatrix& m, std::span<const int> rows, std::span<const int> cols);

/// Rows [first, last] (inclusive) of a pattern.
Pattern row_band(const Pattern& p, int first, int last);

/// Applies a row permutation: row i of the result is row perm[i] of p.
Pattern permute_rows(const Pattern& p, std::span<const int> perm);

Matrix01 all_ones(int rows, int cols);

}  // namespace patternex
