#include "patternex/bit_matrix.hpp"

#include <bit>

namespace patternex {

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + kWordBits - 1) / kWordBits) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
  data_.assign(static_cast<std::size_t>(rows_) * words_, 0);
}

void BitMatrix::check_cell(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("cell (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
}

void BitMatrix::set(int r, int c, bool value) {
  check_cell(r, c);
  Word& w = data_[static_cast<std::size_t>(r) * words_ + c / kWordBits];
  const Word bit = Word{1} << (c % kWordBits);
  const bool old = (w & bit) != 0;
  if (old == value) return;
  if (value) {
    w |= bit;
    ++weight_;
  } else {
    w &= ~bit;
    --weight_;
  }
}

int BitMatrix::row_weight(int r) const {
  int total = 0;
  for (Word w : row_words(r)) total += std::popcount(w);
  return total;
}

int BitMatrix::count_in_row(int r, int first, int last) const {
  if (first >= last) return 0;
  auto words = row_words(r);
  int total = 0;
  const int wf = first / kWordBits;
  const int wl = (last - 1) / kWordBits;
  for (int wi = wf; wi <= wl; ++wi) {
    Word w = words[wi];
    if (wi == wf) w &= ~Word{0} << (first % kWordBits);
    if (wi == wl) {
      const int top = (last - 1) % kWordBits;
      if (top != kWordBits - 1) w &= (Word{1} << (top + 1)) - 1;
    }
    total += std::popcount(w);
  }
  return total;
}

std::int64_t BitMatrix::column_weight(int c) const {
  std::int64_t total = 0;
  for (int r = 0; r < rows_; ++r) total += get(r, c);
  return total;
}

std::string BitMatrix::to_text() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(rows_) * (cols_ + 1));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out.push_back(get(r, c) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

Pattern::Pattern(int rows, int cols) : BitMatrix(rows, cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("pattern must have at least one row and one column");
}

Pattern::Pattern(const BitMatrix& m) : BitMatrix(m) {
  if (m.rows() < 1 || m.cols() < 1) throw std::invalid_argument("pattern must have at least one row and one column");
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

BitMatrix parse_bits(std::string_view text) {
  std::vector<std::string> lines;
  std::vector<int> line_numbers;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::string cells;
    bool comment = false;
    for (char ch : raw) {
      if (ch == ' ' || ch == '\t' || ch == '\r') continue;
      if (cells.empty() && ch == '#') {
        comment = true;
        break;
      }
      if (ch != '0' && ch != '1')
        throw ParseError(line_no, std::string("illegal character '") + ch + "'");
      cells.push_back(ch);
    }
    if (comment || cells.empty()) continue;
    if (!lines.empty() && cells.size() != lines.front().size())
      throw ParseError(line_no, "ragged row: expected " + std::to_string(lines.front().size()) +
                                    " cells, found " + std::to_string(cells.size()));
    lines.push_back(std::move(cells));
    line_numbers.push_back(line_no);
  }
  if (lines.empty()) throw ParseError(line_no, "empty input");

  BitMatrix m(static_cast<int>(lines.size()), static_cast<int>(lines.front().size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (lines[r][c] == '1') m.set(r, c);
  return m;
}

template <class M>
M transpose_impl(const M& m) {
  M out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) out.set(c, r);
  return out;
}

void check_indices(std::span<const int> idx, int bound, const char* what) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= bound)
      throw std::out_of_range(std::string(what) + " index " + std::to_string(idx[i]) + " out of range");
    if (i > 0 && idx[i] <= idx[i - 1])
      throw std::invalid_argument(std::string(what) + " indices must be strictly increasing");
  }
}

}  // namespace

Pattern parse_pattern(std::string_view text) { return Pattern(parse_bits(text)); }

Matrix01 parse_matrix(std::string_view text) { return Matrix01(parse_bits(text)); }

Pattern transpose(const Pattern& p) { return transpose_impl(p); }

Matrix01 transpose(const Matrix01& m) { return transpose_impl(m); }

Matrix01 submatrix(const BitMatrix& m, std::span<const int> rows, std::span<const int> cols) {
  if (rows.empty() || cols.empty()) throw std::invalid_argument("submatrix index sets must be nonempty");
  check_indices(rows, m.rows(), "row");
  check_indices(cols, m.cols(), "column");
  Matrix01 out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t p = 0; p < rows.size(); ++p)
    for (std::size_t q = 0; q < cols.size(); ++q)
      if (m.get(rows[p], cols[q])) out.set(static_cast<int>(p), static_cast<int>(q));
  return out;
}

Pattern row_band(const Pattern& p, int first, int last) {
  if (first < 0 || last >= p.rows() || first > last) throw std::out_of_range("row band out of range");
  Pattern out(last - first + 1, p.cols());
  for (int r = first; r <= last; ++r)
    for (int c = 0; c < p.cols(); ++c)
      if (p.get(r, c)) out.set(r - first, c);
  return out;
}

Pattern permute_rows(const Pattern& p, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != p.rows()) throw std::invalid_argument("permutation size mismatch");
  Pattern out(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int c = 0; c < p.cols(); ++c)
      if (p.get(perm[i], c)) out.set(i, c);
  return out;
}

Matrix01 all_ones(int rows, int cols) {
  Matrix01 m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c);
  return m;
}

}  // namespace patternex
