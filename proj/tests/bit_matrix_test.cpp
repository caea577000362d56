#include "doctest.h"

#include <vector>

#include "patternex/bit_matrix.hpp"
#include "patternex/fixtures.hpp"

using namespace patternex;

TEST_CASE("parse identity and Q1") {
  auto i2 = parse_pattern("10\n01");
  CHECK(i2.rows() == 2);
  CHECK(i2.cols() == 2);
  CHECK(i2.weight() == 2);
  CHECK(i2.get(0, 0));
  CHECK(i2.get(1, 1));

  auto q1 = parse_pattern("1010\n1001\n0101");
  CHECK(q1.weight() == 6);
  CHECK(q1 == *fixture("Q1"));
}

TEST_CASE("parse tolerates whitespace and comments") {
  auto m = parse_matrix("# host\r\n1 0 1\r\n\n\t0 1 0\n");
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.to_text() == "101\n010\n");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_pattern(""), ParseError);
  CHECK_THROWS_AS(parse_pattern("# only a comment\n"), ParseError);
  CHECK_THROWS_AS(parse_pattern("10\n1"), ParseError);
  CHECK_THROWS_AS(parse_pattern("12\n"), ParseError);
  try {
    parse_matrix("10\n01\n1x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("weight") {
  CHECK(Matrix01(3, 3).weight() == 0);
  CHECK(fixture("Q1")->weight() == 6);
  CHECK(all_ones(2, 2).weight() == 4);
  Matrix01 m(2, 70);
  m.set(1, 69);
  m.set(1, 69);
  m.set(0, 3);
  CHECK(m.weight() == 2);
  m.set(1, 69, false);
  CHECK(m.weight() == 1);
  CHECK(m.row_weight(0) == 1);
  CHECK(m.column_weight(3) == 1);
  CHECK(m.count_in_row(0, 0, 3) == 0);
  CHECK(m.count_in_row(0, 0, 4) == 1);
}

TEST_CASE("transpose") {
  auto row = *fixture("ROW4");
  auto col = transpose(row);
  CHECK(col.rows() == 4);
  CHECK(col.cols() == 1);
  CHECK(col.weight() == 4);

  auto q2 = *fixture("Q2");
  CHECK(transpose(transpose(q2)) == q2);

  auto q1 = *fixture("Q1");
  auto t = transpose(q1);
  CHECK(t.rows() == 4);
  CHECK(t.cols() == 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) CHECK(t.get(i, j) == q1.get(j, i));
}

TEST_CASE("submatrix") {
  auto q1 = *fixture("Q1");
  std::vector<int> all_rows{0, 1, 2};
  std::vector<int> all_cols{0, 1, 2, 3};
  CHECK(submatrix(q1, all_rows, all_cols) == Matrix01(q1));

  std::vector<int> r{1};
  std::vector<int> c{2};
  auto cell = submatrix(q1, r, c);
  CHECK(cell.rows() == 1);
  CHECK(cell.weight() == 0);

  std::vector<int> r2{0, 1};
  std::vector<int> c2{0, 3};
  CHECK(submatrix(q1, r2, c2) == parse_matrix("10\n11"));

  std::vector<int> unsorted{1, 0};
  std::vector<int> out_of_range{0, 4};
  std::vector<int> none;
  CHECK_THROWS(submatrix(q1, unsorted, c2));
  CHECK_THROWS(submatrix(q1, r2, out_of_range));
  CHECK_THROWS(submatrix(q1, none, c2));
}

TEST_CASE("row band and row permutation") {
  auto q1 = *fixture("Q1");
  auto band = row_band(q1, 1, 2);
  CHECK(band.rows() == 2);
  CHECK(band.to_text() == "1001\n0101\n");
  std::vector<int> perm{2, 0, 1};
  CHECK(permute_rows(q1, perm).to_text() == "0101\n1010\n1001\n");
}

TEST_CASE("fixtures") {
  auto q2 = *fixture("Q2");
  CHECK(q2.to_text() == "0101\n1010\n1001\n");
  auto r = *fixture("R");
  CHECK(r.to_text() == "1001\n0100\n1010\n0101\n");
  auto s = *fixture("S");
  CHECK(s.to_text() == "10101\n01010\n10000\n01001\n");
  CHECK(fixture("ONE")->weight() == 1);
  CHECK(fixture("ROW9")->cols() == 9);
  CHECK_FALSE(fixture("ROW0"));
  CHECK_FALSE(fixture("nope"));
  for (const auto& name : fixture_names()) CHECK(fixture(name));
}
