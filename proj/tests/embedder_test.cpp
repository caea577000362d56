#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "patternex/classifier.hpp"
#include "patternex/embedder.hpp"
#include "patternex/fixtures.hpp"

using namespace patternex;

TEST_CASE("(k,u)-completeness") {
  auto a = oracle::from_bits(2, 6, 0b101101'011011);
  CHECK(is_ku_complete(a, {3, 2}, 0));
  CHECK(is_ku_complete(all_ones(3, 8), {2, 4}, 4));
  CHECK_FALSE(is_ku_complete(all_ones(3, 8), {2, 4}, 5));
  Matrix01 hole = all_ones(3, 8);
  for (int c = 4; c < 8; ++c) hole.set(1, c, false);
  CHECK_FALSE(is_ku_complete(hole, {2, 4}, 1));
  CHECK_THROWS(is_ku_complete(hole, {3, 4}, 1));
}

TEST_CASE("block embedding examples") {
  auto row = *fixture("ROW3");
  std::mt19937_64 rng(3);
  auto host = oracle::random_ku_complete(5, 3, 4, 1, 0.2, rng);
  auto e = find_block_embedding(row, host, {3, 4});
  REQUIRE(e);
  CHECK(e->rows == std::vector<int>{0});
  CHECK(verify_block_embedding(host, row, {3, 4}, *e));

  CHECK_FALSE(find_block_embedding(*fixture("ONE"), Matrix01(3, 2), {1, 2}));

  auto q1 = *fixture("Q1");
  auto id = find_block_embedding(q1, q1, {4, 1});
  REQUIRE(id);
  CHECK(id->rows == std::vector<int>{0, 1, 2});
  CHECK(id->cols == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS(find_block_embedding(q1, q1, {3, 1}));
}

TEST_CASE("block embeddings must stay in their blocks") {
  auto q1 = *fixture("Q1");
  auto host = all_ones(3, 8);
  const BlockStructure blocks{4, 2};
  CHECK(verify_block_embedding(host, q1, blocks, {{0, 1, 2}, {0, 3, 4, 7}}));
  CHECK_FALSE(verify_block_embedding(host, q1, blocks, {{0, 1, 2}, {0, 1, 4, 7}}));
  CHECK_FALSE(verify_block_embedding(host, q1, blocks, {{0, 0, 2}, {0, 3, 4, 7}}));
}

TEST_CASE("S_i sets") {
  auto single = parse_pattern("1");
  Matrix01 a(2, 5);
  a.set(1, 1);
  a.set(1, 3);
  CHECK(compute_si_sets(single, 0, a, {1, 5}) == std::vector<int>{1, 3});
  CHECK(compute_si_sets(single, 0, Matrix01(2, 5), {1, 5}).empty());

  auto q1 = *fixture("Q1");
  auto top = row_band(q1, 0, 0);
  CHECK(compute_si_sets(top, 0, q1, {4, 1}) == std::vector<int>{0});
}

TEST_CASE("S_i sets agree with pinned search") {
  std::mt19937_64 rng(5);
  auto q2 = *fixture("Q2");
  for (int t = 0; t < 50; ++t) {
    auto host = oracle::random_ku_complete(6, 4, 3, 1, 0.3, rng);
    const BlockStructure blocks{4, 3};
    for (int b = 0; b < 4; ++b) {
      auto s = compute_si_sets(q2, b, host, blocks);
      std::vector<int> expected;
      for (int c = blocks.first_column(b); c < blocks.first_column(b) + blocks.width; ++c)
        if (auto e = find_block_embedding_pinned(q2, host, blocks, b, c)) {
          CHECK(e->cols[b] == c);
          CHECK(verify_block_embedding(host, q2, blocks, *e));
          expected.push_back(c);
        }
      CHECK(s == expected);
    }
  }
}

TEST_CASE("combining single entries") {
  auto p = parse_pattern("1\n1");
  auto out = combine_embeddings(p, 1, 0, {{0}, {4}}, {{1}, {4}});
  CHECK(out.rows == std::vector<int>{0, 1});
  CHECK(out.cols == std::vector<int>{4});
  try {
    combine_embeddings(p, 1, 0, {{1}, {4}}, {{1}, {4}});
    FAIL("expected a row order error");
  } catch (const CombineError& e) {
    CHECK(e.failure() == CombineFailure::RowOrder);
  }
}

TEST_CASE("combining Q1 around rows 1, 3, 5") {
  auto q1 = *fixture("Q1");
  Matrix01 host(5, 4);
  host.set(0, 0), host.set(0, 2);
  host.set(2, 0), host.set(2, 3);
  host.set(4, 1), host.set(4, 3);
  const BlockStructure blocks{4, 1};
  auto upper = find_block_embedding(row_band(q1, 0, 0), host, blocks);
  auto lower = find_block_embedding(row_band(q1, 1, 2), host, blocks);
  REQUIRE(upper);
  REQUIRE(lower);
  auto out = combine_embeddings(q1, 1, 0, *upper, *lower);
  CHECK(out.rows == std::vector<int>{0, 2, 4});
  CHECK(verify_block_embedding(host, q1, blocks, out));
}

TEST_CASE("horizontal block rows and size hypotheses") {
  const SparsityBound bound{1.0, 0.5, 1.0};
  auto rows = horizontal_block_rows(bound, 16, 1, 4);
  REQUIRE(rows);
  CHECK(*rows == 1080);
  CHECK_FALSE(horizontal_block_rows(bound, 16, 1, 0));
  auto failed = failed_lemma_hypotheses(bound, 4, 16, 1, 4);
  CHECK_FALSE(failed.empty());
}

TEST_CASE("recursive_embed on a single row") {
  std::mt19937_64 rng(9);
  auto row = *fixture("ROW4");
  auto host = oracle::random_ku_complete(3, 4, 5, 1, 0.1, rng);
  auto tree = class_number(row)->tree;
  auto outcome = recursive_embed(row, tree, host, {4, 5}, 1, {1.0, 0.5, 1.0});
  auto* e = std::get_if<BlockEmbedding>(&outcome);
  REQUIRE(e);
  CHECK(e->rows == std::vector<int>{0});
}

TEST_CASE("recursive_embed input checks") {
  auto q1 = *fixture("Q1");
  auto tree = class_number(q1)->tree;
  auto q2tree = class_number(*fixture("Q2"))->tree;
  const SparsityBound bound{1.0, 0.5, 1.0};
  CHECK_THROWS(recursive_embed(q1, q2tree, all_ones(4, 8), {4, 2}, 1, bound));
  CHECK_THROWS(recursive_embed(q1, tree, Matrix01(4, 8), {4, 2}, 1, bound));
  CHECK_THROWS(recursive_embed(q1, tree, all_ones(4, 9), {4, 2}, 1, bound));
}

TEST_CASE("recursive_embed in a tiny regime") {
  // width 2 is far below n^(x^s) >= 40; the answer must still be sound.
  std::mt19937_64 rng(13);
  auto q1 = *fixture("Q1");
  auto tree = class_number(q1)->tree;
  auto host = oracle::random_ku_complete(4, 4, 2, 1, 0.0, rng);
  auto outcome = recursive_embed(q1, tree, host, {4, 2}, 1, {1.0, 0.5, 1.0});
  if (auto* inc = std::get_if<Inconclusive>(&outcome)) {
    CHECK_FALSE(inc->failed_hypotheses.empty());
  } else if (auto* e = std::get_if<BlockEmbedding>(&outcome)) {
    CHECK(verify_block_embedding(host, q1, {4, 2}, *e));
  } else {
    CHECK(verify_certificate(host, std::get<DenseCertificate>(outcome)));
  }
}
