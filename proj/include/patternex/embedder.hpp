#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "patternex/bit_matrix.hpp"
#include "patternex/classifier.hpp"
#include "patternex/sparsity.hpp"

namespace patternex {

/// An m x (k*width) host viewed as k vertical blocks of `width` columns.
struct BlockStructure {
  int k = 1;
  int width = 1;

  int first_column(int block) const { return block * width; }
  int block_of(int column) const { return column / width; }
};

/// (f, g): f strictly increasing into host rows, g(j) inside block j.
struct BlockEmbedding {
  std::vector<int> rows;
  std::vector<int> cols;

  friend bool operator==(const BlockEmbedding&, const BlockEmbedding&) = default;
};

/// Every (row, block) box holds at least u ones. Throws on a column count
/// that is not k*width.
bool is_ku_complete(const BitMatrix& host, const BlockStructure& blocks, int u);

bool verify_block_embedding(const BitMatrix& host, const Pattern& pattern, const BlockStructure& blocks,
                            const BlockEmbedding& e);

/// Leftmost block-respecting embedding. Throws when pattern.cols() != k.
std::optional<BlockEmbedding> find_block_embedding(const Pattern& pattern, const BitMatrix& host,
                                                   const BlockStructure& blocks);

/// Same, with g(column) pinned to the host column `target`.
std::optional<BlockEmbedding> find_block_embedding_pinned(const Pattern& pattern, const BitMatrix& host,
                                                          const BlockStructure& blocks, int column, int target);

/// Host columns c of block `column` such that some block-respecting embedding
/// of `part` has g(column) = c. Sorted ascending.
std::vector<int> compute_si_sets(const Pattern& part, int column, const BitMatrix& host,
                                 const BlockStructure& blocks);

enum class CombineFailure { ShapeMismatch, NotSeparated, RowOrder, ColumnMismatch };

class CombineError : public std::invalid_argument {
 public:
  CombineError(CombineFailure failure, const std::string& what) : std::invalid_argument(what), failure_(failure) {}
  CombineFailure failure() const { return failure_; }

 private:
  CombineFailure failure_;
};

/// Glues embeddings of the first `cut` rows and of the remaining rows into one
/// embedding of `pattern`. When `spanning_column` is given, the cut must not
/// separate the 1-entries of any other column.
BlockEmbedding combine_embeddings(const Pattern& pattern, int cut, std::optional<int> spanning_column,
                                  const BlockEmbedding& upper, const BlockEmbedding& lower);

using EmbedOutcome = std::variant<BlockEmbedding, DenseCertificate, Inconclusive>;

struct EmbedOptions {
  int jobs = 1;
};

/// Rows per horizontal block at a node of depth s:
/// ceil(27*40*n^(1-x^(s-1))*(h(n)/u)^2), or nullopt when it overflows.
std::optional<std::int64_t> horizontal_block_rows(const SparsityBound& bound, int width, int s, int u);

/// Names of the size hypotheses of recursive_embed that fail for an
/// m x (k*width) host, depth s and box minimum u. Empty when all hold.
std::vector<std::string> failed_lemma_hypotheses(const SparsityBound& bound, std::int64_t m, int width, int s, int u);

/// Inductive embed-or-certify procedure over the separation tree. The result
/// is re-verified against `host` before it is returned.
EmbedOutcome recursive_embed(const Pattern& pattern, const SeparationTree& tree, const BitMatrix& host,
                             const BlockStructure& blocks, int u, const SparsityBound& bound,
                             const EmbedOptions& options = {});

}  // namespace patternex
