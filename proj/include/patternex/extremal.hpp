#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "patternex/bit_matrix.hpp"
#include "patternex/containment.hpp"
#include "patternex/embedder.hpp"
#include "patternex/sparsity.hpp"

namespace patternex {

struct ExtremalResult {
  int rows = 0;
  int cols = 0;
  std::int64_t max_weight = 0;
  Matrix01 witness;
  std::uint64_t nodes_explored = 0;
};

/// BranchAndBound decides cells in row-major order. RowProfile appends whole
/// rows and merges prefixes that admit the same completions; it needs
/// cols <= 16 and is much faster once n reaches 7.
enum class ExtremalMethod { BranchAndBound, RowProfile };

struct ExtremalOptions {
  std::uint64_t budget = 100'000'000;
  /// Seed of the greedy warm start.
  std::uint64_t seed = 0;
  ExtremalMethod method = ExtremalMethod::BranchAndBound;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t budget)
      : std::runtime_error("search budget of " + std::to_string(budget) + " nodes exceeded"), budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

/// ex(n, P) by branch and bound; throws BudgetExceeded rather than guessing.
ExtremalResult ex_exact(int n, const Pattern& pattern, const ExtremalOptions& options = {});

/// Maximum weight of a rows x cols matrix avoiding the pattern.
ExtremalResult ex_exact_rect(int rows, int cols, const Pattern& pattern, const ExtremalOptions& options = {});

struct GreedyResult {
  std::int64_t weight = 0;
  Matrix01 matrix;
};

/// Random-order saturation: a P-free matrix, so weight <= ex(n, P).
GreedyResult ex_lower_greedy(int n, const Pattern& pattern, std::uint64_t seed);
GreedyResult ex_lower_greedy_rect(int rows, int cols, const Pattern& pattern, std::uint64_t seed);

enum class SparsityMode { Exact, Heuristic };

struct SparsityCheck {
  std::optional<DenseCertificate> certificate;
  /// True when the absence of a certificate proves h-sparsity.
  bool exhaustive = false;
};

/// Searches for a square submatrix heavier than n'*h(n'). Exact mode needs
/// min(rows, cols) <= 14.
SparsityCheck is_h_sparse(const BitMatrix& host, const SparsityBound& bound, SparsityMode mode);

struct TheoremParameters {
  int s = 1;
  int k = 1;
  double c = 0.5;
  double b = 1.0;
  double d = 1.0;

  SparsityBound bound() const { return {b, c, d}; }
  double x(std::int64_t n) const { return x_eval(bound(), n); }
  /// x(n) < 1/10 holds exactly when log2(n) exceeds this value.
  double log2_threshold() const;
  bool x_below_tenth(std::int64_t n) const;
  bool power_at_least_40(std::int64_t n) const;
};

/// c = s/(s+1), b = (k+2)*log2(20k)/c, d = 1. Class-0 patterns use s = 1,
/// since a single row is class-s for every s.
TheoremParameters theorem_parameters(int s, int k);
/// Throws std::invalid_argument if the pattern is not vertically degenerate.
TheoremParameters theorem_parameters(const Pattern& pattern);

enum class BoxLabel : std::uint8_t { Light, Regular, Heavy };

struct BoxDecomposition {
  int n = 0;
  int k = 0;
  int n_star = 0;
  int alpha = 0;
  double x = 0.0;
  double light_threshold = 0.0;  // h(n*)/alpha
  double heavy_threshold = 0.0;  // h(n)/(6k)
  std::vector<int> columns;      // host columns of B, ascending
  std::vector<std::vector<int>> box_weights;  // [row][block]
  std::vector<std::vector<BoxLabel>> labels;  // [row][block]
  std::vector<int> regular_per_row;           // r_i
  std::vector<int> chosen_blocks;             // the k-set X
  int good_rows = 0;                          // rows good for X
  bool sampled = false;
  int m_star = 0;
  int u_star = 0;
  std::vector<int> rows;  // T in host rows
  std::vector<int> cols;  // S in host columns
  Matrix01 complete;      // C = B(T, S), (k, u*)-complete
};

struct BoxOptions {
  std::uint64_t seed = 0;
  /// k-sets examined when C(alpha, k) is not enumerated exhaustively.
  int samples = 20000;
};

std::variant<BoxDecomposition, Inconclusive> box_decompose(const BitMatrix& host, int k, const SparsityBound& bound,
                                                           const BoxOptions& options = {});

using VerifyOutcome = std::variant<Embedding, DenseCertificate, Inconclusive>;

/// One density-increment step on a candidate counterexample: either P in
/// host, a dense proper submatrix, or a reason why the step does not apply.
VerifyOutcome verify_bound(const BitMatrix& host, const Pattern& pattern, const TheoremParameters& params,
                           const EmbedOptions& options = {}, const BoxOptions& box_options = {});

}  // namespace patternex
