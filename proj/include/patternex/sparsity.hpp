#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patternex/bit_matrix.hpp"

namespace patternex {

/// Relative slack used whenever a real-valued threshold is compared against
/// an integer quantity. Certificates are always re-verified by integer
/// recount, so this only decides which branch is attempted.
inline constexpr double kThresholdEpsilon = 1e-9;

/// h(n) = d * 2^(b * log2(n)^c).
struct SparsityBound {
  double b = 1.0;
  double c = 0.5;
  double d = 1.0;
};

void validate(const SparsityBound& bound);

/// h(n) for n >= 2.
double h_eval(const SparsityBound& bound, std::int64_t n);

/// x(n) = b*c*log2(n)^(c-1) for n >= 2.
double x_eval(const SparsityBound& bound, std::int64_t n);

/// Largest weight an h-sparse matrix allows in an n-by-n submatrix:
/// n*h(n), and d for n = 1 where the formula degenerates to h(1) = d.
double weight_cap(const SparsityBound& bound, std::int64_t n);

/// Square submatrix violating h-sparsity. Indices refer to the host, 0-based.
struct DenseCertificate {
  std::vector<int> rows;
  std::vector<int> cols;
  std::int64_t weight = 0;
  SparsityBound bound;

  int size() const { return static_cast<int>(rows.size()); }
  double threshold() const { return weight_cap(bound, size()); }
};

/// Recounts the certificate against `host`: square, in range, strictly
/// increasing indices, weight matches, and weight > n'*h(n').
bool verify_certificate(const BitMatrix& host, const DenseCertificate& cert);

/// Integer weight of host restricted to (rows x cols).
std::int64_t induced_weight(const BitMatrix& host, const std::vector<int>& rows, const std::vector<int>& cols);

/// Outcome of a constructive step that could not reach a definitive answer.
struct Inconclusive {
  std::string reason;
  std::vector<std::string> failed_hypotheses;
};

}  // namespace patternex
