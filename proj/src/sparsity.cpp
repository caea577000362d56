#include "patternex/sparsity.hpp"

#include <cmath>
#include <stdexcept>

namespace patternex {

void validate(const SparsityBound& bound) {
  if (!(bound.b > 0.0)) throw std::invalid_argument("sparsity bound needs b > 0");
  if (!(bound.c > 0.0 && bound.c < 1.0)) throw std::invalid_argument("sparsity bound needs 0 < c < 1");
  if (!(bound.d > 0.0)) throw std::invalid_argument("sparsity bound needs d > 0");
}

double h_eval(const SparsityBound& bound, std::int64_t n) {
  if (n < 2) throw std::domain_error("h(n) is evaluated only for n >= 2");
  return bound.d * std::exp2(bound.b * std::pow(std::log2(static_cast<double>(n)), bound.c));
}

double x_eval(const SparsityBound& bound, std::int64_t n) {
  if (n < 2) throw std::domain_error("x(n) is evaluated only for n >= 2");
  return bound.b * bound.c * std::pow(std::log2(static_cast<double>(n)), bound.c - 1.0);
}

double weight_cap(const SparsityBound& bound, std::int64_t n) {
  if (n < 1) throw std::domain_error("weight cap needs n >= 1");
  if (n == 1) return bound.d;
  return static_cast<double>(n) * h_eval(bound, n);
}

std::int64_t induced_weight(const BitMatrix& host, const std::vector<int>& rows, const std::vector<int>& cols) {
  std::int64_t w = 0;
  for (int r : rows)
    for (int c : cols) w += host.get(r, c);
  return w;
}

bool verify_certificate(const BitMatrix& host, const DenseCertificate& cert) {
  if (cert.rows.empty() || cert.rows.size() != cert.cols.size()) return false;
  for (std::size_t i = 0; i < cert.rows.size(); ++i) {
    if (cert.rows[i] < 0 || cert.rows[i] >= host.rows()) return false;
    if (cert.cols[i] < 0 || cert.cols[i] >= host.cols()) return false;
    if (i > 0 && (cert.rows[i] <= cert.rows[i - 1] || cert.cols[i] <= cert.cols[i - 1])) return false;
  }
  const std::int64_t w = induced_weight(host, cert.rows, cert.cols);
  return w == cert.weight && static_cast<double>(w) > weight_cap(cert.bound, cert.size());
}

}  // namespace patternex
