// Acceptance run: one PASS/FAIL line per criterion, with the time limit each
// criterion carries. Exit status is nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "patternex/classifier.hpp"
#include "patternex/containment.hpp"
#include "patternex/embedder.hpp"
#include "patternex/extremal.hpp"
#include "patternex/fixtures.hpp"

using namespace patternex;

namespace {

// Tolerances and limits.
constexpr double kInequalityMargin = 1e-12;  // relative, criterion 6
constexpr double kEnvelope = 6.0;            // ex(n,Q1)/n ceiling, criterion 10

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail << "failed: " << what << "; ";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && seconds >= limit_seconds) {
    std::ostringstream why;
    why << "took " << seconds << " s, limit " << limit_seconds << " s";
    v.require(false, why.str());
  }
  failures += !v.pass;
  std::printf("%s  %2d  %-40s %8.3f s  %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), seconds,
              v.detail.str().c_str());
  std::fflush(stdout);
}

Pattern fx(const char* name) { return *fixture(name); }

}  // namespace

int main() {
  criterion(1, "fixture classification", 1.0, [](Verdict& v) {
    for (const char* name : {"Q1", "Q2"}) {
      auto cls = class_number(fx(name));
      v.require(cls && cls->s == 2, std::string(name) + " is class-2 and not class-1");
    }
    v.require(relaxed_class_number(fx("Q1")) == 1, "Q1 has relaxed class 1");
    v.require(relaxed_class_number(fx("Q2")) != 1, "Q2 does not have relaxed class 1");
    v.require(!is_vertically_separable(fx("R")) && !is_horizontally_separable(fx("R")),
              "R is neither vertically nor horizontally separable");

    const auto s = fx("S");
    int subsets = 0;
    int checked = 0;
    for (std::uint32_t rm = 1; rm < (1U << s.rows()); ++rm)
      for (std::uint32_t cm = 1; cm < (1U << s.cols()); ++cm) {
        ++subsets;
        std::vector<int> rows;
        std::vector<int> cols;
        for (int i = 0; i < s.rows(); ++i)
          if (rm >> i & 1U) rows.push_back(i);
        for (int j = 0; j < s.cols(); ++j)
          if (cm >> j & 1U) cols.push_back(j);
        if (rows.size() < 2 || cols.size() < 2) continue;
        ++checked;
        const Pattern sub(submatrix(s, rows, cols));
        v.require(is_vertically_separable(sub) || is_horizontally_separable(sub),
                  "every submatrix of S with >= 2 rows and columns is separable");
      }
    v.require(subsets == 465, "465 row/column subsets of S");
    v.require(!is_vertically_degenerate(s), "S is not vertically degenerate");
    v.require(!is_vertically_degenerate(transpose(s)), "S is not horizontally degenerate");
    v.detail << subsets << " subsets of S, " << checked << " with >= 2 rows and columns";
  });

  criterion(2, "exact extremal values", 60.0, [](Verdict& v) {
    const ExtremalOptions rows{100'000'000, 0, ExtremalMethod::RowProfile};
    for (int n = 1; n <= 6; ++n) v.require(ex_exact(n, fx("ONE")).max_weight == 0, "ex(n,(1)) = 0");
    for (int n = 1; n <= 5; ++n) {
      const auto bnb = ex_exact(n, fx("ROW2"));
      const auto alt = ex_exact(n, fx("ROW2"), rows);
      v.require(bnb.max_weight == n && alt.max_weight == n, "ex(n,[1 1]) = n");
      v.require(!contains(bnb.witness, fx("ROW2")) && bnb.witness.weight() == n, "witness for [1 1]");
      if (n <= 3) v.require(oracle::ex(n, n, fx("ROW2")) == n, "enumeration for [1 1]");
    }
    v.require(oracle::ex(3, 3, fx("I2")) == 5, "enumeration of all 512 3x3 matrices gives 5");
    v.require(ex_exact(3, fx("I2")).max_weight == 5, "ex(3, I2) = 5 by branch and bound");
    v.require(ex_exact(3, fx("I2"), rows).max_weight == 5, "ex(3, I2) = 5 by row profiles");
    v.detail << "ex(n,(1))=0 n<=6; ex(n,[1 1])=n n<=5; ex(3,I2)=5";
  });

  criterion(3, "Q1 in (4,u)-complete, m = 2n/u + 1", 60.0, [](Verdict& v) {
    std::mt19937_64 rng(3);
    const auto q1 = fx("Q1");
    int trials = 0;
    int found = 0;
    for (; trials < 2000; ++trials) {
      const int u = gen::uniform(rng, 1, 8);
      const int n = gen::uniform(rng, u, 30);
      const int m = 2 * n / u + 1;
      // Half the hosts have exactly u ones per box, the sparsest allowed.
      const double extra = trials % 2 ? 0.0 : gen::uniform_real(rng, 0.0, 0.3);
      const auto a = oracle::random_ku_complete(m, 4, n, u, extra, rng);
      if (auto e = find_block_embedding(q1, a, {4, n}); e && verify_block_embedding(a, q1, {4, n}, *e)) ++found;
    }
    v.require(found == trials, "every instance embeds Q1");
    v.detail << found << "/" << trials << " embedded";
  });

  criterion(4, "combine property", 30.0, [](Verdict& v) {
    std::mt19937_64 rng(4);
    int valid = 0;
    for (; valid < 10000; ++valid) {
      const auto c = gen::valid_combine_case(rng);
      const auto out = combine_embeddings(c.pattern, c.cut, c.spanning, c.upper, c.lower);
      v.require(verify_block_embedding(c.host, c.pattern, c.blocks, out), "combined embedding verifies");
    }
    auto expect = [&](const gen::CombineCase& c, CombineFailure want, const char* what) {
      try {
        combine_embeddings(c.pattern, c.cut, c.spanning, c.upper, c.lower);
        v.require(false, std::string(what) + " accepted");
      } catch (const CombineError& e) {
        v.require(e.failure() == want, std::string(what) + " gave the wrong diagnostic");
      }
    };
    int rejected = 0;
    for (int t = 0; t < 1000; ++t) {
      auto shape = gen::valid_combine_case(rng);
      shape.upper.rows.pop_back();
      expect(shape, CombineFailure::ShapeMismatch, "short upper embedding");
      auto bad_cut = gen::valid_combine_case(rng);
      bad_cut.cut = bad_cut.pattern.rows();
      expect(bad_cut, CombineFailure::ShapeMismatch, "cut outside [1, l-1]");
      expect(gen::not_separated_case(rng), CombineFailure::NotSeparated, "two spanning columns");
      expect(gen::row_order_case(rng), CombineFailure::RowOrder, "overlapping rows");
      rejected += 4;
      for (;;)
        if (auto c = gen::column_mismatch_case(rng)) {
          expect(*c, CombineFailure::ColumnMismatch, "disagreeing spanning column");
          ++rejected;
          break;
        }
    }
    v.detail << valid << " valid pairs, " << rejected << " violations rejected";
  });

  criterion(5, "certificate soundness", 0.0, [](Verdict& v) {
    std::mt19937_64 rng(5);
    gen::Tally embed;
    gen::Tally verify;
    for (int t = 0; t < 1000; ++t) gen::recursive_embed_trial(rng, embed);
    for (int t = 0; t < 300; ++t) gen::verify_bound_trial(rng, verify);
    v.require(embed.unsound == 0, embed.first_problem);
    v.require(verify.unsound == 0, verify.first_problem);
    v.require(embed.total() + verify.total() >= 1000, "at least 1000 instances");
    v.detail << "recursive_embed " << embed.embeddings << " emb/" << embed.certificates << " cert/"
             << embed.inconclusive << " inc; verify_bound " << verify.embeddings << "/" << verify.certificates << "/"
             << verify.inconclusive;
  });

  criterion(6, "h(n)/h(m) >= (n/m)^x(n)", 0.0, [](Verdict& v) {
    std::mt19937_64 rng(6);
    double worst = HUGE_VAL;
    int checks = 0;
    for (int p = 0; p < 100; ++p) {
      const SparsityBound b{gen::uniform_real(rng, 0.1, 10.0), gen::uniform_real(rng, 0.05, 0.95),
                            std::exp(gen::uniform_real(rng, std::log(0.01), std::log(100.0)))};
      for (int q = 0; q < 100; ++q) {
        const auto n = static_cast<std::int64_t>(std::exp2(gen::uniform_real(rng, std::log2(3.0), 20.0)));
        const auto m = std::uniform_int_distribution<std::int64_t>(2, n - 1)(rng);
        const double lhs = h_eval(b, n) / h_eval(b, m);
        const double rhs = std::pow(static_cast<double>(n) / m, x_eval(b, n));
        const double margin = lhs / rhs - 1.0;
        worst = std::min(worst, margin);
        ++checks;
        if (!(margin > kInequalityMargin)) {
          std::ostringstream why;
          why << "n=" << n << " m=" << m << " b=" << b.b << " c=" << b.c << " margin " << margin;
          v.require(false, why.str());
        }
      }
    }
    v.detail << checks << " pairs, smallest relative margin " << worst;
  });

  criterion(7, "containment oracle equivalence", 0.0, [](Verdict& v) {
    long cases = 0;
    long mismatches = 0;
    for (int r = 1; r <= 3; ++r)
      for (int c = 1; c <= 3; ++c)
        for (std::uint64_t hb = 0; hb < (std::uint64_t{1} << (r * c)); ++hb) {
          const auto host = oracle::from_bits(r, c, hb);
          for (int l = 1; l <= 2; ++l)
            for (int k = 1; k <= 2; ++k)
              for (std::uint64_t pb = 0; pb < (std::uint64_t{1} << (l * k)); ++pb) {
                const auto p = oracle::pattern_from_bits(l, k, pb);
                const auto e = contains(host, p);
                ++cases;
                if (e.has_value() != oracle::contains(host, p) ||
                    (e && !oracle::dominates(host, p, e->rows, e->cols)))
                  ++mismatches;
              }
        }
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20000; ++t) {
      const auto host = oracle::random_matrix(4, 4, gen::uniform_real(rng, 0.3, 0.9), rng);
      const Pattern p(oracle::random_matrix(3, 3, gen::uniform_real(rng, 0.2, 0.6), rng));
      const auto e = contains(host, p);
      ++cases;
      if (e.has_value() != oracle::contains(host, p) || (e && !oracle::dominates(host, p, e->rows, e->cols)))
        ++mismatches;
    }
    v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    v.detail << cases << " cases, " << mismatches << " mismatches";
  });

  criterion(8, "degenerate row permutations", 120.0, [](Verdict& v) {
    int patterns = 0;
    int acyclic = 0;
    for (int l = 1; l <= 4; ++l)
      for (int k = 1; k <= 4; ++k)
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (l * k)); ++bits) {
          if (__builtin_popcountll(bits) > 6) continue;
          const auto p = oracle::pattern_from_bits(l, k, bits);
          ++patterns;
          if (!is_acyclic(p)) continue;
          ++acyclic;
          const auto perm = find_degenerate_row_permutation(p);
          v.require(perm && oracle::class_number(permute_rows(p, *perm)).has_value(),
                    "acyclic pattern " + p.to_text() + " has a degenerate row order");
        }
    const auto r = fx("R");
    const auto perm = find_degenerate_row_permutation(r);
    v.require(perm.has_value(), "R has a witness permutation");
    if (perm) {
      const auto permuted = permute_rows(r, *perm);
      v.require(is_vertically_degenerate(permuted) && oracle::class_number(permuted).has_value(),
                "R's witness re-verifies");
      v.detail << "R permutation (";
      for (std::size_t i = 0; i < perm->size(); ++i) v.detail << (i ? "," : "") << (*perm)[i] + 1;
      v.detail << "); ";
    }
    v.detail << acyclic << " acyclic of " << patterns << " patterns";
  });

  criterion(9, "transpose invariance of ex", 0.0, [](Verdict& v) {
    int pairs = 0;
    for (const auto& name : fixture_names()) {
      const auto p = *fixture(name);
      for (int n = 1; n <= 4; ++n) {
        v.require(ex_exact(n, p).max_weight == ex_exact(n, transpose(p)).max_weight, name + " at n=" +
                                                                                        std::to_string(n));
        ++pairs;
      }
    }
    v.detail << pairs << " (pattern, n) pairs";
  });

  criterion(10, "ex(n,Q1)/n table, n <= 7 (reporting)", 0.0, [](Verdict& v) {
    // The asymptotic bounds cannot be checked at this size; this is only a
    // sanity envelope on the exact small values.
    const auto q1 = fx("Q1");
    const ExtremalOptions rows{100'000'000, 0, ExtremalMethod::RowProfile};
    double prev = 0.0;
    for (int n = 1; n <= 7; ++n) {
      const auto r = ex_exact(n, q1, rows);
      v.require(r.witness.weight() == r.max_weight && !contains(r.witness, q1), "witness avoids Q1");
      if (n <= 6) v.require(ex_exact(n, q1).max_weight == r.max_weight, "engines agree at n=" + std::to_string(n));
      const double ratio = static_cast<double>(r.max_weight) / n;
      v.require(ratio >= prev, "non-decreasing");
      v.require(ratio <= kEnvelope, "ratio <= 6");
      prev = ratio;
      v.detail << n << ":" << r.max_weight << " ";
    }
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
