#include "patternex/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "patternex/fixtures.hpp"
#include "patternex/json_io.hpp"

namespace patternex::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kFixturePrefix = "fixture:";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Pattern load_pattern(const std::string& spec) {
  if (spec.rfind(kFixturePrefix, 0) == 0) {
    auto name = spec.substr(kFixturePrefix.size());
    if (auto p = fixture(name)) return *p;
    throw UsageError("unknown fixture '" + name + "'");
  }
  try {
    return parse_pattern(read_file(spec));
  } catch (const ParseError& e) {
    throw UsageError(spec + ": " + e.what());
  }
}

Matrix01 load_matrix(const std::string& spec) {
  if (spec.rfind(kFixturePrefix, 0) == 0) return Matrix01(load_pattern(spec));
  try {
    return parse_matrix(read_file(spec));
  } catch (const ParseError& e) {
    throw UsageError(spec + ": " + e.what());
  }
}

int default_jobs() {
  if (const char* env = std::getenv("PATTERNEX_JOBS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      return 1;
    }
  }
  return 1;
}

struct BoundFlags {
  std::optional<double> b;
  std::optional<double> c;
  std::optional<double> d;

  void attach(CLI::App* app) {
    app->add_option("--b", b, "exponent scale b of h(n) = d*2^(b*log2(n)^c)");
    app->add_option("--c", c, "exponent power c, 0 < c < 1");
    app->add_option("--d", d, "multiplier d")->check(CLI::PositiveNumber);
  }

  TheoremParameters apply(TheoremParameters p) const {
    if (b) p.b = *b;
    if (c) p.c = *c;
    if (d) p.d = *d;
    return p;
  }
};

// Parameters from the pattern when it is vertically degenerate, otherwise
// from explicit flags only.
TheoremParameters parameters_for(const Pattern& p, const BoundFlags& flags) {
  auto cls = class_number(p);
  TheoremParameters params = theorem_parameters(cls ? cls->s : 1, p.cols());
  return flags.apply(params);
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("--table expects N1..N2, got '" + text + "'");
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forbidden 0-1 matrix patterns: containment, classification, extremal numbers, embeddings"};
  app.name("patternex");
  app.require_subcommand(1);

  int jobs = default_jobs();
  app.add_option("--jobs", jobs, "worker threads (default: $PATTERNEX_JOBS or 1)")->check(CLI::PositiveNumber);

  std::string pattern_path;
  std::string matrix_path;
  const std::string pattern_help = "pattern file, or fixture:NAME (Q1, Q2, R, S, I2, ONE, ROW<k>)";

  auto* classify = app.add_subcommand("classify", "classify a pattern (JSON)");
  classify->add_option("-p,--pattern", pattern_path, pattern_help)->required();

  auto* contains_cmd = app.add_subcommand("contains", "test whether a matrix contains a pattern");
  contains_cmd->add_option("-m,--matrix", matrix_path, "host matrix file")->required();
  contains_cmd->add_option("-p,--pattern", pattern_path, pattern_help)->required();

  int k = 0;
  int u = 0;
  BoundFlags embed_bound;
  auto* embed = app.add_subcommand("embed", "block-respecting embedding or dense certificate (JSON)");
  embed->add_option("-p,--pattern", pattern_path, pattern_help)->required();
  embed->add_option("-m,--matrix", matrix_path, "host matrix file with k*n columns")->required();
  embed->add_option("-k", k, "number of vertical blocks")->required()->check(CLI::PositiveNumber);
  embed->add_option("-u", u, "minimum ones per box")->required()->check(CLI::NonNegativeNumber);
  embed_bound.attach(embed);

  int n = 0;
  std::string table;
  std::uint64_t budget = ExtremalOptions{}.budget;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string method = "bnb";
  bool witness = false;
  auto* extremal = app.add_subcommand("extremal", "exact ex(n, P)");
  extremal->add_option("-p,--pattern", pattern_path, pattern_help)->required();
  auto* n_opt = extremal->add_option("-n", n, "matrix size")->check(CLI::PositiveNumber);
  auto* table_opt = extremal->add_option("--table", table, "range N1..N2 of sizes");
  n_opt->excludes(table_opt);
  extremal->add_option("--budget", budget, "node budget")->check(CLI::PositiveNumber);
  extremal->add_option("--seed", seed, "warm-start seed");
  extremal->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
  extremal->add_flag("--witness", witness, "include witness matrices");
  extremal->add_option("--method", method, "bnb (cell branch and bound) or rows (row-profile search)")
      ->check(CLI::IsMember({"bnb", "rows"}));

  BoundFlags verify_bound_flags;
  auto* verify = app.add_subcommand("verify", "density-increment step on a host matrix (JSON)");
  verify->add_option("-p,--pattern", pattern_path, pattern_help)->required();
  verify->add_option("-m,--matrix", matrix_path, "square host matrix file")->required();
  verify->add_option("--seed", seed, "seed for sampled k-set selection");
  verify_bound_flags.attach(verify);

  std::optional<std::int64_t> at_n;
  auto* params = app.add_subcommand("params", "density-increment parameters of a pattern (JSON)");
  params->add_option("-p,--pattern", pattern_path, pattern_help)->required();
  params->add_option("-n", at_n, "evaluate x(n) and regime predicates at n")->check(CLI::Range(2, 1 << 30));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const EmbedOptions embed_options{jobs};

    if (*classify) {
      out << classification_report(load_pattern(pattern_path)).dump(2) << "\n";
      return kExitOk;
    }

    if (*contains_cmd) {
      const Matrix01 host = load_matrix(matrix_path);
      const Pattern pattern = load_pattern(pattern_path);
      auto e = contains(host, pattern);
      json j{{"contained", e.has_value()}, {"embedding", e ? to_json(*e) : json(nullptr)}};
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*embed) {
      const Pattern pattern = load_pattern(pattern_path);
      const Matrix01 host = load_matrix(matrix_path);
      if (pattern.cols() != k) throw UsageError("pattern has " + std::to_string(pattern.cols()) + " columns, -k is " +
                                                std::to_string(k));
      if (host.cols() % k != 0) throw UsageError("matrix column count is not a multiple of k");
      auto cls = class_number(pattern);
      if (!cls) throw UsageError("pattern is not vertically degenerate");
      const BlockStructure blocks{k, host.cols() / k};
      if (!is_ku_complete(host, blocks, u)) throw UsageError("matrix is not (k,u)-complete");
      const SparsityBound bound = parameters_for(pattern, embed_bound).bound();
      auto outcome = recursive_embed(pattern, cls->tree, host, blocks, u, bound, embed_options);
      json j{{"bound", to_json(bound)}, {"blockWidth", blocks.width}};
      int code = kExitOk;
      if (auto* e = std::get_if<BlockEmbedding>(&outcome)) {
        j["result"] = "embedding";
        j["embedding"] = to_json(*e);
      } else if (auto* c = std::get_if<DenseCertificate>(&outcome)) {
        j["result"] = "certificate";
        j["certificate"] = to_json(*c);
      } else {
        j["result"] = "inconclusive";
        j["inconclusive"] = to_json(std::get<Inconclusive>(outcome));
        code = kExitInconclusive;
      }
      out << j.dump(2) << "\n";
      return code;
    }

    if (*extremal) {
      const Pattern pattern = load_pattern(pattern_path);
      if (pattern.weight() == 0) throw UsageError("ex(n, P) is undefined for a weight-0 pattern");
      int first = n;
      int last = n;
      if (!table.empty()) std::tie(first, last) = parse_range(table);
      if (first < 1 || last < first) throw UsageError("give -n N or --table N1..N2 with 1 <= N1 <= N2");

      json rows = json::array();
      std::ostringstream tsv;
      tsv << "n\tex\tex_over_n\tnodes\n";
      int code = kExitOk;
      for (int size = first; size <= last; ++size) {
        try {
          const auto engine = method == "rows" ? ExtremalMethod::RowProfile : ExtremalMethod::BranchAndBound;
          auto r = ex_exact(size, pattern, ExtremalOptions{budget, seed, engine});
          json row{{"n", size}, {"ex", r.max_weight}, {"exOverN", static_cast<double>(r.max_weight) / size},
                   {"nodes", r.nodes_explored}};
          if (witness) row["witness"] = r.witness.to_text();
          rows.push_back(row);
          tsv << size << '\t' << r.max_weight << '\t' << static_cast<double>(r.max_weight) / size << '\t'
              << r.nodes_explored << '\n';
          if (witness) tsv << r.witness.to_text();
        } catch (const BudgetExceeded& e) {
          err << "n = " << size << ": " << e.what() << "\n";
          rows.push_back({{"n", size}, {"ex", nullptr}, {"budgetExceeded", true}});
          tsv << size << "\tbudget\tbudget\t" << budget << '\n';
          code = kExitInconclusive;
          break;
        }
      }
      if (format == "tsv")
        out << tsv.str();
      else
        out << json{{"pattern", pattern.to_text()}, {"results", rows}}.dump(2) << "\n";
      return code;
    }

    if (*verify) {
      const Pattern pattern = load_pattern(pattern_path);
      const Matrix01 host = load_matrix(matrix_path);
      if (host.rows() != host.cols()) throw UsageError("verify needs a square matrix");
      if (!is_vertically_degenerate(pattern)) throw UsageError("pattern is not vertically degenerate");
      const TheoremParameters p = verify_bound_flags.apply(theorem_parameters(pattern));
      validate(p.bound());
      auto outcome = verify_bound(host, pattern, p, embed_options, BoxOptions{seed});
      json j{{"parameters", to_json(p)}};
      int code = kExitOk;
      if (auto* e = std::get_if<Embedding>(&outcome)) {
        j["result"] = "embedding";
        j["embedding"] = to_json(*e);
      } else if (auto* c = std::get_if<DenseCertificate>(&outcome)) {
        j["result"] = "certificate";
        j["certificate"] = to_json(*c);
      } else {
        j["result"] = "inconclusive";
        j["inconclusive"] = to_json(std::get<Inconclusive>(outcome));
        code = kExitInconclusive;
      }
      out << j.dump(2) << "\n";
      return code;
    }

    if (*params) {
      const Pattern pattern = load_pattern(pattern_path);
      const TheoremParameters p = theorem_parameters(pattern);
      json j = to_json(p);
      if (at_n) {
        j["at"] = {{"n", *at_n},
                   {"x", p.x(*at_n)},
                   {"h", h_eval(p.bound(), *at_n)},
                   {"xBelowTenth", p.x_below_tenth(*at_n)},
                   {"powerAtLeast40", p.power_at_least_40(*at_n)}};
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace patternex::cli
