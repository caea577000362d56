#include "patternex/json_io.hpp"

#include <cmath>
#include <functional>

namespace patternex {

using nlohmann::json;

namespace {

json one_based(const std::vector<int>& v) {
  json out = json::array();
  for (int x : v) out.push_back(x + 1);
  return out;
}

json separation_json(const std::optional<Separation>& sep) {
  if (!sep) return nullptr;
  json j{{"cut", sep->cut}};
  j["spanningColumn"] = sep->spanning_column ? json(*sep->spanning_column + 1) : json(nullptr);
  return j;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json orientation_report(const Pattern& p) {
  auto cls = class_number(p);
  json j;
  j["separable"] = p.rows() >= 2 ? separation_json(is_vertically_separable(p)) : json(nullptr);
  j["degenerate"] = cls.has_value();
  j["classNumber"] = cls ? json(cls->s) : json(nullptr);
  j["relaxedClassNumber"] = optional_json(relaxed_class_number(p));
  return j;
}

}  // namespace

json to_json(const Embedding& e) { return {{"rows", one_based(e.rows)}, {"cols", one_based(e.cols)}}; }

json to_json(const BlockEmbedding& e) { return {{"rows", one_based(e.rows)}, {"cols", one_based(e.cols)}}; }

json to_json(const SparsityBound& b) { return {{"b", b.b}, {"c", b.c}, {"d", b.d}}; }

json to_json(const DenseCertificate& c) {
  return {{"rows", one_based(c.rows)},   {"cols", one_based(c.cols)},     {"size", c.size()},
          {"weight", c.weight},          {"threshold", c.threshold()},    {"bound", to_json(c.bound)}};
}

json to_json(const Inconclusive& i) { return {{"reason", i.reason}, {"failedHypotheses", i.failed_hypotheses}}; }

json to_json(const SeparationTree& t) {
  std::function<json(int)> node = [&](int index) -> json {
    const auto& n = t.node(index);
    json j{{"rows", {n.first_row + 1, n.last_row + 1}}, {"depth", n.depth}};
    if (n.is_leaf()) return j;
    j["cut"] = n.cut;
    j["spanningColumn"] = n.spanning_column ? json(*n.spanning_column + 1) : json(nullptr);
    j["upper"] = node(n.upper);
    j["lower"] = node(n.lower);
    return j;
  };
  return node(t.root);
}

json to_json(const TheoremParameters& p) {
  return {{"s", p.s}, {"k", p.k}, {"c", p.c}, {"b", p.b}, {"d", p.d}, {"log2Threshold", p.log2_threshold()}};
}

Embedding embedding_from_json(const json& j) {
  Embedding e;
  for (int r : j.at("rows").get<std::vector<int>>()) e.rows.push_back(r - 1);
  for (int c : j.at("cols").get<std::vector<int>>()) e.cols.push_back(c - 1);
  return e;
}

json classification_report(const Pattern& p) {
  json j;
  j["rows"] = p.rows();
  j["cols"] = p.cols();
  j["weight"] = p.weight();
  j["acyclic"] = is_acyclic(p);
  j["verticallySeparable"] = p.rows() >= 2 ? separation_json(is_vertically_separable(p)) : json(nullptr);
  auto cls = class_number(p);
  j["verticallyDegenerate"] = cls.has_value();
  j["classNumber"] = cls ? json(cls->s) : json(nullptr);
  j["separationTree"] = cls ? to_json(cls->tree) : json(nullptr);
  j["relaxedClassNumber"] = optional_json(relaxed_class_number(p));
  j["horizontal"] = orientation_report(transpose(p));
  j["intervalChromaticNumber"] = interval_chromatic_number(pattern_to_ordered_graph(p));
  if (p.rows() <= 8) {
    auto perm = find_degenerate_row_permutation(p);
    j["degenerateRowPermutation"] = perm ? one_based(*perm) : json(nullptr);
  }
  return j;
}

}  // namespace patternex
