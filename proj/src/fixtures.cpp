#include "patternex/fixtures.hpp"

#include <map>

namespace patternex {

namespace {

const std::map<std::string, std::string, std::less<>>& table() {
  static const std::map<std::string, std::string, std::less<>> fixtures = {
      {"Q1", "1010\n1001\n0101\n"},
      {"Q2", "0101\n1010\n1001\n"},
      {"R", "1001\n0100\n1010\n0101\n"},
      {"S", "10101\n01010\n10000\n01001\n"},
      {"I2", "10\n01\n"},
      {"ONE", "1\n"},
  };
  return fixtures;
}

}  // namespace

std::optional<Pattern> fixture(std::string_view name) {
  if (auto it = table().find(name); it != table().end()) return parse_pattern(it->second);
  if (name.size() == 4 && name.substr(0, 3) == "ROW" && name[3] >= '1' && name[3] <= '9') {
    Pattern row(1, name[3] - '0');
    for (int c = 0; c < row.cols(); ++c) row.set(0, c);
    return row;
  }
  return std::nullopt;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : table()) names.push_back(name);
  for (char k = '1'; k <= '9'; ++k) names.push_back(std::string("ROW") + k);
  return names;
}

}  // namespace patternex
