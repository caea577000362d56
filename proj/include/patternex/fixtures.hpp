#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patternex/bit_matrix.hpp"

namespace patternex {

// Named patterns: Q1, Q2, R, S (with 0-entries filled in), I2 (2x2 identity),
// ONE (the 1x1 pattern (1)) and ROW<k>, the 1 x k all-ones row, for k = 1..9.
std::optional<Pattern> fixture(std::string_view name);

std::vector<std::string> fixture_names();

}  // namespace patternex
