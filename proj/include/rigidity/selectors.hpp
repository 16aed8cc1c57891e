#pragma once

#include <string>
#include <vector>

#include "rigidity/label.hpp"

namespace rigidity {

// "3", "2..6", "1,3,5" or a mix; every value must lie in [lo, hi].
// Throws std::invalid_argument on malformed or out-of-range input.
std::vector<int> parse_int_list(const std::string& expr, int lo, int hi);

struct LabelSelection {
  std::vector<LieTypeLabel> labels;   // canonical, deduplicated, in request order
  std::vector<std::string> skipped;   // inadmissible combinations
};

// type_expr tokens: "A", "2D", "A..D", or full labels such as "G2", "2D4".
// Tokens without a rank take theirs from rank_expr.
LabelSelection expand_labels(const std::string& type_expr, const std::string& rank_expr);

}  // namespace rigidity
