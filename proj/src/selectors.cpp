#include "rigidity/selectors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rigidity {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int parse_int(const std::string& text) {
  std::size_t used = 0;
  const int v = std::stoi(text, &used);
  if (used != text.size()) throw std::invalid_argument("not an integer: " + text);
  return v;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& expr, int lo, int hi) {
  std::vector<int> out;
  for (const std::string& token : split(expr, ',')) {
    const auto dots = token.find("..");
    int a = 0;
    int b = 0;
    try {
      a = parse_int(token.substr(0, dots));
      b = dots == std::string::npos ? a : parse_int(token.substr(dots + 2));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed range: " + token);
    }
    if (a > b || a < lo || b > hi)
      throw std::invalid_argument("range " + token + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    for (int v = a; v <= b; ++v)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty range expression");
  return out;
}

LabelSelection expand_labels(const std::string& type_expr, const std::string& rank_expr) {
  LabelSelection sel;
  auto add = [&](const LieTypeLabel& label) {
    if (!is_admissible(label)) {
      sel.skipped.push_back(label.str());
      return;
    }
    const LieTypeLabel c = canonical(label);
    if (std::find(sel.labels.begin(), sel.labels.end(), c) == sel.labels.end()) sel.labels.push_back(c);
  };
  auto ranks = [&]() {
    if (rank_expr.empty()) throw std::invalid_argument("a rank is required for family selectors");
    return parse_int_list(rank_expr, 1, 8);
  };
  const auto tokens = split(type_expr, ',');
  if (tokens.empty()) throw std::invalid_argument("empty type selector");
  for (const std::string& token : tokens) {
    const auto dots = token.find("..");
    if (dots != std::string::npos) {
      if (token.size() != dots + 3 || dots != 1) throw std::invalid_argument("malformed family range: " + token);
      const char from = static_cast<char>(std::toupper(token[0]));
      const char to = static_cast<char>(std::toupper(token[dots + 2]));
      if (from > to) throw std::invalid_argument("malformed family range: " + token);
      for (char f = from; f <= to; ++f)
        for (int n : ranks()) add(untwisted(parse_family(f), n));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(token.back()))) {
      add(parse_label(token));
      continue;
    }
    for (int n : ranks()) add(parse_label(token + std::to_string(n)));
  }
  return sel;
}

}  // namespace rigidity
