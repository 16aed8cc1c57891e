#include "rigidity/label.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace rigidity {

std::string LieTypeLabel::str() const {
  std::string out = twisted() ? "2" : "";
  out += static_cast<char>(family);
  out += std::to_string(rank);
  return out;
}

LieTypeLabel untwisted(Family family, int rank) { return {family, rank, Twist::Untwisted}; }
LieTypeLabel twisted(Family family, int rank) { return {family, rank, Twist::Order2}; }

Family parse_family(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    case 'E': return Family::E;
    case 'F': return Family::F;
    case 'G': return Family::G;
    default: throw std::invalid_argument(std::string("unknown Lie family '") + c + "'");
  }
}

LieTypeLabel parse_label(std::string_view text) {
  std::string_view rest = text;
  Twist twist = Twist::Untwisted;
  if (rest.starts_with("\xC2\xB2")) {
    twist = Twist::Order2;
    rest.remove_prefix(2);
  } else if (rest.starts_with("^2")) {
    twist = Twist::Order2;
    rest.remove_prefix(2);
  } else if (rest.starts_with("2")) {
    twist = Twist::Order2;
    rest.remove_prefix(1);
  }
  if (rest.size() < 2) throw std::invalid_argument("malformed Lie type label '" + std::string(text) + "'");
  Family family = parse_family(rest.front());
  rest.remove_prefix(1);
  int rank = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), rank);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || rank < 1)
    throw std::invalid_argument("malformed Lie type label '" + std::string(text) + "'");
  return {family, rank, twist};
}

bool is_admissible(const LieTypeLabel& label) {
  const int n = label.rank;
  // Weyl keys hold one byte per node.
  if (n > kMaxRank) return false;
  if (label.twisted()) {
    switch (label.family) {
      case Family::A: return n >= 2;
      case Family::D: return n >= 3;
      case Family::E: return n == 6;
      default: return false;
    }
  }
  switch (label.family) {
    case Family::A: return n >= 1;
    case Family::B: return n >= 2;
    case Family::C: return n >= 3;
    case Family::D: return n >= 4;
    case Family::E: return n >= 6 && n <= 8;
    case Family::F: return n == 4;
    case Family::G: return n == 2;
  }
  return false;
}

LieTypeLabel canonical(const LieTypeLabel& label) {
  if (label.twisted() && label.family == Family::A && label.rank == 3) return twisted(Family::D, 3);
  return label;
}

}  // namespace rigidity
