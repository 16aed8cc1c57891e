#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace rigidity {

inline constexpr int kMaxRank = 8;

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };
enum class Twist { Untwisted, Order2 };

struct LieTypeLabel {
  Family family = Family::A;
  int rank = 1;
  Twist twist = Twist::Untwisted;

  bool twisted() const { return twist == Twist::Order2; }
  // ASCII spelling used in every serialized output: "A3", "2D4", "E8".
  std::string str() const;

  auto operator<=>(const LieTypeLabel&) const = default;
};

LieTypeLabel untwisted(Family family, int rank);
LieTypeLabel twisted(Family family, int rank);

// Accepts "A3", "a3", "2D4", "^2D4" and the superscript form with U+00B2.
// Throws std::invalid_argument on malformed input; admissibility is separate.
LieTypeLabel parse_label(std::string_view text);
Family parse_family(char c);

// Ranks are capped at kMaxRank.
// Untwisted: A n>=1, B n>=2, C n>=3, D n>=4, E 6..8, F4, G2.
// Order-2 twist: A n>=2, D n>=3, E6.
bool is_admissible(const LieTypeLabel& label);

// 2A3 and 2D3 name the same group; the D spelling is canonical.
LieTypeLabel canonical(const LieTypeLabel& label);

}  // namespace rigidity
