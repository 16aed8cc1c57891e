#include "doctest.h"

#include <set>

#include "ambient_oracle.hpp"
#include "rigidity/rootsys.hpp"

using namespace rigidity;

namespace {

std::vector<LieTypeLabel> all_untwisted() {
  std::vector<LieTypeLabel> out;
  for (int n = 1; n <= 8; ++n) out.push_back(untwisted(Family::A, n));
  for (int n = 2; n <= 7; ++n) out.push_back(untwisted(Family::B, n));
  for (int n = 3; n <= 7; ++n) out.push_back(untwisted(Family::C, n));
  for (int n = 4; n <= 7; ++n) out.push_back(untwisted(Family::D, n));
  for (int n = 6; n <= 8; ++n) out.push_back(untwisted(Family::E, n));
  out.push_back(untwisted(Family::F, 4));
  out.push_back(untwisted(Family::G, 2));
  return out;
}

int classical_count(const LieTypeLabel& l) {
  const int n = l.rank;
  switch (l.family) {
    case Family::A: return n * n + n;
    case Family::B:
    case Family::C: return 2 * n * n;
    case Family::D: return 2 * n * n - 2 * n;
    case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    case Family::F: return 48;
    case Family::G: return 12;
  }
  return -1;
}

}  // namespace

TEST_CASE("root counts") {
  CHECK(build(parse_label("A2")).num_roots() == 6);
  CHECK(build(parse_label("G2")).num_roots() == 12);
  CHECK(build(parse_label("E8")).num_roots() == 240);
  for (const auto& label : all_untwisted()) {
    CAPTURE(label.str());
    CHECK(build(label).num_roots() == classical_count(label));
  }
}

TEST_CASE("closure equals the ambient-coordinate construction") {
  for (const auto& label : all_untwisted()) {
    CAPTURE(label.str());
    const RootSystem rs = build(label);
    const auto ambient = testing_support::ambient_roots(label.family, label.rank);
    CHECK(static_cast<int>(ambient.roots.size()) == classical_count(label));
    const auto coords = testing_support::simple_coordinates(ambient, rs.cartan);
    REQUIRE(coords.has_value());
    CHECK(*coords == rs.roots);
  }
}

TEST_CASE("reflect") {
  const RootSystem a2 = build(parse_label("A2"));
  CHECK(reflect(a2, 0, {1, 0}) == IntVector{-1, 0});
  CHECK(reflect(a2, 0, {0, 1}) == IntVector{1, 1});
  const RootSystem b2 = build(untwisted(Family::B, 2));
  CHECK(reflect(b2, 1, {1, 0}) == IntVector{1, 2});
}

TEST_CASE("coroot") {
  const RootSystem a2 = build(parse_label("A2"));
  CHECK(coroot(a2, {1, 0}) == IntVector{1, 0});
  CHECK(coroot(a2, {1, 1}) == IntVector{1, 1});
  // a1 + a2 = alpha1 + 2 alpha2 in B2.
  const RootSystem b2 = build(untwisted(Family::B, 2));
  CHECK(coroot(b2, {1, 2}) == IntVector{1, 1});
  CHECK_THROWS(coroot(b2, {2, 1}));
}

TEST_CASE("support is connected for every root") {
  const RootSystem a3 = build(parse_label("A3"));
  const Support full = support(a3, {1, 1, 1});
  CHECK(full.nodes == std::vector<int>{0, 1, 2});
  CHECK(full.connected);
  const Support single = support(build(parse_label("D4")), {0, 1, 0, 0});
  CHECK(single.nodes == std::vector<int>{1});
  CHECK(single.connected);
  CHECK_FALSE(support(a3, {1, 0, 1}).connected);
  for (const auto& label : all_untwisted()) {
    const RootSystem rs = build(label);
    for (const IntVector& r : rs.roots) CHECK(support(rs, r).connected);
  }
}

TEST_CASE("is_root_mod") {
  const DualSystem a2 = dual(build(parse_label("A2")));
  for (Int m : {3, 4, 8, 16}) CHECK(is_root_mod(a2, {1, m}, m));
  const DualSystem b3 = dual(build(parse_label("B3")));
  CHECK_FALSE(is_root_mod(b3, {1, 0, 2}, 4));
  CHECK_FALSE(is_root_mod(b3, {0, 0, 0}, 4));
  CHECK_THROWS(is_root_mod(b3, {1, 0, 0}, 2));
}

TEST_CASE("closure, integrality and duality") {
  for (const auto& label : all_untwisted()) {
    CAPTURE(label.str());
    const RootSystem rs = build(label);
    const std::set<IntVector> roots(rs.roots.begin(), rs.roots.end());
    for (int i = 0; i < rs.rank; ++i)
      for (const IntVector& r : rs.roots) CHECK(roots.count(reflect(rs, i, r)));
    for (int a = 0; a < rs.num_roots(); ++a)
      for (int b = 0; b < rs.num_roots(); ++b) {
        const Int num = 2 * rs.inner(rs.roots[a], rs.roots[b]);
        CHECK(num % rs.inner(rs.roots[b], rs.roots[b]) == 0);
      }
    const DualSystem once = dual(rs);
    const DualSystem twice = dual(once.system);
    CHECK(twice.system.roots == rs.roots);
    CHECK(twice.system.cartan == rs.cartan);
  }
}

TEST_CASE("short roots have squared length 2") {
  CHECK(build(parse_label("B3")).simple_length_sq == std::vector<Int>{4, 4, 2});
  CHECK(build(parse_label("C3")).simple_length_sq == std::vector<Int>{2, 2, 4});
  CHECK(build(parse_label("G2")).simple_length_sq == std::vector<Int>{2, 6});
  CHECK(build(parse_label("F4")).simple_length_sq == std::vector<Int>{4, 4, 2, 2});
  CHECK_THROWS(build(parse_label("2D4")));
  CHECK_THROWS(build(parse_label("C2")));
}
