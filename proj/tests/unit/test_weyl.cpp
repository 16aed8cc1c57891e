#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>

#include "rigidity/weyl.hpp"

using namespace rigidity;

namespace {

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::uint64_t classical_order(const LieTypeLabel& l) {
  const int n = l.rank;
  switch (l.family) {
    case Family::A: return factorial(n + 1);
    case Family::B:
    case Family::C: return (std::uint64_t{1} << n) * factorial(n);
    case Family::D: return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case Family::E: return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    case Family::F: return 1152;
    case Family::G: return 12;
  }
  return 0;
}

int matrix_order(const IntMatrix& m) {
  const IntMatrix id = IntMatrix::identity(m.rows());
  IntMatrix p = m;
  for (int k = 1; k <= 12; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  return -1;
}

void check_element(const RootSystem& rs, const WeylElement& w) {
  std::set<IntVector> coroots(rs.coroots.begin(), rs.coroots.end());
  for (int r = 0; r < rs.num_roots(); ++r) {
    const IntVector image = w.matrix.apply(rs.coroots[r]);
    CHECK(coroots.count(image));
    CHECK(image == rs.coroots[w.perm[r]]);
  }
}

}  // namespace

TEST_CASE("generators") {
  const auto a1 = generators(build(parse_label("A1")));
  REQUIRE(a1.size() == 1);
  CHECK(a1[0].matrix == IntMatrix::from_rows({{-1}}));
  for (const auto& g : generators(build(parse_label("A2")))) CHECK(matrix_order(g.matrix) == 2);
  const auto b3 = generators(build(parse_label("B3")));
  CHECK(matrix_order(b3[0].matrix * b3[1].matrix) == 3);
  CHECK(matrix_order(b3[1].matrix * b3[2].matrix) == 4);
  CHECK(matrix_order(b3[0].matrix * b3[2].matrix) == 2);
}

TEST_CASE("enumeration sizes") {
  CHECK(enumerate(build(parse_label("A2"))).size() == 6);
  CHECK(enumerate(build(parse_label("B3"))).size() == 48);
  CHECK(enumerate(build(parse_label("G2"))).size() == 12);
  for (const char* text : {"A1", "A5", "B4", "C4", "D4", "D5", "F4", "E6"}) {
    const auto label = parse_label(text);
    CAPTURE(text);
    CHECK(enumerate(build(label)).size() == classical_order(label));
    CHECK(weyl_order_closed_form(label) == classical_order(label));
  }
  CHECK_THROWS_AS(enumerate(build(parse_label("E6")), 1000), CapExceeded);
}

TEST_CASE("matrix path and permutation path agree") {
  for (const char* text : {"A3", "B3", "C3", "D4", "G2", "F4"}) {
    const RootSystem rs = build(parse_label(text));
    const WeylGroup group = enumerate(rs);
    REQUIRE(group.size() <= 10'000);
    for (std::size_t i = 0; i < group.size(); ++i) check_element(rs, group.element(i));
  }
}

TEST_CASE("sampled elements preserve the co-root set") {
  const RootSystem rs = build(parse_label("E8"));
  const ParabolicChain chain(rs);
  CHECK(chain.order() == classical_order(parse_label("E8")));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) check_element(rs, materialize(rs, chain.sample(rng)));
}

TEST_CASE("parabolic chain streams each element once") {
  for (const char* text : {"B3", "D4", "G2", "A4"}) {
    const RootSystem rs = build(parse_label(text));
    const ParabolicChain chain(rs);
    std::set<BaseKey> seen;
    std::uint64_t visits = 0;
    chain.for_each([&](const std::uint8_t* images) {
      std::vector<int> v(images, images + rs.rank);
      seen.insert(pack_key(v));
      ++visits;
    });
    const auto keys = enumerate(rs).keys();
    CHECK(visits == keys.size());
    CHECK(seen == std::set<BaseKey>(keys.begin(), keys.end()));
  }
}

TEST_CASE("longest element") {
  CHECK(longest_element(build(parse_label("A1"))).matrix == IntMatrix::from_rows({{-1}}));
  CHECK(longest_element(build(untwisted(Family::B, 2))).matrix == scaled(IntMatrix::identity(2), -1));
  CHECK(longest_element(build(parse_label("A2"))).matrix == IntMatrix::from_rows({{0, -1}, {-1, 0}}));
  const RootSystem e7 = build(parse_label("E7"));
  const WeylElement w0 = longest_element(e7);
  CHECK(w0.matrix == scaled(IntMatrix::identity(7), -1));
  CHECK(w0.word.size() == 63);
}

TEST_CASE("reduced words reproduce their element") {
  const RootSystem rs = build(parse_label("B3"));
  const WeylGroup group = enumerate(rs);
  const auto gens = generators(rs);
  for (std::size_t i = 0; i < group.size(); ++i) {
    const WeylElement w = group.element(i);
    IntMatrix m = IntMatrix::identity(rs.rank);
    for (int s : w.word) m = m * gens[s].matrix;
    CHECK(m == w.matrix);
  }
}

TEST_CASE("cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "rigidity-weyl-cache-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  ::setenv("RIGIDITY_CACHE_DIR", dir.c_str(), 1);
  const RootSystem rs = build(parse_label("D4"));
  const WeylGroup fresh = enumerate(rs);
  CHECK(std::filesystem::exists(dir / "weyl-D4.bin"));
  const WeylGroup cached = enumerate(rs);
  CHECK(cached.keys() == fresh.keys());
  CHECK(cached.layer_offsets() == fresh.layer_offsets());
  ::unsetenv("RIGIDITY_CACHE_DIR");
  std::filesystem::remove_all(dir);
}
