#include "doctest.h"

#include <cmath>
#include <set>

#include "rigidity/torus.hpp"

using namespace rigidity;

namespace {

Int pow2(int e) { return Int{1} << e; }

std::set<IntVector> embedded(const TorusModel& model) {
  std::vector<TorusElement> gens;
  for (int i = 0; i < model.rank(); ++i) {
    IntVector c(model.rank(), 0);
    c[i] = 1;
    gens.push_back(model.element(c));
  }
  std::set<IntVector> out;
  for (const auto& x : subgroup_elements(model, gens)) out.insert(mod(model.embed(x), model.ambient_modulus));
  return out;
}

// 2-part of |Z(G)| for the simply connected group, capped by the torsion 2^k.
std::uint64_t center_two_part(const LieTypeLabel& l, int k) {
  switch (l.family) {
    case Family::A: {
      std::uint64_t p = 1;
      for (int v = l.rank + 1; v % 2 == 0; v /= 2) p *= 2;
      return std::min<std::uint64_t>(p, pow2(k));
    }
    case Family::B:
    case Family::C: return 2;
    case Family::D: return 4;
    case Family::E: return l.rank == 7 ? 2 : 1;
    default: return 1;
  }
}

// Vectors y mod m with sum_j C(j, i) y_j = 0 for every i: the points fixed by
// each simple reflection on co-root coordinates.
std::uint64_t brute_fixed_count(const IntMatrix& cartan, Int m) {
  const int n = cartan.rows();
  IntVector y(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool fixed = true;
    for (int i = 0; i < n && fixed; ++i) {
      Int s = 0;
      for (int j = 0; j < n; ++j) s += cartan(j, i) * y[j];
      fixed = mod(s, m) == 0;
    }
    if (fixed) ++count;
    int pos = 0;
    while (pos < n && ++y[pos] == m) y[pos++] = 0;
    if (pos == n) return count;
  }
}

std::vector<ActionMap> weyl_actions(const TorusModel& model, const RootSystem& rs) {
  std::vector<ActionMap> out;
  for (const auto& g : generators(rs)) out.push_back(induce_action(model, g));
  return out;
}

}  // namespace

TEST_CASE("untwisted models") {
  CHECK(untwisted_model(dual(build(parse_label("A1"))), 3).orders == std::vector<Int>{8});
  CHECK(untwisted_model(dual(build(parse_label("B3"))), 2).orders == std::vector<Int>{4, 4, 4});
  const TorusModel e8 = untwisted_model(dual(build(parse_label("E8"))), 2);
  CHECK(e8.orders == std::vector<Int>(8, 4));
  CHECK(e8.order() == 65536);
  CHECK(e8.exponent() == 4);
  CHECK_THROWS(untwisted_model(dual(build(parse_label("A1"))), 1));
}

TEST_CASE("twisted models") {
  CHECK(twisted_model(build_twisted(parse_label("2D4")), 2).orders == std::vector<Int>{4, 4, 8});
  CHECK(twisted_model(build_twisted(parse_label("2A5")), 2).orders == std::vector<Int>{8, 8, 4});
  CHECK(twisted_model(build_twisted(parse_label("2D3")), 3).orders == std::vector<Int>{8, 16});
}

TEST_CASE("sigma_fixed") {
  const RootSystem a2 = build(parse_label("A2"));
  const DualSystem a2d = dual(a2);
  for (int k : {2, 3}) {
    // q = 1 (mod 2^k) exactly: the 2^(k+1)-torsion fixed by x -> qx is the 2^k-torsion.
    const TorusModel m = sigma_fixed(a2d, make_diagram_auto(a2, {0, 1}), pow2(k) + 1, k);
    CHECK(m.order() == static_cast<std::uint64_t>(pow2(2 * k)));
    CHECK(m.exponent() == pow2(k));
  }
  const TwistedSetup d3 = build_twisted(parse_label("2D3"));
  const TorusModel s = sigma_fixed(d3.ambient_dual, d3.rho, 5, 2);
  std::multiset<Int> orders(s.orders.begin(), s.orders.end());
  CHECK(orders == std::multiset<Int>{4, 8});
  CHECK(center_subgroup(parse_label("2A4"), 2).generators.empty());
}

TEST_CASE("sigma_fixed agrees with twisted_model") {
  for (const char* text : {"2A5", "2A7", "2D3", "2D4", "2D5", "2D6", "2E6"})
    for (int k : {2, 3}) {
      CAPTURE(text);
      CAPTURE(k);
      const TwistedSetup ts = build_twisted(parse_label(text));
      const TorusModel direct = twisted_model(ts, k);
      const TorusModel fixed = sigma_fixed(ts.ambient_dual, ts.rho, pow2(k) + 1, k);
      CHECK(direct.order() == fixed.order());
      std::multiset<Int> a(direct.orders.begin(), direct.orders.end());
      std::multiset<Int> b(fixed.orders.begin(), fixed.orders.end());
      CHECK(a == b);
      if (direct.order() <= 1'000'000) CHECK(embedded(direct) == embedded(fixed));
      const Int m = direct.ambient_modulus;
      for (const RootPerm& g : ts.w0_generators) {
        const IntMatrix am = coroot_matrix(ts.ambient, key_of(ts.ambient, g));
        for (const TorusModel* model : {&direct, &fixed}) {
          const ActionMap act = induce_action(*model, am, ActionKind::Weyl);
          for (int i = 0; i < model->rank(); ++i) {
            IntVector c(model->rank(), 0);
            c[i] = 1;
            const TorusElement x = model->element(c);
            CHECK(mod(model->embed(act.apply(*model, x)), m) == mod(am.apply(model->embed(x)), m));
          }
        }
      }
    }
}

TEST_CASE("center subgroups") {
  const CentralData c3 = center_subgroup(parse_label("C3"), 2);
  REQUIRE(c3.generators.size() == 1);
  CHECK(c3.generators[0].coords == IntVector{2, 0, 2});
  CHECK(c3.claimed_order == 2);
  for (int k : {2, 3, 5}) CHECK(center_subgroup(parse_label("E8"), k).generators.empty());
  const CentralData a3 = center_subgroup(parse_label("A3"), 2);
  REQUIRE(a3.generators.size() == 1);
  CHECK(a3.generators[0].coords == IntVector{1, 2, 3});
  CHECK(a3.claimed_order == 4);
  const TorusSetup d4 = make_torus_setup(parse_label("2D4"), 2);
  REQUIRE(d4.center.generators.size() == 1);
  CHECK(d4.center.generators[0].coords == IntVector{0, 0, 4});
}

TEST_CASE("quotients") {
  auto a1 = std::make_shared<const TorusModel>(untwisted_model(dual(build(parse_label("A1"))), 3));
  CHECK(quotient(a1, CentralData{}).orders == std::vector<Int>{8});
  CentralData z;
  z.generators = {a1->element({4})};
  z.claimed_order = 2;
  CHECK(quotient(a1, z).orders == std::vector<Int>{4});
  const TorusSetup d4 = make_torus_setup(parse_label("2D4"), 2);
  CHECK(d4.quotient->orders == std::vector<Int>{4, 4, 4});
  CHECK(d4.quotient->order() * 2 == d4.model->order());
}

TEST_CASE("field scalars and the A1 reflection") {
  const TorusModel b3 = untwisted_model(dual(build(parse_label("B3"))), 2);
  CHECK(induce_action(b3, FieldScalar{1}).is_identity(b3));
  CHECK(induce_action(b3, FieldScalar{3}).as_scalar(b3) == Int{3});
  CHECK_THROWS_AS(induce_action(b3, FieldScalar{2}), std::invalid_argument);
  const RootSystem a1 = build(parse_label("A1"));
  const TorusModel m = untwisted_model(dual(a1), 3);
  CHECK(induce_action(m, longest_element(a1)).as_scalar(m) == Int{7});
}

TEST_CASE("ActionMap rejects maps that are not well defined") {
  const TorusModel d4 = twisted_model(build_twisted(parse_label("2D4")), 2);
  IntMatrix bad = IntMatrix::identity(3);
  bad(2, 0) = 1;  // an order-4 generator cannot reach an odd multiple of an order-8 coordinate
  CHECK_THROWS_AS(ActionMap::make(d4, bad, ActionKind::Composite), std::logic_error);
  CHECK_THROWS(ActionMap::make(d4, scaled(IntMatrix::identity(3), 2), ActionKind::Composite));
}

TEST_CASE("induce_action is a homomorphism on W") {
  for (const char* text : {"A3", "B3", "C3", "D4", "G2", "F4", "A4"})
    for (int k : {2, 3}) {
      CAPTURE(text);
      const RootSystem rs = build(parse_label(text));
      const TorusModel model = untwisted_model(dual(rs), k);
      const WeylGroup group = enumerate(rs);
      REQUIRE(group.size() <= 10'000);
      const auto gens = generators(rs);
      for (std::size_t i = 0; i < group.size(); ++i) {
        const WeylElement w = group.element(i);
        const ActionMap aw = induce_action(model, w);
        for (int s = 0; s < rs.rank; ++s) {
          const BaseKey s_key = key_of(rs, simple_reflection_perm(rs, s));
          const WeylElement ws = materialize(rs, compose(perm_from_key(rs, group.keys()[i]), s_key, rs.rank));
          const ActionMap expected = compose(model, aw, induce_action(model, gens[s]));
          CHECK(induce_action(model, ws).matrix == expected.matrix);
        }
      }
    }
}

TEST_CASE("fixed points of W equal the center") {
  std::vector<LieTypeLabel> labels;
  for (int n = 1; n <= 6; ++n) labels.push_back(untwisted(Family::A, n));
  for (int n = 2; n <= 6; ++n) labels.push_back(untwisted(Family::B, n));
  for (int n = 3; n <= 6; ++n) labels.push_back(untwisted(Family::C, n));
  for (int n = 4; n <= 6; ++n) labels.push_back(untwisted(Family::D, n));
  for (const char* text : {"G2", "F4", "E6", "E7"}) labels.push_back(parse_label(text));
  for (const auto& label : labels)
    for (int k : {2, 3, 4}) {
      CAPTURE(label.str());
      CAPTURE(k);
      const RootSystem rs = build(label);
      const TorusModel model = untwisted_model(dual(rs), k);
      const auto actions = weyl_actions(model, rs);
      const auto fixed = fixed_subgroup(model, actions);
      const CentralData z = center_subgroup(label, k);
      CHECK(z.table_validated);
      CHECK(z.claimed_order == center_two_part(label, k));
      CHECK(subgroup_order(model, z.generators) == z.claimed_order);
      CHECK(subgroup_order(model, fixed) == z.claimed_order);
      for (const auto& g : z.generators)
        for (const auto& a : actions) CHECK(a.apply(model, g) == g);
      if (std::pow(static_cast<double>(pow2(k)), rs.rank) <= 1e6)
        CHECK(brute_fixed_count(rs.cartan, pow2(k)) == z.claimed_order);
    }
}
