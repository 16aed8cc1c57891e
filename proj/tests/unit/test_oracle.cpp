#include "doctest.h"

#include "rigidity/oracle.hpp"
#include "rigidity/report.hpp"

using namespace rigidity;

TEST_CASE("brute_kernel_perm on rank one") {
  const RootSystem a1 = build(parse_label("A1"));
  CHECK(oracle::brute_kernel_perm(a1, 2, {}) == 1);
  CHECK(oracle::brute_kernel_perm(a1, 2, {{2}}) == 2);
  CHECK(oracle::brute_kernel_perm(a1, 3, {{4}}) == 1);
}

TEST_CASE("brute_kernel_perm respects its guard") {
  CHECK_THROWS_AS(oracle::brute_kernel_perm(build(parse_label("E6")), 2, {}), oracle::GuardExceeded);
}

TEST_CASE("brute_sigma_fixed") {
  const TwistedSetup d3 = build_twisted(parse_label("2D3"));
  const auto scan = oracle::brute_sigma_fixed(d3.ambient, d3.rho.node_perm, 5, 2);
  CHECK(scan.order == 32);
  CHECK(scan.elements.size() == 32);
  const TwistedSetup a4 = build_twisted(parse_label("2A4"));
  const auto a4_scan = oracle::brute_sigma_fixed(a4.ambient, a4.rho.node_perm, 5, 2);
  CHECK(a4_scan.order == twisted_model(a4, 2).order());
}

TEST_CASE("brute_scalar_search") {
  const auto b3 = oracle::brute_scalar_search(parse_label("B3"), 2, false);
  std::size_t nontrivial = 0;
  for (const auto& h : b3)
    if (!h.identity) {
      ++nontrivial;
      CHECK(h.scalar == 3);
    }
  CHECK(nontrivial == 1);
  const auto a2 = oracle::brute_scalar_search(parse_label("A2"), 2, true);
  nontrivial = 0;
  for (const auto& h : a2) nontrivial += h.identity ? 0 : 1;
  CHECK(nontrivial == 1);
}

TEST_CASE("oracles agree with the main path") {
  VerifyOptions opts;
  opts.with_oracle = true;
  for (const char* text : {"A1", "A2", "A3", "B3", "C3", "D4", "G2", "2D3", "2A4", "2D4"}) {
    CAPTURE(text);
    const int k = std::string(text) == "A1" ? 3 : 2;
    CHECK(run_verify(parse_label(text), k, opts).oracle == "agree");
  }
}
