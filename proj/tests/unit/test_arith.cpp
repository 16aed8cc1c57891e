#include "doctest.h"

#include <stdexcept>

#include "rigidity/arith.hpp"

using namespace rigidity;

TEST_CASE("val2 on small integers") {
  CHECK(val2(std::uint64_t{16}) == 4);
  CHECK(val2(std::uint64_t{1}) == 0);
  CHECK(val2(std::uint64_t{12}) == 2);
  CHECK_THROWS_AS(val2(std::uint64_t{0}), std::domain_error);
  CHECK(val2(mpz_class("340282366920938463463374607431768211456")) == 128);
}

TEST_CASE("derive_k matches the closed form when (q0-1)_2 = 4") {
  CHECK(derive_k(5, 0) == 2);
  CHECK(derive_k(5, 1) == 3);
  for (std::int64_t q0 : {5, 13, 29, 37, 53, 61})
    for (int l = 0; l <= 10; ++l) {
      const auto d = derive_k_checked(q0, l);
      CHECK(d.k == l + 2);
      CHECK(d.agrees);
    }
}

TEST_CASE("derive_k lifts by one per squaring") {
  for (std::int64_t q0 : {5, 13, 17, 41, 97, 113})
    for (int l = 1; l <= kMaxFieldExponent; ++l) CHECK(derive_k(q0, l) == derive_k(q0, l - 1) + 1);
}

TEST_CASE("q0 = 17 disagrees with the closed form") {
  const auto d = derive_k_checked(17, 0);
  CHECK(d.k == 4);
  CHECK(d.closed_form == 2);
  CHECK_FALSE(d.agrees);
}

TEST_CASE("derive_k rejects inputs outside its domain") {
  CHECK_THROWS(derive_k(7, 0));
  CHECK_THROWS(derive_k(5, -1));
  CHECK_THROWS(derive_k(5, kMaxFieldExponent + 1));
}

TEST_CASE("SetupParams validates primality and admissibility") {
  const auto p = SetupParams::make(13, 0, parse_label("C3"));
  CHECK(p.k == 2);
  CHECK_THROWS(SetupParams::make(21, 0, parse_label("A1")));
  CHECK_THROWS(SetupParams::make(5, 0, parse_label("C2")));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
}
