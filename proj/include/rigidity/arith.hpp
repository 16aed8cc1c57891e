#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "rigidity/label.hpp"

namespace rigidity {

inline constexpr int kMaxFieldExponent = 20;

// Exponent of the largest power of two dividing n. Throws on n == 0.
int val2(std::uint64_t n);
int val2(const mpz_class& n);

// val2(q0^(2^l) - 1) computed on big integers. Requires q0 = 1 (mod 4),
// 0 <= l <= kMaxFieldExponent.
int derive_k(std::int64_t q0, int l);

// The computed exponent alongside the closed form l + 2. The closed form only
// holds when (q0 - 1)_2 = 4; disagreement is reported, never absorbed.
struct KDerivation {
  int k = 0;
  int closed_form = 0;
  bool agrees = true;
};
KDerivation derive_k_checked(std::int64_t q0, int l);

bool is_prime(std::int64_t n);

struct SetupParams {
  std::int64_t q0 = 0;
  int l = 0;
  int k = 0;
  LieTypeLabel label;
  KDerivation derivation;

  // Validates q0 prime, q0 = 1 (mod 4), label admissible; derives k.
  static SetupParams make(std::int64_t q0, int l, const LieTypeLabel& label);
};

}  // namespace rigidity
