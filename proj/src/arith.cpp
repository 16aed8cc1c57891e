#include "rigidity/arith.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace rigidity {

int val2(std::uint64_t n) {
  if (n == 0) throw std::domain_error("val2 is undefined at 0");
  return std::countr_zero(n);
}

int val2(const mpz_class& n) {
  if (n == 0) throw std::domain_error("val2 is undefined at 0");
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

namespace {

void require_hypotheses(std::int64_t q0, int l) {
  if (q0 <= 1 || q0 % 4 != 1)
    throw std::domain_error("q0 must satisfy q0 = 1 (mod 4), got " + std::to_string(q0));
  if (l < 0 || l > kMaxFieldExponent)
    throw std::domain_error("l must lie in [0, " + std::to_string(kMaxFieldExponent) + "]");
}

}  // namespace

int derive_k(std::int64_t q0, int l) {
  require_hypotheses(q0, l);
  mpz_class q = q0;
  for (int i = 0; i < l; ++i) q *= q;
  return val2(mpz_class(q - 1));
}

KDerivation derive_k_checked(std::int64_t q0, int l) {
  KDerivation d;
  d.k = derive_k(q0, l);
  d.closed_form = l + 2;
  d.agrees = d.k == d.closed_form;
  return d;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(mpz_class(static_cast<long>(n)).get_mpz_t(), 40) > 0;
}

SetupParams SetupParams::make(std::int64_t q0, int l, const LieTypeLabel& label) {
  if (!is_prime(q0)) throw std::domain_error("q0 must be prime, got " + std::to_string(q0));
  if (!is_admissible(label)) throw std::invalid_argument("inadmissible label " + label.str());
  SetupParams p;
  p.q0 = q0;
  p.l = l;
  p.label = canonical(label);
  p.derivation = derive_k_checked(q0, l);
  p.k = p.derivation.k;
  return p;
}

}  // namespace rigidity
