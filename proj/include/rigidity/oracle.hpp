#pragma once

#include <cstdint>
#include <vector>

#include "rigidity/torus.hpp"

// Slow, independent re-derivations used to cross-check the main path.
// Only RootSystem::rank, cartan and roots are read; everything else is rebuilt here.
namespace rigidity::oracle {

inline constexpr std::size_t kWeylGuard = 10'000;
inline constexpr std::uint64_t kTorusGuard = 10'000'000;

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of Weyl group elements acting trivially on (Z/2^k)^n / <z>, identity
// included. z holds ambient co-root coordinates modulo 2^k.
std::uint64_t brute_kernel_perm(const RootSystem& rs, int k, const std::vector<IntVector>& z,
                                std::size_t guard = kWeylGuard);

struct SigmaScan {
  std::uint64_t order = 0;
  std::vector<IntVector> elements;  // ambient coordinates modulo 2^(k+1), sorted
};
SigmaScan brute_sigma_fixed(const RootSystem& ambient, const std::vector<int>& rho_nodes, Int q_mod, int k,
                            std::uint64_t guard = kTorusGuard);

struct ScalarHit {
  std::vector<IntVector> matrix;  // action on (Z/2^k)^n, entries reduced
  Int scalar = 1;                 // modulo exp of the quotient
  bool identity = false;          // the group element itself is trivial
  auto operator<=>(const ScalarHit&) const = default;
};
// Every element of W (or W x graph automorphisms) acting on the quotient by <z>
// as a scalar, found by testing each odd r. Sorted.
std::vector<ScalarHit> brute_scalar_search(const RootSystem& rs, int k, const std::vector<IntVector>& z,
                                           bool with_graph, std::size_t guard = kWeylGuard);
std::vector<ScalarHit> brute_scalar_search(const LieTypeLabel& label, int k, bool with_graph);

}  // namespace rigidity::oracle
