#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigidity/rootsys.hpp"

namespace rigidity {

inline constexpr std::size_t kDefaultWeylCap = 5'000'000;

// Full permutation of root indices.
using RootPerm = std::vector<std::uint8_t>;
// Images of the simple roots, one byte per node, node 0 in the most
// significant used byte. Determines the isometry because the base spans.
using BaseKey = std::uint64_t;

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t cap)
      : std::runtime_error("group order exceeds cap " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

struct WeylElement {
  IntMatrix matrix;      // action on simple co-root coordinates
  std::vector<int> perm; // root index -> root index
  std::vector<int> word; // simple reflections, applied right to left; empty outside W
};

BaseKey pack_key(const std::vector<int>& images);
std::vector<int> unpack_key(BaseKey key, int rank);
BaseKey identity_key(const RootSystem& rs);
// Key of left * w where w has key `right`.
BaseKey compose(const RootPerm& left, BaseKey right, int rank);

RootPerm simple_reflection_perm(const RootSystem& rs, int node);
RootPerm perm_from_key(const RootSystem& rs, BaseKey key);
RootPerm compose_perms(const RootPerm& left, const RootPerm& right);
RootPerm inverse_perm(const RootPerm& p);
BaseKey key_of(const RootSystem& rs, const RootPerm& p);
// Matrix on co-root coordinates: column j is the co-root of w(alpha_j).
IntMatrix coroot_matrix(const RootSystem& rs, BaseKey key);
// Reduced word via right descents; only meaningful for elements of W.
std::vector<int> reduced_word(const RootSystem& rs, BaseKey key);
WeylElement materialize(const RootSystem& rs, BaseKey key, bool in_weyl_group = true);

// Elements in breadth-first layers, each layer sorted by key.
class WeylGroup {
 public:
  WeylGroup(RootSystem system, std::vector<BaseKey> keys, std::vector<std::size_t> layer_offsets);

  const RootSystem& system() const { return system_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<BaseKey>& keys() const { return keys_; }
  const std::vector<std::size_t>& layer_offsets() const { return offsets_; }
  WeylElement element(std::size_t i) const { return materialize(system_, keys_[i]); }

 private:
  RootSystem system_;
  std::vector<BaseKey> keys_;
  std::vector<std::size_t> offsets_;
};

std::vector<WeylElement> generators(const RootSystem& rs);

// Whole Weyl group; throws CapExceeded past `cap`. Honors RIGIDITY_CACHE_DIR.
WeylGroup enumerate(const RootSystem& rs, std::size_t cap = kDefaultWeylCap);
// Subgroup generated by involutive root permutations forming a Coxeter
// generating set (e.g. folded reflections).
WeylGroup enumerate_subgroup(const RootSystem& rs, const std::vector<RootPerm>& generators,
                             std::size_t cap = kDefaultWeylCap);

WeylElement longest_element(const RootSystem& rs);

std::uint64_t weyl_order_closed_form(const LieTypeLabel& label);

// W = U_n * U_{n-1} * ... * U_1 where U_i are minimal coset representatives of
// W(nodes 0..i-1) modulo W(nodes 0..i-2). Gives uniform sampling and a
// storage-free exhaustive stream for groups too large to enumerate.
class ParabolicChain {
 public:
  explicit ParabolicChain(const RootSystem& rs);

  std::uint64_t order() const;
  BaseKey sample(std::mt19937_64& rng) const;

  // Calls visit(const std::uint8_t* base_images) for every element once.
  template <typename Visit>
  void for_each(Visit&& visit) const;

  const std::vector<std::vector<RootPerm>>& levels() const { return levels_; }

 private:
  RootSystem system_;
  std::vector<std::vector<RootPerm>> levels_;  // levels_[i]: representatives for node i
};

template <typename Visit>
void ParabolicChain::for_each(Visit&& visit) const {
  const int n = system_.rank;
  const int roots = system_.num_roots();
  std::vector<RootPerm> partial(n + 1, RootPerm(roots));
  for (int r = 0; r < roots; ++r) partial[0][r] = static_cast<std::uint8_t>(r);
  std::vector<std::uint8_t> base(n);
  std::vector<std::uint8_t> simple(n);
  for (int j = 0; j < n; ++j) simple[j] = static_cast<std::uint8_t>(system_.simple_index[j]);
  // partial[d] = U_{d-1} ... U_0 composition prefix (rightmost factors first).
  auto recurse = [&](auto&& self, int depth) -> void {
    const auto& reps = levels_[depth];
    if (depth == n - 1) {
      const RootPerm& inner = partial[depth];
      for (const RootPerm& u : reps) {
        for (int j = 0; j < n; ++j) base[j] = u[inner[simple[j]]];
        visit(base.data());
      }
      return;
    }
    for (const RootPerm& u : reps) {
      const RootPerm& inner = partial[depth];
      RootPerm& out = partial[depth + 1];
      for (int r = 0; r < roots; ++r) out[r] = u[inner[r]];
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
}

}  // namespace rigidity
