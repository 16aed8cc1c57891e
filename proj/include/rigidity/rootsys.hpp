#pragma once

#include <map>
#include <vector>

#include "json.hpp"

#include "rigidity/label.hpp"
#include "rigidity/linalg.hpp"

namespace rigidity {

// Node indices are 0-based throughout the C++ API; Bourbaki node i is index i-1.
// Serialized outputs use 1-based node numbers.
struct RootSystem {
  LieTypeLabel label;
  int rank = 0;
  IntMatrix cartan;                 // cartan(i, j) = <alpha_j, alpha_i^vee>
  std::vector<Int> simple_length_sq;  // short simple roots have squared length 2
  std::vector<IntVector> roots;     // simple-root coordinates, lexicographically sorted
  std::vector<Int> length_sq;       // parallel to roots
  std::vector<IntVector> coroots;   // parallel to roots, simple co-root coordinates
  std::vector<int> simple_index;    // root index of alpha_i

  int num_roots() const { return static_cast<int>(roots.size()); }
  // Root index of v, or -1.
  int index_of(const IntVector& v) const;
  bool is_positive(int root) const;
  int negative_of(int root) const { return negated_[root]; }
  // Symmetric bilinear form on simple-root coordinates.
  Int inner(const IntVector& x, const IntVector& y) const;

  friend RootSystem build_from_cartan(const LieTypeLabel&, const IntMatrix&);

 private:
  std::map<IntVector, int> index_;
  std::vector<int> negated_;
};

// The co-root system in the simple co-root basis.
struct DualSystem {
  RootSystem system;
  std::vector<int> to_dual;  // primal root index -> index of its co-root in `system`
};

// Bourbaki-numbered Cartan matrix. Accepts labels outside the admissible
// list (C2, D3, B1) for internal use by folding and duality.
IntMatrix bourbaki_cartan(Family family, int rank);

// Throws std::invalid_argument on an inadmissible or twisted label.
RootSystem build(const LieTypeLabel& label);
// Closure of the base under simple reflections for an arbitrary finite-type Cartan matrix.
RootSystem build_from_cartan(const LieTypeLabel& label, const IntMatrix& cartan);

DualSystem dual(const RootSystem& rs);
LieTypeLabel dual_label(const LieTypeLabel& label);

// v - <v, alpha_i^vee> alpha_i.
IntVector reflect(const RootSystem& rs, int node, const IntVector& v);
// Co-root coordinates of a root given in simple-root coordinates.
IntVector coroot(const RootSystem& rs, const IntVector& root);

struct Support {
  std::vector<int> nodes;
  bool connected = false;
};
Support support(const RootSystem& rs, const IntVector& root);

// True iff v is congruent to some element of the dual system modulo m.
// Requires m >= 3.
bool is_root_mod(const DualSystem& ds, const IntVector& v, Int m);

nlohmann::ordered_json to_json(const RootSystem& rs);

}  // namespace rigidity
