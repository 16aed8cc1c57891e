#pragma once

#include <vector>

#include "rigidity/rootsys.hpp"
#include "rigidity/weyl.hpp"

namespace rigidity {

struct DiagramAuto {
  std::vector<int> node_perm;  // node i -> node_perm[i]
  IntMatrix matrix;            // on simple co-root coordinates
  RootPerm root_perm;
  int order = 1;
};

DiagramAuto make_diagram_auto(const RootSystem& rs, const std::vector<int>& node_perm);
// Every Cartan-preserving permutation of the base, identity first, then by node_perm.
std::vector<DiagramAuto> diagram_autos(const RootSystem& rs);

struct RationalMatrix {
  IntMatrix numerator;
  Int denominator = 1;
};

struct TwistedSetup {
  LieTypeLabel label;  // canonical order-2 label
  RootSystem ambient;
  DualSystem ambient_dual;
  DiagramAuto rho;
  RationalMatrix v0_projection;            // onto the rho-fixed space, simple-root coordinates
  std::vector<std::vector<int>> hat_base;  // rho-orbits on the base, in folded Bourbaki order
  RootSystem hat_system;
  DualSystem hat_dual;
  std::vector<IntVector> hat_coroots;      // ambient simple co-root coordinates
  std::vector<RootPerm> w0_generators;     // ambient isometry of each folded reflection
  std::vector<std::vector<int>> w0_words;  // the same, as simple-reflection words
};

// Accepts 2A n>=2, 2D n>=3, 2E6. 2A3 is canonicalized to 2D3.
TwistedSetup build_twisted(const LieTypeLabel& label);

nlohmann::ordered_json to_json(const TwistedSetup& ts);

}  // namespace rigidity
