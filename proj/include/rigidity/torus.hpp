#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/twist.hpp"
#include "rigidity/weyl.hpp"

namespace rigidity {

enum class TorusBasis { Ambient, Hat, Quotient };
std::string to_string(TorusBasis basis);

// Coordinates are exponents of the model generators, reduced per coordinate.
struct TorusElement {
  IntVector coords;
  bool operator==(const TorusElement&) const = default;
};

// A finite abelian 2-group presented as a direct sum of cyclic groups.
// Base models embed into ambient co-root coordinates modulo ambient_modulus:
// generator j is divisors[j] * frame[:, frame_columns[j]].
// Quotient models carry transform (parent coords -> own coords) and lift.
struct TorusModel {
  std::vector<Int> orders;
  TorusBasis basis = TorusBasis::Ambient;

  Int ambient_modulus = 0;
  IntMatrix frame;
  IntMatrix frame_inverse;
  std::vector<int> frame_columns;
  std::vector<Int> divisors;

  std::shared_ptr<const TorusModel> parent;
  IntMatrix transform;
  IntMatrix lift;

  int rank() const { return static_cast<int>(orders.size()); }
  std::uint64_t order() const;
  Int exponent() const;
  bool is_quotient() const { return parent != nullptr; }

  TorusElement element(const IntVector& coords) const;
  TorusElement zero() const { return element(IntVector(orders.size(), 0)); }
  IntVector embed(const TorusElement& x) const;
  // Coordinates of an ambient vector lying in the model, or nullopt.
  std::optional<TorusElement> read(const IntVector& ambient) const;
  TorusElement project(const TorusElement& parent_element) const;
};

enum class ActionKind { Weyl, Graph, FieldScalar, Composite };
std::string to_string(ActionKind kind);

// An endomorphism of a TorusModel. Construction enforces well-definedness
// (matrix(i, j) * orders[j] = 0 mod orders[i]) and invertibility.
struct ActionMap {
  IntMatrix matrix;
  ActionKind kind = ActionKind::Composite;
  Int scalar = 0;  // set for FieldScalar

  static ActionMap make(const TorusModel& model, IntMatrix matrix, ActionKind kind, Int scalar = 0);
  bool is_identity(const TorusModel& model) const;
  // The scalar s (mod model exponent) with matrix = s * I, if any.
  std::optional<Int> as_scalar(const TorusModel& model) const;
  TorusElement apply(const TorusModel& model, const TorusElement& x) const;
};

ActionMap compose(const TorusModel& model, const ActionMap& left, const ActionMap& right);

struct CentralData {
  std::vector<TorusElement> generators;
  std::uint64_t claimed_order = 1;
  std::string reading;          // which generator formula validated
  bool table_validated = true;  // false when the full fixed subgroup was substituted
};

TorusModel untwisted_model(const DualSystem& ds, int k);
TorusModel twisted_model(const TwistedSetup& ts, int k);
TorusModel sigma_fixed(const DualSystem& ds, const DiagramAuto& rho, Int q_mod, int k);
TorusModel quotient(std::shared_ptr<const TorusModel> model, const CentralData& z);

struct FieldScalar {
  Int r = 1;
};
ActionMap induce_action(const TorusModel& model, const IntMatrix& ambient_matrix, ActionKind kind);
ActionMap induce_action(const TorusModel& model, const WeylElement& w);
ActionMap induce_action(const TorusModel& model, const DiagramAuto& a);
ActionMap induce_action(const TorusModel& model, FieldScalar f);
ActionMap push_forward(const TorusModel& quotient_model, const ActionMap& parent_action);

std::uint64_t subgroup_order(const TorusModel& model, const std::vector<TorusElement>& generators);
std::vector<TorusElement> subgroup_elements(const TorusModel& model, const std::vector<TorusElement>& generators);
// Generators of the subgroup fixed by every map.
std::vector<TorusElement> fixed_subgroup(const TorusModel& model, const std::vector<ActionMap>& maps);

// Everything needed to study A and A/Z(F) for one (label, k).
struct TorusSetup {
  LieTypeLabel label;
  int k = 2;
  Int q_mod = 5;  // representative of q modulo 2^(k+1)
  RootSystem ambient;
  DualSystem ambient_dual;
  std::optional<TwistedSetup> twisted;
  std::shared_ptr<const TorusModel> model;
  CentralData center;
  std::shared_ptr<const TorusModel> quotient;
  std::vector<RootPerm> w0_generators;   // involutive ambient isometries
  std::vector<DiagramAuto> graph_autos;  // identity first
};

TorusSetup make_torus_setup(const LieTypeLabel& label, int k);
CentralData center_subgroup(const LieTypeLabel& label, int k);

nlohmann::ordered_json to_json(const TorusModel& model);

}  // namespace rigidity
