#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rigidity/arith.hpp"
#include "rigidity/torus.hpp"

namespace rigidity {

enum class Outcome { NoNonInnerRigid, ExceptionalA1, Exceptional2Dn, OutOfHypotheses, Anomalous };
std::string to_string(Outcome outcome);

inline constexpr std::uint64_t kDefaultSamples = 100'000;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2b17ULL;

// Kernel of the group generated by `generators` (maps on target.parent, or on
// target itself when it is not a quotient) acting on `target`.
struct KernelResult {
  std::uint64_t group_order = 1;
  std::uint64_t kernel_order = 1;
  std::vector<IntMatrix> kernel;  // sorted by rows, identity included
};
KernelResult kernel_on(const TorusModel& target, const std::vector<ActionMap>& generators,
                       std::size_t cap = kDefaultWeylCap);

struct ScanOptions {
  std::size_t cap = kDefaultWeylCap;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  bool exhaustive_chain = false;  // stream W(E8) through its parabolic chain
};

// A nontrivial element g of Gamma_G * W0 acting on A/Z(F) as a scalar.
struct ScalarElement {
  BaseKey key = 0;         // ambient isometry, graph part included
  int graph = 0;           // index into TorusSetup::graph_autos
  std::vector<int> word;   // reduced word of the Weyl part
  Int scalar = 1;          // modulo exp(A/Z(F))
};

// Key of w o gamma: (w o gamma)(alpha_j) = w(alpha_{gamma(j)}).
BaseKey compose_graph(BaseKey w, const DiagramAuto& gamma, int rank);

struct GroupScan {
  std::uint64_t w0_order = 0;
  std::uint64_t scanned = 0;  // W0 elements visited
  bool exhaustive = true;
  std::uint64_t w0_kernel_order = 1;        // W0 elements trivial on A/Z(F), identity included
  std::vector<IntMatrix> extended_kernel;   // distinct maps of A in <W0, Gamma_G, field scalars>, trivial on A/Z(F)
  std::vector<ScalarElement> scalars;
  Int ambient_exponent = 1;
  Int quotient_exponent = 1;
};
GroupScan scan_group(const TorusSetup& setup, const ScanOptions& options = {});

struct FaithfulReport {
  bool w0_faithful = false;
  bool extended_faithful = false;
  GroupScan scan;
};
FaithfulReport check_faithful(const LieTypeLabel& label, int k, const ScanOptions& options = {});

struct ScalarReport {
  std::vector<ScalarElement> elements;
  bool clause_asserted = false;  // false for the exceptional families
  std::size_t counterexamples = 0;
  Int modulus = 1;               // the clause is read modulo exp(A/Z(F))
};
ScalarReport scalar_elements(const TorusSetup& setup, const GroupScan& scan);
ScalarReport scalar_elements(const LieTypeLabel& label, int k, const ScanOptions& options = {});

struct TraceEntry {
  int node = 0;       // 0-based, ambient or hat
  IntVector z;        // central element, model coordinates
  Int r = 1;
  bool excluded = false;
  std::string reason;
};
struct CaseTrace {
  LieTypeLabel label;
  int k = 2;
  std::string basis;  // "ambient" or "hat"
  std::vector<TraceEntry> entries;
  std::size_t survivors = 0;
};
CaseTrace case_trace(const LieTypeLabel& label, int k);

struct WitnessRecord {
  ActionMap map;  // on A
  Int exponent = 1;
  bool trivial_on_quotient = false;
  bool nontrivial_on_ambient = false;
  int order = 0;
  bool realized_by_w0 = true;
  std::uint64_t kernel_contribution = 0;
  bool verified() const;
};
// Scalar r on A; r defaults to 1 + 2^(k-1). Throws for k < 3.
WitnessRecord witness_A1(int k, std::optional<Int> r = std::nullopt);
// x -> q x on the mixed coordinate; q defaults to 2^k + 1.
WitnessRecord witness_2Dn(int n, int k, std::optional<Int> q = std::nullopt);

struct Verdict {
  LieTypeLabel label;
  int k = 2;
  Outcome outcome = Outcome::Anomalous;
  std::uint64_t kernel_order = 1;
  std::optional<ActionMap> witness;
  std::string witness_kind;  // "", "field-scalar", "q-power"
  bool exhaustive = true;
  nlohmann::ordered_json evidence;
};

Outcome predicted_outcome(const LieTypeLabel& label, int k);
Verdict classify(const LieTypeLabel& label, int k, const ScanOptions& options = {});
Verdict classify(const SetupParams& params, const ScanOptions& options = {});

nlohmann::ordered_json to_json(const ScalarElement& s, const TorusSetup& setup);
nlohmann::ordered_json to_json(const CaseTrace& trace);
nlohmann::ordered_json to_json(const WitnessRecord& w);
nlohmann::ordered_json to_json(const Verdict& v);

}  // namespace rigidity
