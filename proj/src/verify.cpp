#include "rigidity/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rigidity {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::NoNonInnerRigid: return "NoNonInnerRigid";
    case Outcome::ExceptionalA1: return "ExceptionalA1";
    case Outcome::Exceptional2Dn: return "Exceptional2Dn";
    case Outcome::OutOfHypotheses: return "OutOfHypotheses";
    case Outcome::Anomalous: return "Anomalous";
  }
  return "Anomalous";
}

BaseKey compose_graph(BaseKey w, const DiagramAuto& gamma, int rank) {
  const std::vector<int> images = unpack_key(w, rank);
  std::vector<int> out(rank);
  for (int j = 0; j < rank; ++j) out[j] = images[gamma.node_perm[j]];
  return pack_key(out);
}

namespace {

Int pow2(int e) { return Int{1} << e; }

using MatrixKey = std::vector<IntVector>;

IntMatrix identity_on(const TorusModel& model) {
  IntMatrix id = IntMatrix::identity(model.rank());
  for (int i = 0; i < model.rank(); ++i) id(i, i) = mod(1, model.orders[i]);
  return id;
}

bool matrix_less(const IntMatrix& a, const IntMatrix& b) { return a.to_rows() < b.to_rows(); }

bool is_exceptional_family(const LieTypeLabel& label) {
  return (!label.twisted() && label.family == Family::A && label.rank == 1) ||
         (label.twisted() && label.family == Family::D);
}

BaseKey pack_bytes(const std::uint8_t* images, int rank) {
  BaseKey key = 0;
  for (int j = 0; j < rank; ++j) key = (key << 8) | images[j];
  return key;
}

class Scanner {
 public:
  explicit Scanner(const TorusSetup& setup)
      : setup_(setup),
        a_(*setup.model),
        q_(*setup.quotient),
        identity_(identity_key(setup.ambient)) {
    out_.ambient_exponent = a_.exponent();
    out_.quotient_exponent = q_.exponent();
  }

  void visit(BaseKey key) {
    ++out_.scanned;
    const int n = setup_.ambient.rank;
    for (std::size_t g = 0; g < setup_.graph_autos.size(); ++g) {
      const BaseKey full = g == 0 ? key : compose_graph(key, setup_.graph_autos[g], n);
      const ActionMap on_a = induce_action(a_, coroot_matrix(setup_.ambient, full), ActionKind::Composite);
      const ActionMap on_q = push_forward(q_, on_a);
      const auto s = on_q.as_scalar(q_);
      if (!s) continue;
      if (g == 0 && *s == mod(1, out_.quotient_exponent)) w0_kernel_.insert(key);
      if (!(g == 0 && key == identity_)) scalar_hits_.insert({static_cast<int>(g), key, *s});
      // Field scalars r = 1 (mod 4) modulo exp(A) with r * s = 1 on A/Z(F).
      for (Int r = 1; r <= out_.ambient_exponent; r += 4) {
        if (mod(r * *s - 1, out_.quotient_exponent) != 0) continue;
        kernel_.insert(ActionMap::make(a_, scaled(on_a.matrix, r), ActionKind::Composite).matrix.to_rows());
      }
    }
  }

  GroupScan finish(std::uint64_t w0_order, bool exhaustive) {
    out_.w0_order = w0_order;
    out_.exhaustive = exhaustive;
    out_.w0_kernel_order = w0_kernel_.size();
    for (const MatrixKey& rows : kernel_) out_.extended_kernel.push_back(IntMatrix::from_rows(rows));
    for (const auto& [graph, key, s] : scalar_hits_) {
      ScalarElement e;
      e.key = key;
      e.graph = graph;
      e.word = reduced_word(setup_.ambient, key);
      e.scalar = s;
      out_.scalars.push_back(std::move(e));
    }
    return std::move(out_);
  }

 private:
  const TorusSetup& setup_;
  const TorusModel& a_;
  const TorusModel& q_;
  BaseKey identity_;
  std::set<BaseKey> w0_kernel_;
  std::set<MatrixKey> kernel_;
  std::set<std::tuple<int, BaseKey, Int>> scalar_hits_;
  GroupScan out_;
};

}  // namespace

KernelResult kernel_on(const TorusModel& target, const std::vector<ActionMap>& generators, std::size_t cap) {
  const TorusModel& source = target.is_quotient() ? *target.parent : target;
  std::set<MatrixKey> seen;
  std::deque<IntMatrix> queue;
  const IntMatrix id = identity_on(source);
  seen.insert(id.to_rows());
  queue.push_back(id);
  std::vector<IntMatrix> elements;
  while (!queue.empty()) {
    IntMatrix m = std::move(queue.front());
    queue.pop_front();
    for (const ActionMap& g : generators) {
      const ActionMap next = ActionMap::make(source, g.matrix * m, ActionKind::Composite);
      if (seen.insert(next.matrix.to_rows()).second) {
        if (seen.size() > cap) throw CapExceeded(cap);
        queue.push_back(next.matrix);
      }
    }
    elements.push_back(std::move(m));
  }
  KernelResult result;
  result.group_order = elements.size();
  for (const IntMatrix& m : elements) {
    const bool trivial = target.is_quotient()
                             ? push_forward(target, ActionMap::make(source, m, ActionKind::Composite)).is_identity(target)
                             : m == id;
    if (trivial) result.kernel.push_back(m);
  }
  std::sort(result.kernel.begin(), result.kernel.end(), matrix_less);
  result.kernel_order = result.kernel.size();
  return result;
}

GroupScan scan_group(const TorusSetup& setup, const ScanOptions& options) {
  Scanner scanner(setup);
  const RootSystem& rs = setup.ambient;
  if (setup.twisted) {
    const WeylGroup w0 = enumerate_subgroup(rs, setup.w0_generators, options.cap);
    for (BaseKey key : w0.keys()) scanner.visit(key);
    return scanner.finish(w0.size(), true);
  }
  if (weyl_order_closed_form(setup.label) <= options.cap) {
    const WeylGroup w = enumerate(rs, options.cap);
    for (BaseKey key : w.keys()) scanner.visit(key);
    return scanner.finish(w.size(), true);
  }
  const ParabolicChain chain(rs);
  if (options.exhaustive_chain) {
    chain.for_each([&](const std::uint8_t* images) { scanner.visit(pack_bytes(images, rs.rank)); });
    return scanner.finish(chain.order(), true);
  }
  std::mt19937_64 rng(options.seed);
  scanner.visit(identity_key(rs));
  for (std::uint64_t i = 0; i < options.samples; ++i) scanner.visit(chain.sample(rng));
  return scanner.finish(chain.order(), false);
}

FaithfulReport check_faithful(const LieTypeLabel& label, int k, const ScanOptions& options) {
  const TorusSetup setup = make_torus_setup(label, k);
  FaithfulReport report;
  report.scan = scan_group(setup, options);
  report.w0_faithful = report.scan.w0_kernel_order == 1;
  report.extended_faithful = report.scan.extended_kernel.size() == 1;
  return report;
}

ScalarReport scalar_elements(const TorusSetup& setup, const GroupScan& scan) {
  ScalarReport report;
  report.elements = scan.scalars;
  report.modulus = scan.quotient_exponent;
  report.clause_asserted = !is_exceptional_family(setup.label);
  if (report.clause_asserted)
    for (const ScalarElement& e : report.elements)
      if (mod(e.scalar + 1, report.modulus) != 0) ++report.counterexamples;
  return report;
}

ScalarReport scalar_elements(const LieTypeLabel& label, int k, const ScanOptions& options) {
  const TorusSetup setup = make_torus_setup(label, k);
  return scalar_elements(setup, scan_group(setup, options));
}

CaseTrace case_trace(const LieTypeLabel& requested, int k) {
  const TorusSetup setup = make_torus_setup(requested, k);
  const TorusModel& a = *setup.model;
  CaseTrace trace;
  trace.label = setup.label;
  trace.k = k;
  std::vector<TorusElement> central = subgroup_elements(a, setup.center.generators);
  central.erase(central.begin());  // drop the identity, which sorts first

  if (!setup.twisted) {
    trace.basis = "ambient";
    const Int m = pow2(k);
    for (int i = 0; i < a.rank(); ++i)
      for (const TorusElement& z : central)
        for (Int r : {Int{1}, m - 1}) {
          IntVector v = z.coords;
          v[i] += r;
          TraceEntry e{i, z.coords, r, false, ""};
          if (!is_root_mod(setup.ambient_dual, mod(v, m), m)) {
            e.excluded = true;
            e.reason = "not a co-root modulo 2^k";
          } else {
            e.reason = "co-root modulo 2^k";
          }
          trace.entries.push_back(std::move(e));
        }
  } else {
    // Generator j is read as lambda_j times the j-th hat co-root at modulus 2^(k+1).
    trace.basis = "hat";
    const Int m = pow2(k + 1);
    std::vector<Int> lambda;
    for (Int o : a.orders) lambda.push_back(m / o);
    const int hat_rank = setup.twisted->hat_system.rank;
    if (a.rank() == hat_rank)
      for (int i = 0; i < a.rank(); ++i)
        for (const TorusElement& z : central)
          for (Int r : {Int{1}, Int{-1}}) {
            IntVector c = z.coords;
            c[i] += r;
            c = a.element(c).coords;
            TraceEntry e{i, z.coords, mod(r, a.orders[i]), false, ""};
            IntVector v(a.rank());
            bool divisible = true;
            for (int j = 0; j < a.rank(); ++j) {
              v[j] = mod(c[j] * lambda[j], m);
              if (v[j] % lambda[i] != 0) divisible = false;
            }
            if (!divisible) {
              e.excluded = true;
              e.reason = "not divisible by the generator's scale";
            } else {
              const Int mi = m / lambda[i];
              for (Int& x : v) x = mod(x / lambda[i], mi);
              if (!is_root_mod(setup.twisted->hat_dual, v, mi)) {
                e.excluded = true;
                e.reason = "not a hat co-root modulo 2^(k+1)/lambda";
              } else {
                e.reason = "hat co-root";
              }
            }
            trace.entries.push_back(std::move(e));
          }
  }
  trace.survivors = static_cast<std::size_t>(
      std::count_if(trace.entries.begin(), trace.entries.end(), [](const TraceEntry& e) { return !e.excluded; }));
  return trace;
}

namespace {

int map_order(const TorusModel& model, const ActionMap& map) {
  const IntMatrix id = identity_on(model);
  IntMatrix power = map.matrix;
  for (int t = 1; t <= 64; ++t) {
    if (power == id) return t;
    power = ActionMap::make(model, map.matrix * power, ActionKind::Composite).matrix;
  }
  return 0;
}

bool realized_by_w0(const TorusSetup& setup, const ActionMap& map) {
  const WeylGroup w0 = setup.twisted ? enumerate_subgroup(setup.ambient, setup.w0_generators)
                                     : enumerate(setup.ambient);
  for (BaseKey key : w0.keys())
    if (induce_action(*setup.model, coroot_matrix(setup.ambient, key), ActionKind::Weyl).matrix == map.matrix)
      return true;
  return false;
}

WitnessRecord evaluate_witness(const TorusSetup& setup, ActionMap map, Int exponent) {
  WitnessRecord w{std::move(map), exponent};
  w.trivial_on_quotient = push_forward(*setup.quotient, w.map).is_identity(*setup.quotient);
  w.nontrivial_on_ambient = !w.map.is_identity(*setup.model);
  w.order = map_order(*setup.model, w.map);
  w.realized_by_w0 = realized_by_w0(setup, w.map);
  w.kernel_contribution = kernel_on(*setup.quotient, {w.map}).kernel_order;
  return w;
}

}  // namespace

bool WitnessRecord::verified() const {
  return trivial_on_quotient && nontrivial_on_ambient && order == 2 && !realized_by_w0 && kernel_contribution == 2;
}

WitnessRecord witness_A1(int k, std::optional<Int> r) {
  if (k < 3) throw std::invalid_argument("the A1 witness requires k >= 3");
  const TorusSetup setup = make_torus_setup(untwisted(Family::A, 1), k);
  const Int exponent = r.value_or(1 + pow2(k - 1));
  return evaluate_witness(setup, induce_action(*setup.model, FieldScalar{exponent}), exponent);
}

WitnessRecord witness_2Dn(int n, int k, std::optional<Int> q) {
  if (n < 3) throw std::invalid_argument("the 2D witness requires n >= 3");
  const TorusSetup setup = make_torus_setup(twisted(Family::D, n), k);
  const Int exponent = q.value_or(pow2(k) + 1);
  const TorusModel& a = *setup.model;
  IntMatrix m = IntMatrix::identity(a.rank());
  m(a.rank() - 1, a.rank() - 1) = exponent;
  return evaluate_witness(setup, ActionMap::make(a, m, ActionKind::Composite), exponent);
}

Outcome predicted_outcome(const LieTypeLabel& requested, int k) {
  const LieTypeLabel label = canonical(requested);
  if (!label.twisted() && label.family == Family::A && label.rank == 1)
    return k >= 3 ? Outcome::ExceptionalA1 : Outcome::OutOfHypotheses;
  if (label.twisted() && label.family == Family::D) return Outcome::Exceptional2Dn;
  return Outcome::NoNonInnerRigid;
}

namespace {

nlohmann::ordered_json center_json(const CentralData& z) {
  nlohmann::ordered_json doc;
  std::vector<IntVector> gens;
  for (const TorusElement& g : z.generators) gens.push_back(g.coords);
  doc["generators"] = gens;
  doc["claimed_order"] = z.claimed_order;
  doc["reading"] = z.reading;
  doc["table_validated"] = z.table_validated;
  return doc;
}

}  // namespace

Verdict classify(const LieTypeLabel& requested, int k, const ScanOptions& options) {
  const TorusSetup setup = make_torus_setup(requested, k);
  Verdict v;
  v.label = setup.label;
  v.k = k;
  const GroupScan scan = scan_group(setup, options);
  const ScalarReport scalars = scalar_elements(setup, scan);
  v.kernel_order = scan.extended_kernel.size();
  v.exhaustive = scan.exhaustive;

  const IntMatrix id = identity_on(*setup.model);
  std::optional<IntMatrix> nontrivial;
  for (const IntMatrix& m : scan.extended_kernel)
    if (m != id) nontrivial = m;

  std::optional<WitnessRecord> witness;
  const LieTypeLabel& label = setup.label;
  if (!label.twisted() && label.family == Family::A && label.rank == 1 && k == 2) {
    v.outcome = Outcome::OutOfHypotheses;
  } else if (v.kernel_order == 1) {
    v.outcome = Outcome::NoNonInnerRigid;
  } else if (v.kernel_order == 2 && is_exceptional_family(label)) {
    witness = label.twisted() ? witness_2Dn(label.rank, k) : witness_A1(k);
    if (witness->verified() && witness->map.matrix == *nontrivial) {
      v.outcome = label.twisted() ? Outcome::Exceptional2Dn : Outcome::ExceptionalA1;
      v.witness = witness->map;
      v.witness_kind = label.twisted() ? "q-power" : "field-scalar";
    } else {
      v.outcome = Outcome::Anomalous;
    }
  } else {
    v.outcome = Outcome::Anomalous;
  }

  nlohmann::ordered_json& ev = v.evidence;
  ev["label"] = label.str();
  ev["k"] = k;
  ev["q_mod"] = setup.q_mod;
  ev["model"] = to_json(*setup.model);
  ev["center"] = center_json(setup.center);
  ev["quotient"] = to_json(*setup.quotient);
  ev["w0_order"] = scan.w0_order;
  ev["scanned"] = scan.scanned;
  ev["exhaustive"] = scan.exhaustive;
  ev["w0_kernel_order"] = scan.w0_kernel_order;
  ev["graph_autos"] = setup.graph_autos.size();
  ev["extended_kernel_order"] = v.kernel_order;
  nlohmann::ordered_json scalar_list = nlohmann::ordered_json::array();
  for (const ScalarElement& s : scalars.elements) scalar_list.push_back(to_json(s, setup));
  ev["scalars"] = scalar_list;
  ev["scalar_clause"] = {{"asserted", scalars.clause_asserted},
                         {"modulus", scalars.modulus},
                         {"counterexamples", scalars.counterexamples}};
  ev["witness"] = witness ? to_json(*witness) : nlohmann::ordered_json();
  ev["predicted"] = to_string(predicted_outcome(label, k));
  return v;
}

Verdict classify(const SetupParams& params, const ScanOptions& options) {
  Verdict v = classify(params.label, params.k, options);
  v.evidence["q0"] = params.q0;
  v.evidence["l"] = params.l;
  v.evidence["derivation"] = {{"k", params.derivation.k},
                              {"closed_form", params.derivation.closed_form},
                              {"agrees", params.derivation.agrees}};
  return v;
}

nlohmann::ordered_json to_json(const ScalarElement& s, const TorusSetup& setup) {
  nlohmann::ordered_json doc;
  std::vector<int> word;
  for (int i : s.word) word.push_back(i + 1);
  doc["word"] = word;
  std::vector<int> graph;
  for (int p : setup.graph_autos.at(s.graph).node_perm) graph.push_back(p + 1);
  doc["graph"] = graph;
  doc["scalar"] = s.scalar;
  return doc;
}

nlohmann::ordered_json to_json(const CaseTrace& trace) {
  nlohmann::ordered_json doc;
  doc["label"] = trace.label.str();
  doc["k"] = trace.k;
  doc["basis"] = trace.basis;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const TraceEntry& e : trace.entries)
    entries.push_back({{"node", e.node + 1}, {"z", e.z}, {"r", e.r}, {"excluded", e.excluded}, {"reason", e.reason}});
  doc["entries"] = entries;
  doc["survivors"] = trace.survivors;
  return doc;
}

nlohmann::ordered_json to_json(const WitnessRecord& w) {
  nlohmann::ordered_json doc;
  doc["kind"] = to_string(w.map.kind);
  doc["exponent"] = w.exponent;
  doc["matrix"] = w.map.matrix.to_rows();
  doc["trivial_on_quotient"] = w.trivial_on_quotient;
  doc["nontrivial_on_ambient"] = w.nontrivial_on_ambient;
  doc["order"] = w.order;
  doc["realized_by_w0"] = w.realized_by_w0;
  doc["kernel_contribution"] = w.kernel_contribution;
  doc["verified"] = w.verified();
  return doc;
}

nlohmann::ordered_json to_json(const Verdict& v) {
  nlohmann::ordered_json doc;
  doc["label"] = v.label.str();
  doc["k"] = v.k;
  doc["outcome"] = to_string(v.outcome);
  doc["kernel_order"] = v.kernel_order;
  doc["witness_kind"] = v.witness_kind;
  doc["exhaustive"] = v.exhaustive;
  doc["evidence"] = v.evidence;
  return doc;
}

}  // namespace rigidity
