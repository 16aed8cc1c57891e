#include "rigidity/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "rigidity/oracle.hpp"

namespace rigidity {

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "text") return Format::Text;
  throw std::invalid_argument("unknown format " + text);
}

namespace {

std::string join(const IntVector& v, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
  return out.str();
}

std::vector<IntVector> embedded_elements(const TorusModel& model) {
  std::vector<TorusElement> units;
  for (int j = 0; j < model.rank(); ++j) {
    IntVector e(model.rank(), 0);
    e[j] = 1;
    units.push_back(model.element(e));
  }
  std::vector<IntVector> out;
  for (const TorusElement& x : subgroup_elements(model, units)) out.push_back(model.embed(x));
  std::sort(out.begin(), out.end());
  return out;
}

void run_oracles(const TorusSetup& setup, VerifyRow& row) {
  nlohmann::ordered_json& detail = row.oracle_detail;
  bool agree = true;
  bool ran = false;
  if (!setup.twisted) {
    if (weyl_order_closed_form(setup.label) > oracle::kWeylGuard) {
      row.oracle = "out-of-range";
      return;
    }
    std::vector<IntVector> z;
    for (const TorusElement& g : setup.center.generators) z.push_back(g.coords);
    const std::uint64_t brute_kernel = oracle::brute_kernel_perm(setup.ambient, setup.k, z);
    detail["kernel"] = {{"main", row.scan.w0_kernel_order}, {"oracle", brute_kernel}};
    agree = agree && brute_kernel == row.scan.w0_kernel_order;

    std::vector<std::pair<std::vector<IntVector>, Int>> main_hits, brute_hits;
    const Int m = setup.model->ambient_modulus;
    for (const ScalarElement& s : row.scan.scalars) {
      const BaseKey key = compose_graph(s.key, setup.graph_autos[s.graph], setup.ambient.rank);
      IntMatrix mat = coroot_matrix(setup.ambient, key);
      std::vector<IntVector> rows = mat.to_rows();
      for (IntVector& r : rows) r = mod(r, m);
      main_hits.emplace_back(std::move(rows), s.scalar);
    }
    for (const oracle::ScalarHit& h : oracle::brute_scalar_search(setup.ambient, setup.k, z, true))
      if (!h.identity) brute_hits.emplace_back(h.matrix, h.scalar);
    std::sort(main_hits.begin(), main_hits.end());
    std::sort(brute_hits.begin(), brute_hits.end());
    detail["scalars"] = {{"main", main_hits.size()}, {"oracle", brute_hits.size()}};
    agree = agree && main_hits == brute_hits;
    ran = true;
  } else {
    std::uint64_t vectors = 1;
    const Int m = Int{1} << (setup.k + 1);
    for (int i = 0; i < setup.ambient.rank && vectors <= oracle::kTorusGuard; ++i)
      vectors *= static_cast<std::uint64_t>(m);
    if (vectors <= oracle::kTorusGuard) {
      const oracle::SigmaScan brute =
          oracle::brute_sigma_fixed(setup.ambient, setup.twisted->rho.node_perm, setup.q_mod, setup.k);
      const auto smith = embedded_elements(sigma_fixed(setup.ambient_dual, setup.twisted->rho, setup.q_mod, setup.k));
      const auto model = embedded_elements(*setup.model);
      detail["sigma_fixed"] = {{"main", smith.size()}, {"model", model.size()}, {"oracle", brute.order}};
      agree = brute.elements == smith && brute.elements == model;
      ran = true;
    }
  }
  row.oracle = !ran ? "out-of-range" : agree ? "agree" : "disagree";
}

}  // namespace

VerifyRow run_verify(const LieTypeLabel& label, int k, const VerifyOptions& options) {
  const TorusSetup setup = make_torus_setup(label, k);
  VerifyRow row;
  row.label = setup.label;
  row.k = k;
  row.scan = scan_group(setup, options.scan);
  row.scalars = scalar_elements(setup, row.scan);
  row.predicted = predicted_outcome(setup.label, k);
  if (row.predicted == Outcome::ExceptionalA1) row.witness = witness_A1(k);
  if (row.predicted == Outcome::Exceptional2Dn) row.witness = witness_2Dn(setup.label.rank, k);
  if (options.trace && !setup.center.generators.empty()) row.trace = case_trace(setup.label, k);
  if (options.with_oracle) run_oracles(setup, row);

  const bool expect_w0 = row.predicted != Outcome::OutOfHypotheses;
  const std::size_t expect_kernel = row.predicted == Outcome::NoNonInnerRigid ? 1 : 2;
  row.match = (row.scan.w0_kernel_order == 1) == expect_w0 && row.scan.extended_kernel.size() == expect_kernel &&
              row.scalars.counterexamples == 0 && (!row.witness || row.witness->verified()) &&
              row.oracle != "disagree";
  return row;
}

ClassifyRow run_classify(const LieTypeLabel& label, int k, const ScanOptions& options) {
  ClassifyRow row;
  row.verdict = classify(label, k, options);
  row.predicted = predicted_outcome(row.verdict.label, k);
  row.match = row.verdict.outcome == row.predicted;
  row.evidence_ref = row.verdict.label.str() + "@k" + std::to_string(k);
  return row;
}

ClassifyRow run_classify(const SetupParams& params, const ScanOptions& options) {
  ClassifyRow row;
  row.verdict = classify(params, options);
  row.q0 = params.q0;
  row.l = params.l;
  row.predicted = predicted_outcome(params.label, params.k);
  row.match = row.verdict.outcome == row.predicted;
  row.evidence_ref =
      row.verdict.label.str() + "@q0=" + std::to_string(params.q0) + ",l=" + std::to_string(params.l);
  return row;
}

nlohmann::ordered_json to_json(const VerifyRow& row) {
  nlohmann::ordered_json doc;
  doc["label"] = row.label.str();
  doc["k"] = row.k;
  doc["w0_order"] = row.scan.w0_order;
  doc["scanned"] = row.scan.scanned;
  doc["exhaustive"] = row.scan.exhaustive;
  doc["w0_kernel_order"] = row.scan.w0_kernel_order;
  doc["extended_kernel_order"] = row.scan.extended_kernel.size();
  doc["scalar_count"] = row.scalars.elements.size();
  doc["scalar_clause"] = {{"asserted", row.scalars.clause_asserted},
                          {"modulus", row.scalars.modulus},
                          {"ambient_exponent", row.scan.ambient_exponent},
                          {"counterexamples", row.scalars.counterexamples}};
  doc["witness"] = row.witness ? to_json(*row.witness) : nlohmann::ordered_json();
  doc["oracle"] = row.oracle;
  doc["oracle_detail"] = row.oracle_detail.is_null() ? nlohmann::ordered_json::object() : row.oracle_detail;
  doc["trace"] = row.trace ? to_json(*row.trace) : nlohmann::ordered_json();
  doc["predicted"] = to_string(row.predicted);
  doc["match"] = row.match;
  return doc;
}

nlohmann::ordered_json to_json(const ClassifyRow& row) {
  nlohmann::ordered_json doc;
  doc["label"] = row.verdict.label.str();
  doc["q0"] = row.q0 ? nlohmann::ordered_json(*row.q0) : nlohmann::ordered_json();
  doc["l"] = row.l ? nlohmann::ordered_json(*row.l) : nlohmann::ordered_json();
  doc["k"] = row.verdict.k;
  doc["verdict"] = to_string(row.verdict.outcome);
  doc["predicted"] = to_string(row.predicted);
  doc["kernel_order"] = row.verdict.kernel_order;
  doc["witness_kind"] = row.verdict.witness_kind;
  doc["exhaustive"] = row.verdict.exhaustive;
  doc["evidence_ref"] = row.evidence_ref;
  return doc;
}

std::string render_roots(const std::vector<RootSystem>& systems, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Json: {
      nlohmann::ordered_json doc;
      doc["command"] = "roots";
      doc["schema_version"] = kSchemaVersion;
      doc["systems"] = nlohmann::ordered_json::array();
      for (const RootSystem& rs : systems) doc["systems"].push_back(to_json(rs));
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << kRootsCsvHeader << '\n';
      for (const RootSystem& rs : systems)
        for (int r = 0; r < rs.num_roots(); ++r)
          out << rs.label.str() << ',' << r << ',' << join(rs.roots[r], " ") << ',' << rs.length_sq[r] << '\n';
      break;
    case Format::Text:
      for (const RootSystem& rs : systems) {
        out << rs.label.str() << ": rank " << rs.rank << ", " << rs.num_roots() << " roots\n";
        for (int r = 0; r < rs.num_roots(); ++r)
          out << "  (" << join(rs.roots[r], ",") << ")  |a|^2=" << rs.length_sq[r] << '\n';
      }
      break;
  }
  return out.str();
}

std::string render_verify(const std::vector<VerifyRow>& rows, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Json: {
      nlohmann::ordered_json doc;
      doc["command"] = "verify";
      doc["schema_version"] = kSchemaVersion;
      doc["rows"] = nlohmann::ordered_json::array();
      for (const VerifyRow& row : rows) doc["rows"].push_back(to_json(row));
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << kVerifyCsvHeader << '\n';
      for (const VerifyRow& r : rows)
        out << r.label.str() << ',' << r.k << ',' << r.scan.w0_order << ',' << r.scan.scanned << ','
            << (r.scan.exhaustive ? "true" : "false") << ',' << r.scan.w0_kernel_order << ','
            << r.scan.extended_kernel.size() << ',' << r.scalars.elements.size() << ','
            << r.scalars.counterexamples << ',' << (r.witness ? (r.witness->verified() ? "true" : "false") : "")
            << ',' << r.oracle << ',' << to_string(r.predicted) << ',' << (r.match ? "true" : "false") << '\n';
      break;
    case Format::Text:
      for (const VerifyRow& r : rows) {
        out << r.label.str() << " k=" << r.k << "  |W0|=" << r.scan.w0_order
            << (r.scan.exhaustive ? "" : " (sampled " + std::to_string(r.scan.scanned) + ")")
            << "  W0 kernel " << r.scan.w0_kernel_order << "  extended kernel " << r.scan.extended_kernel.size()
            << "  scalars " << r.scalars.elements.size();
        if (r.scalars.clause_asserted) out << " (clause violations " << r.scalars.counterexamples << ")";
        if (r.witness) out << "  witness " << (r.witness->verified() ? "verified" : "FAILED");
        if (r.oracle != "off") out << "  oracle " << r.oracle;
        out << "  " << (r.match ? "match" : "MISMATCH") << '\n';
        if (r.trace) {
          out << "  trace (" << r.trace->basis << "): " << r.trace->entries.size() << " triples, "
              << r.trace->survivors << " survive the local test\n";
          for (const TraceEntry& e : r.trace->entries)
            if (!e.excluded)
              out << "    node " << e.node + 1 << " z=(" << join(e.z, ",") << ") r=" << e.r << '\n';
        }
      }
      break;
  }
  return out.str();
}

std::string render_classify(const std::vector<ClassifyRow>& rows, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Json: {
      nlohmann::ordered_json doc;
      doc["command"] = "classify";
      doc["schema_version"] = kSchemaVersion;
      doc["rows"] = nlohmann::ordered_json::array();
      nlohmann::ordered_json evidence = nlohmann::ordered_json::object();
      for (const ClassifyRow& row : rows) {
        doc["rows"].push_back(to_json(row));
        evidence[row.evidence_ref] = row.verdict.evidence;
      }
      doc["evidence"] = evidence;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << kClassifyCsvHeader << '\n';
      for (const ClassifyRow& r : rows)
        out << r.verdict.label.str() << ',' << (r.q0 ? std::to_string(*r.q0) : "") << ','
            << (r.l ? std::to_string(*r.l) : "") << ',' << r.verdict.k << ',' << to_string(r.verdict.outcome) << ','
            << to_string(r.predicted) << ',' << r.verdict.kernel_order << ',' << r.verdict.witness_kind << ','
            << (r.verdict.exhaustive ? "true" : "false") << ',' << r.evidence_ref << '\n';
      break;
    case Format::Text: {
      const std::vector<std::pair<Outcome, const char*>> groups = {
          {Outcome::ExceptionalA1, "Noninner rigid automorphism: PSL2(q), q = 1 (mod 8)"},
          {Outcome::Exceptional2Dn, "Noninner rigid automorphism: twisted D_n, n >= 3"},
          {Outcome::NoNonInnerRigid, "No noninner rigid automorphisms"},
          {Outcome::OutOfHypotheses, "Outside the hypotheses"},
          {Outcome::Anomalous, "Anomalous (kernel disagrees with every family)"},
      };
      for (const auto& [outcome, title] : groups) {
        std::vector<const ClassifyRow*> members;
        for (const ClassifyRow& r : rows)
          if (r.verdict.outcome == outcome) members.push_back(&r);
        if (members.empty()) continue;
        out << title << '\n';
        for (const ClassifyRow* r : members) {
          out << "  " << r->verdict.label.str();
          if (r->q0) out << "  q0=" << *r->q0 << " l=" << *r->l;
          out << "  k=" << r->verdict.k << "  kernel " << r->verdict.kernel_order;
          if (!r->verdict.witness_kind.empty()) out << "  witness " << r->verdict.witness_kind;
          if (!r->verdict.exhaustive) out << "  (sampled)";
          if (!r->match) out << "  MISMATCH (predicted " << to_string(r->predicted) << ")";
          out << '\n';
        }
      }
      break;
    }
  }
  return out.str();
}

}  // namespace rigidity
