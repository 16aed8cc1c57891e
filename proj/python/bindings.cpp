#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "rigidity/arith.hpp"
#include "rigidity/report.hpp"
#include "rigidity/selectors.hpp"

namespace py = pybind11;
using namespace rigidity;

namespace {

// Documents cross the boundary as JSON text; the Python side parses them.
std::string dump(const nlohmann::ordered_json& doc) { return doc.dump(); }

ScanOptions scan_options(std::uint64_t samples, std::uint64_t seed) {
  ScanOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  return opts;
}

std::string torus_json(const std::string& label, int k) {
  const TorusSetup setup = make_torus_setup(parse_label(label), k);
  nlohmann::ordered_json doc;
  doc["label"] = setup.label.str();
  doc["k"] = k;
  doc["q_mod"] = setup.q_mod;
  doc["model"] = to_json(*setup.model);
  std::vector<IntVector> gens;
  for (const auto& g : setup.center.generators) gens.push_back(g.coords);
  doc["center"] = {{"generators", gens},
                   {"claimed_order", setup.center.claimed_order},
                   {"reading", setup.center.reading},
                   {"table_validated", setup.center.table_validated}};
  doc["quotient"] = to_json(*setup.quotient);
  return dump(doc);
}

}  // namespace

PYBIND11_MODULE(_rigidity, m) {
  m.doc() = "Lattice-level rigidity checks for finite groups of Lie type";

  py::register_exception<CapExceeded>(m, "CapExceeded");

  m.def("val2", [](std::uint64_t n) { return val2(n); }, py::arg("n"));
  m.def("derive_k", &derive_k, py::arg("q0"), py::arg("l"));
  m.def("derive_k_checked", [](std::int64_t q0, int l) {
    const KDerivation d = derive_k_checked(q0, l);
    return py::dict(py::arg("k") = d.k, py::arg("closed_form") = d.closed_form, py::arg("agrees") = d.agrees);
  }, py::arg("q0"), py::arg("l"));

  m.def("expand_labels", [](const std::string& types, const std::string& ranks) {
    const LabelSelection sel = expand_labels(types, ranks);
    std::vector<std::string> out;
    for (const auto& l : sel.labels) out.push_back(l.str());
    return out;
  }, py::arg("types"), py::arg("ranks") = "");

  m.def("root_system_json", [](const std::string& label) { return dump(to_json(build(parse_label(label)))); },
        py::arg("label"));
  m.def("weyl_order", [](const std::string& label, std::size_t cap) {
    return enumerate(build(parse_label(label)), cap).size();
  }, py::arg("label"), py::arg("cap") = kDefaultWeylCap);
  m.def("twisted_setup_json", [](const std::string& label) { return dump(to_json(build_twisted(parse_label(label)))); },
        py::arg("label"));
  m.def("torus_json", &torus_json, py::arg("label"), py::arg("k"));

  m.def("verify_json", [](const std::string& label, int k, bool with_oracle, bool trace, std::uint64_t samples,
                          std::uint64_t seed) {
    VerifyOptions opts;
    opts.scan = scan_options(samples, seed);
    opts.with_oracle = with_oracle;
    opts.trace = trace;
    py::gil_scoped_release release;
    return dump(to_json(run_verify(parse_label(label), k, opts)));
  }, py::arg("label"), py::arg("k"), py::arg("with_oracle") = false, py::arg("trace") = false,
        py::arg("samples") = kDefaultSamples, py::arg("seed") = kDefaultSeed);

  m.def("classify_json", [](const std::string& label, int k, std::uint64_t samples, std::uint64_t seed) {
    py::gil_scoped_release release;
    const Verdict v = classify(parse_label(label), k, scan_options(samples, seed));
    return dump(to_json(v));
  }, py::arg("label"), py::arg("k"), py::arg("samples") = kDefaultSamples, py::arg("seed") = kDefaultSeed);

  m.def("classify_setup_json", [](std::int64_t q0, int l, const std::string& label) {
    const SetupParams params = SetupParams::make(q0, l, parse_label(label));
    py::gil_scoped_release release;
    return dump(to_json(classify(params)));
  }, py::arg("q0"), py::arg("l"), py::arg("label"));

  m.def("witness_a1_json", [](int k, std::optional<Int> r) { return dump(to_json(witness_A1(k, r))); },
        py::arg("k"), py::arg("r") = py::none());
  m.def("witness_2dn_json", [](int n, int k, std::optional<Int> q) { return dump(to_json(witness_2Dn(n, k, q))); },
        py::arg("n"), py::arg("k"), py::arg("q") = py::none());
}
