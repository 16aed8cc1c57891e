#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rigidity/report.hpp"
#include "rigidity/selectors.hpp"

namespace {

constexpr int kExitMatch = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string type;
  std::string rank;
  std::string k = "2";
  std::string q0;
  std::string l = "0";
  std::string format = "text";
  std::size_t cap = rigidity::kDefaultWeylCap;
  std::uint64_t samples = rigidity::kDefaultSamples;
  std::uint64_t seed = rigidity::kDefaultSeed;
  bool with_oracle = false;
  bool exhaustive_e8 = false;
  bool trace = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<rigidity::LieTypeLabel> select_labels(const RunConfig& config) {
  if (config.type.empty()) throw UsageError("--type is required");
  rigidity::LabelSelection sel;
  try {
    sel = rigidity::expand_labels(config.type, config.rank);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const std::string& s : sel.skipped) std::cerr << "skipped inadmissible label " << s << '\n';
  if (sel.labels.empty()) throw UsageError("no admissible label selected");
  return sel.labels;
}

std::vector<int> select_ints(const std::string& expr, int lo, int hi, const char* flag) {
  try {
    return rigidity::parse_int_list(expr, lo, hi);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

rigidity::Format select_format(const std::string& text) {
  try {
    return rigidity::parse_format(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

rigidity::ScanOptions scan_options(const RunConfig& config) {
  rigidity::ScanOptions opts;
  opts.cap = config.cap;
  opts.samples = config.samples;
  opts.seed = config.seed;
  opts.exhaustive_chain = config.exhaustive_e8;
  return opts;
}

void warn_sampled(const rigidity::LieTypeLabel& label, int k, bool exhaustive, std::uint64_t scanned) {
  if (!exhaustive)
    std::cerr << "warning: " << label.str() << " k=" << k << " certified by sampling " << scanned
              << " elements (not exhaustive)\n";
}

int cmd_roots(const RunConfig& config) {
  const auto format = select_format(config.format);
  std::vector<rigidity::RootSystem> systems;
  for (const auto& label : select_labels(config)) {
    if (label.twisted()) throw UsageError("roots takes untwisted labels, got " + label.str());
    systems.push_back(rigidity::build(label));
  }
  std::cout << rigidity::render_roots(systems, format);
  return kExitMatch;
}

int cmd_verify(const RunConfig& config) {
  const auto format = select_format(config.format);
  const auto labels = select_labels(config);
  const auto ks = select_ints(config.k, 2, 12, "--k");
  rigidity::VerifyOptions opts;
  opts.scan = scan_options(config);
  opts.with_oracle = config.with_oracle;
  opts.trace = config.trace;
  std::vector<rigidity::VerifyRow> rows;
  bool all_match = true;
  for (const auto& label : labels)
    for (int k : ks) {
      rows.push_back(rigidity::run_verify(label, k, opts));
      warn_sampled(label, k, rows.back().scan.exhaustive, rows.back().scan.scanned);
      all_match = all_match && rows.back().match;
    }
  std::cout << rigidity::render_verify(rows, format);
  return all_match ? kExitMatch : kExitMismatch;
}

int cmd_classify(const RunConfig& config) {
  const auto format = select_format(config.format);
  const auto labels = select_labels(config);
  const auto opts = scan_options(config);
  std::vector<rigidity::ClassifyRow> rows;
  if (!config.q0.empty()) {
    std::vector<std::int64_t> q0s;
    try {
      for (int v : rigidity::parse_int_list(config.q0, 2, 1'000'000'000)) q0s.push_back(v);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--q0: ") + e.what());
    }
    const auto ls = select_ints(config.l, 0, rigidity::kMaxFieldExponent, "--l");
    for (const auto& label : labels)
      for (std::int64_t q0 : q0s)
        for (int l : ls) {
          rigidity::SetupParams params;
          try {
            params = rigidity::SetupParams::make(q0, l, label);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          } catch (const std::domain_error& e) {
            throw UsageError(e.what());
          }
          if (params.k > 12) throw UsageError("derived k exceeds 12 for q0=" + std::to_string(q0));
          if (!params.derivation.agrees)
            std::cerr << "note: q0=" << q0 << " l=" << l << " gives k=" << params.k << ", closed form l+2="
                      << params.derivation.closed_form << '\n';
          rows.push_back(rigidity::run_classify(params, opts));
        }
  } else {
    for (const auto& label : labels)
      for (int k : select_ints(config.k, 2, 12, "--k")) rows.push_back(rigidity::run_classify(label, k, opts));
  }
  bool all_match = true;
  for (const auto& row : rows) {
    warn_sampled(row.verdict.label, row.verdict.k, row.verdict.exhaustive,
                 row.verdict.evidence.value("scanned", std::uint64_t{0}));
    all_match = all_match && row.match;
  }
  std::cout << rigidity::render_classify(rows, format);
  return all_match ? kExitMatch : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-level checks for rigid automorphisms of 2-fusion systems of groups of Lie type"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_selectors = [&](CLI::App* sub) {
    sub->add_option("--type", config.type, "Families or labels: A, 2D, A..D, G2, 2D4 (comma separated)");
    sub->add_option("--rank", config.rank, "Ranks: 3, 2..6, 1,3");
    sub->add_option("--format", config.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto add_scan = [&](CLI::App* sub) {
    sub->add_option("--k", config.k, "Exponent values in [2, 12]: 2, 2..3");
    sub->add_option("--cap", config.cap, "Weyl enumeration cap");
    sub->add_option("--samples", config.samples, "Samples for groups above the cap");
    sub->add_option("--seed", config.seed, "Sampling seed");
    sub->add_flag("--exhaustive-e8", config.exhaustive_e8, "Stream all of W(E8) instead of sampling");
  };

  CLI::App* roots = app.add_subcommand("roots", "Print root systems");
  add_selectors(roots);
  CLI::App* verify = app.add_subcommand("verify", "Faithfulness, scalar and witness checks");
  add_selectors(verify);
  add_scan(verify);
  verify->add_flag("--with-oracle", config.with_oracle, "Cross-check against brute-force oracles");
  verify->add_flag("--trace", config.trace, "Include the local co-root case trace");
  CLI::App* classify = app.add_subcommand("classify", "Classify setups by rigid automorphism kernel");
  add_selectors(classify);
  add_scan(classify);
  classify->add_option("--q0", config.q0, "Primes q0 = 1 (mod 4): 17 or 5,13");
  classify->add_option("--l", config.l, "Field exponents l with q = q0^(2^l): 0 or 0..3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*roots) return cmd_roots(config);
    if (*verify) return cmd_verify(config);
    return cmd_classify(config);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rigidity::CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
}
