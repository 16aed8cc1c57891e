#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rigidity/verify.hpp"

namespace rigidity {

enum class Format { Json, Csv, Text };
Format parse_format(const std::string& text);

// Bumped whenever a JSON document or CSV header changes shape.
inline constexpr int kSchemaVersion = 1;

inline constexpr const char* kRootsCsvHeader = "label,root_index,coefficients,length_sq";
inline constexpr const char* kVerifyCsvHeader =
    "label,k,w0_order,scanned,exhaustive,w0_kernel_order,extended_kernel_order,scalar_count,"
    "scalar_counterexamples,witness_verified,oracle,predicted,match";
inline constexpr const char* kClassifyCsvHeader =
    "label,q0,l,k,verdict,predicted,kernel_order,witness_kind,exhaustive,evidence_ref";

struct VerifyOptions {
  ScanOptions scan;
  bool with_oracle = false;
  bool trace = false;
};

struct VerifyRow {
  LieTypeLabel label;
  int k = 2;
  GroupScan scan;
  ScalarReport scalars;
  std::optional<WitnessRecord> witness;
  std::string oracle = "off";  // off | agree | disagree | out-of-range
  nlohmann::ordered_json oracle_detail;
  std::optional<CaseTrace> trace;
  Outcome predicted = Outcome::NoNonInnerRigid;
  bool match = false;
};
VerifyRow run_verify(const LieTypeLabel& label, int k, const VerifyOptions& options);

struct ClassifyRow {
  Verdict verdict;
  std::optional<std::int64_t> q0;
  std::optional<int> l;
  Outcome predicted = Outcome::NoNonInnerRigid;
  bool match = false;
  std::string evidence_ref;
};
ClassifyRow run_classify(const LieTypeLabel& label, int k, const ScanOptions& options);
ClassifyRow run_classify(const SetupParams& params, const ScanOptions& options);

nlohmann::ordered_json to_json(const VerifyRow& row);
nlohmann::ordered_json to_json(const ClassifyRow& row);

std::string render_roots(const std::vector<RootSystem>& systems, Format format);
std::string render_verify(const std::vector<VerifyRow>& rows, Format format);
std::string render_classify(const std::vector<ClassifyRow>& rows, Format format);

}  // namespace rigidity
