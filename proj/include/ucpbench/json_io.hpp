#pragma once

// JSON serialization of the document types the CLI reads and writes.
// Ordered maps keep key order stable so identical inputs produce identical
// bytes (the generated_at field is the only run-dependent content).

#include <json.hpp>

#include "ucpbench/comparison.hpp"
#include "ucpbench/dataset.hpp"
#include "ucpbench/evaluation.hpp"

namespace ucpbench {

using OrderedJson = nlohmann::ordered_json;

OrderedJson summary_to_json(const DatasetSummary& summary, const std::string& name);

OrderedJson profile_to_json(const DatasetProfile& profile);
DatasetProfile profile_from_json(const OrderedJson& j);
DatasetProfile load_profile(const std::filesystem::path& path);

// timestamp may be empty to omit the generated_at field.
OrderedJson report_to_json(const EvaluationReport& report,
                           const std::string& timestamp = "");
EvaluationReport report_from_json(const OrderedJson& j);
EvaluationReport load_report(const std::filesystem::path& path);

OrderedJson comparison_to_json(const ComparisonResult& result,
                               const std::string& timestamp = "");

OrderedJson size_breakdown_to_json(const SizeBreakdown& b);

}  // namespace ucpbench
