#pragma once

// Project-record data model, the validated CSV dataset format, descriptive
// statistics, and a synthetic dataset generator driven by distribution
// profiles (built-ins ds1/ds2/ds3 mirror the published dataset summaries).
//
// Productivity is always derived as effort/ucp, never trusted from input.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ucpbench/core_metrics.hpp"

namespace ucpbench {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Malformed content: wrong arity, non-numeric fields. Message names row/column.
class ParseError : public DatasetError {
 public:
  using DatasetError::DatasetError;
};
// Well-formed but rule-violating content. Message names the violated rule.
class ValidationError : public DatasetError {
 public:
  using DatasetError::DatasetError;
};

struct ProjectRecord {
  std::string id;
  EnvironmentalFactors env;
  double ucp = 0.0;       // environmental factors excluded from this size
  double effort = 0.0;    // person-hours
  double productivity = 0.0;  // derived: effort / ucp
};

ProjectRecord make_record(std::string id, const EnvironmentalFactors& env,
                          double ucp, double effort);

class Dataset {
 public:
  Dataset() = default;
  Dataset(std::string name, std::vector<ProjectRecord> records);

  const std::string& name() const { return name_; }
  const std::vector<ProjectRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const ProjectRecord& operator[](std::size_t i) const { return records_[i]; }

  // A copy with one record left out (leave-one-out folds).
  Dataset without(std::size_t index) const;

  std::vector<double> productivities() const;
  std::vector<double> efforts() const;
  std::vector<double> ucps() const;
  std::vector<std::vector<double>> env_matrix() const;

 private:
  std::string name_;
  std::vector<ProjectRecord> records_;
};

struct RangeTarget {
  double mean = 0.0;
  double stdev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct DatasetProfile {
  std::string name;
  int n = 0;
  RangeTarget ucp;
  RangeTarget effort;
  RangeTarget productivity;
  // Share of productivity variance explained by the environmental-factor
  // signal (the R^2 a linear fit can reach before clipping).
  double env_coupling = 0.6;
};

struct VariableStats {
  double mean = 0.0;
  double stdev = 0.0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  double skewness = 0.0;   // m3/m2^1.5
  double kurtosis = 0.0;   // m4/m2^2, non-excess
  bool degenerate = false; // constant column: shape stats reported as 0
};

struct DatasetSummary {
  std::size_t n = 0;
  VariableStats ucp;
  VariableStats effort;
  VariableStats productivity;
};

// CSV format (UTF-8, LF or CRLF): header exactly
//   id,env1,env2,env3,env4,env5,env6,env7,env8,ucp,effort
// optionally followed by ",productivity". env columns are integers 0..5;
// ucp and effort are positive decimals with '.' decimal point. When a
// productivity column is present it must agree with effort/ucp (1e-9
// relative); the stored value is recomputed regardless.
Dataset load_dataset(const std::filesystem::path& path);
std::string dataset_to_csv(const Dataset& d);
void save_dataset(const Dataset& d, const std::filesystem::path& path);

DatasetSummary describe(const Dataset& d);

// Draws env ratings 0..5 with mild central tendency, builds productivity as
// a monotone function of the weighted environmental signal plus truncated
// normal noise rescaled to the profile's mean/stdev and clipped to
// [min, max], draws ucp from a log-normal fitted to the profile and clipped,
// and sets effort = productivity * ucp. Deterministic given the seed.
Dataset generate_synthetic(const DatasetProfile& profile, std::uint64_t seed);

// Concatenation, a's records first. Ids are prefixed with the source dataset
// name only if plain concatenation would collide.
Dataset merge(const Dataset& a, const Dataset& b);

// Built-in profiles "ds1", "ds2", "ds3"; nullptr when unknown.
const DatasetProfile* builtin_profile(std::string_view name);

// Shortest round-trip decimal formatting used by the CSV writer.
std::string format_double(double v);

// Atomic write: temp file in the target directory, then rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace ucpbench
