#include "ucpbench/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ucpbench/mathstats.hpp"
#include "ucpbench/rng.hpp"

namespace ucpbench {

namespace {

constexpr const char* kHeader = "id,env1,env2,env3,env4,env5,env6,env7,env8,ucp,effort";
constexpr const char* kHeaderWithProductivity =
    "id,env1,env2,env3,env4,env5,env6,env7,env8,ucp,effort,productivity";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

int parse_rating(const std::string& token, std::size_t row, int env_index) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError("row " + std::to_string(row) + ", column env" +
                     std::to_string(env_index) + ": not an integer: '" + token + "'");
  if (value < 0 || value > 5)
    throw ValidationError("row " + std::to_string(row) + ": env" +
                          std::to_string(env_index) + " out of range (0..5, got " +
                          std::to_string(value) + ")");
  return value;
}

double parse_positive(const std::string& token, std::size_t row, const char* column) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError("row " + std::to_string(row) + ", column " + column +
                     ": not a number: '" + token + "'");
  if (!(value > 0.0))
    throw ValidationError("row " + std::to_string(row) + ": " + column +
                          " must be positive (got " + token + ")");
  return value;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DatasetError("cannot open for writing: " + tmp);
    out << text;
    if (!out) throw DatasetError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

ProjectRecord make_record(std::string id, const EnvironmentalFactors& env,
                          double ucp, double effort) {
  if (!(ucp > 0.0)) throw ValidationError("record " + id + ": ucp must be positive");
  if (!(effort > 0.0))
    throw ValidationError("record " + id + ": effort must be positive");
  ProjectRecord r{std::move(id), env, ucp, effort, effort / ucp};
  return r;
}

Dataset::Dataset(std::string name, std::vector<ProjectRecord> records)
    : name_(std::move(name)), records_(std::move(records)) {
  std::set<std::string> ids;
  for (const auto& r : records_)
    if (!ids.insert(r.id).second)
      throw ValidationError("duplicate project id: " + r.id);
}

Dataset Dataset::without(std::size_t index) const {
  std::vector<ProjectRecord> rest;
  rest.reserve(records_.size() - 1);
  for (std::size_t i = 0; i < records_.size(); ++i)
    if (i != index) rest.push_back(records_[i]);
  return Dataset(name_, std::move(rest));
}

std::vector<double> Dataset::productivities() const {
  std::vector<double> v;
  v.reserve(records_.size());
  for (const auto& r : records_) v.push_back(r.productivity);
  return v;
}

std::vector<double> Dataset::efforts() const {
  std::vector<double> v;
  v.reserve(records_.size());
  for (const auto& r : records_) v.push_back(r.effort);
  return v;
}

std::vector<double> Dataset::ucps() const {
  std::vector<double> v;
  v.reserve(records_.size());
  for (const auto& r : records_) v.push_back(r.ucp);
  return v;
}

std::vector<std::vector<double>> Dataset::env_matrix() const {
  std::vector<std::vector<double>> m;
  m.reserve(records_.size());
  for (const auto& r : records_) {
    const auto d = r.env.as_doubles();
    m.emplace_back(d.begin(), d.end());
  }
  return m;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open dataset file: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  bool has_productivity_column = false;
  if (line == kHeaderWithProductivity) {
    has_productivity_column = true;
  } else if (line != kHeader) {
    throw ParseError(std::string("bad header; expected '") + kHeader + "'");
  }
  const std::size_t expected_fields = has_productivity_column ? 12 : 11;

  std::vector<ProjectRecord> records;
  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != expected_fields)
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(expected_fields) + " fields, got " +
                       std::to_string(fields.size()));
    if (fields[0].empty())
      throw ValidationError("row " + std::to_string(row) + ": empty id");

    std::array<int, EnvironmentalFactors::kCount> ratings{};
    for (int j = 0; j < EnvironmentalFactors::kCount; ++j)
      ratings[static_cast<std::size_t>(j)] =
          parse_rating(fields[static_cast<std::size_t>(j + 1)], row, j + 1);

    const double ucp = parse_positive(fields[9], row, "ucp");
    const double effort = parse_positive(fields[10], row, "effort");
    auto record = make_record(fields[0], EnvironmentalFactors(ratings), ucp, effort);

    if (has_productivity_column) {
      const double stated = parse_positive(fields[11], row, "productivity");
      const double derived = record.productivity;
      if (std::fabs(stated - derived) > 1e-9 * std::max(1.0, std::fabs(derived)))
        throw ValidationError("row " + std::to_string(row) +
                              ": productivity column inconsistent with effort/ucp (" +
                              format_double(stated) + " vs " + format_double(derived) +
                              ")");
    }
    records.push_back(std::move(record));
  }

  std::string name = path.stem().string();
  return Dataset(std::move(name), std::move(records));
}

std::string dataset_to_csv(const Dataset& d) {
  std::string out = kHeader;
  out += '\n';
  for (const auto& r : d.records()) {
    out += r.id;
    for (int j = 0; j < EnvironmentalFactors::kCount; ++j) {
      out += ',';
      out += std::to_string(r.env.value(j));
    }
    out += ',';
    out += format_double(r.ucp);
    out += ',';
    out += format_double(r.effort);
    out += '\n';
  }
  return out;
}

void save_dataset(const Dataset& d, const std::filesystem::path& path) {
  write_text_atomic(path, dataset_to_csv(d));
}

namespace {

VariableStats variable_stats(const std::vector<double>& v) {
  VariableStats s;
  s.mean = stats::mean(v);
  s.stdev = stats::stdev(v);
  s.min = stats::min_value(v);
  s.median = stats::median(v);
  s.max = stats::max_value(v);
  s.degenerate = stats::is_constant(v);
  if (!s.degenerate) {
    s.skewness = stats::skewness(v);
    s.kurtosis = stats::kurtosis(v);
  }
  return s;
}

}  // namespace

DatasetSummary describe(const Dataset& d) {
  if (d.empty()) throw std::invalid_argument("describe: empty dataset");
  DatasetSummary s;
  s.n = d.size();
  s.ucp = variable_stats(d.ucps());
  s.effort = variable_stats(d.efforts());
  s.productivity = variable_stats(d.productivities());
  return s;
}

namespace {

void check_target(const RangeTarget& t, const char* what, bool positive_min) {
  if (t.max < t.min)
    throw std::invalid_argument(std::string("profile ") + what + ": max < min");
  if (t.mean < t.min || t.mean > t.max)
    throw std::invalid_argument(std::string("profile ") + what +
                                ": mean outside [min, max]");
  if (t.stdev < 0.0)
    throw std::invalid_argument(std::string("profile ") + what + ": negative stdev");
  if (positive_min && !(t.min > 0.0))
    throw std::invalid_argument(std::string("profile ") + what +
                                ": min must be positive");
}

// Standardize in place to sample mean 0, sample stdev 1 (no-op if constant).
void standardize(std::vector<double>& v) {
  const double m = stats::mean(v);
  const double s = stats::stdev(v);
  for (double& x : v) x = s > 0.0 ? (x - m) / s : 0.0;
}

}  // namespace

Dataset generate_synthetic(const DatasetProfile& profile, std::uint64_t seed) {
  if (profile.n < 1) throw std::invalid_argument("profile: n must be >= 1");
  check_target(profile.ucp, "ucp", true);
  check_target(profile.effort, "effort", true);
  check_target(profile.productivity, "productivity", true);
  if (profile.env_coupling < 0.0 || profile.env_coupling > 1.0)
    throw std::invalid_argument("profile: env_coupling must be in [0, 1]");

  const std::size_t n = static_cast<std::size_t>(profile.n);
  Rng rng(derive_seed(seed, "synthetic"));

  // Integer ratings 0..5, peaked toward the middle of the scale.
  static constexpr int kRatingWeights[6] = {1, 2, 3, 3, 2, 1};
  static constexpr int kRatingTotal = 12;
  auto draw_rating = [&]() {
    int roll = rng.next_int(1, kRatingTotal);
    for (int v = 0; v < 6; ++v) {
      roll -= kRatingWeights[v];
      if (roll <= 0) return v;
    }
    return 5;
  };

  std::vector<EnvironmentalFactors> envs;
  envs.reserve(n);
  std::vector<double> signal(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<int, EnvironmentalFactors::kCount> ratings{};
    for (int j = 0; j < EnvironmentalFactors::kCount; ++j)
      ratings[static_cast<std::size_t>(j)] = draw_rating();
    envs.emplace_back(ratings);
    // Weighted environmental signal: a better environment (higher weighted
    // sum) needs fewer person-hours per UCP, hence the negation.
    double weighted = 0.0;
    for (int j = 0; j < EnvironmentalFactors::kCount; ++j)
      weighted += ratings[static_cast<std::size_t>(j)] *
                  EnvironmentalFactors::kWeights[static_cast<std::size_t>(j)];
    signal[i] = -weighted;
  }

  std::vector<double> noise(n);
  for (double& z : noise) z = rng.next_truncated_normal(3.0);

  std::vector<double> zs = signal;
  std::vector<double> zn = noise;
  if (n >= 2) {
    standardize(zs);
    standardize(zn);
  }

  const double rho = std::sqrt(profile.env_coupling);
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i)
    z[i] = rho * zs[i] + std::sqrt(1.0 - rho * rho) * zn[i];
  if (n >= 2) standardize(z);

  std::vector<double> prod(n);
  for (std::size_t i = 0; i < n; ++i)
    prod[i] = std::clamp(profile.productivity.mean + profile.productivity.stdev * z[i],
                         profile.productivity.min, profile.productivity.max);

  // Log-normal ucp matched to the profile's mean/stdev, then clipped.
  std::vector<double> ucp(n, profile.ucp.mean);
  if (profile.ucp.stdev > 0.0) {
    const double ratio = profile.ucp.stdev / profile.ucp.mean;
    const double sigma2 = std::log(1.0 + ratio * ratio);
    const double mu = std::log(profile.ucp.mean) - 0.5 * sigma2;
    for (double& u : ucp)
      u = std::clamp(std::exp(mu + std::sqrt(sigma2) * rng.next_normal()),
                     profile.ucp.min, profile.ucp.max);
  }

  std::vector<ProjectRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "%s-%03zu", profile.name.c_str(), i + 1);
    records.push_back(make_record(id, envs[i], ucp[i], prod[i] * ucp[i]));
  }
  return Dataset(profile.name, std::move(records));
}

Dataset merge(const Dataset& a, const Dataset& b) {
  std::set<std::string> seen;
  bool collision = false;
  for (const auto& r : a.records()) seen.insert(r.id);
  for (const auto& r : b.records())
    if (seen.count(r.id)) {
      collision = true;
      break;
    }

  std::vector<ProjectRecord> records;
  records.reserve(a.size() + b.size());
  auto append = [&](const Dataset& src) {
    for (const auto& r : src.records()) {
      ProjectRecord copy = r;
      if (collision) copy.id = src.name() + ":" + r.id;
      records.push_back(std::move(copy));
    }
  };
  append(a);
  append(b);

  std::string name = b.empty() ? a.name() : a.name() + "+" + b.name();
  return Dataset(std::move(name), std::move(records));
}

const DatasetProfile* builtin_profile(std::string_view name) {
  static const DatasetProfile ds1{
      "ds1", 45,
      {739.3, 1563.9, 33.0, 7027.0},
      {20573.5, 47326.9, 570.0, 224890.0},
      {24.1, 5.1, 14.0, 33.0},
      0.6};
  static const DatasetProfile ds2{
      "ds2", 65,
      {82.6, 20.7, 40.0, 149.0},
      {1672.4, 414.3, 696.0, 2444.0},
      {20.8, 4.8, 11.0, 32.0},
      0.6};
  static const DatasetProfile ds3{
      "ds3", 110,
      {351.3, 1045.3, 33.0, 7027.0},
      {9404.7, 31486.6, 570.0, 224890.0},
      {22.1, 5.2, 11.0, 33.0},
      0.6};
  if (name == "ds1") return &ds1;
  if (name == "ds2") return &ds2;
  if (name == "ds3") return &ds3;
  return nullptr;
}

}  // namespace ucpbench
