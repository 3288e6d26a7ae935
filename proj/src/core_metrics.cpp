#include "ucpbench/core_metrics.hpp"

#include <stdexcept>
#include <string>

namespace ucpbench {

namespace {

void check_rating(int v, const char* prefix, int index_1based) {
  if (v < 0 || v > 5)
    throw std::invalid_argument(std::string(prefix) + std::to_string(index_1based) +
                                " out of range (must be integer 0..5, got " +
                                std::to_string(v) + ")");
}

void check_counts(int simple, int average, int complex, const char* what) {
  if (simple < 0 || average < 0 || complex < 0)
    throw std::invalid_argument(std::string(what) + " counts must be non-negative");
}

}  // namespace

TechnicalFactors::TechnicalFactors(const std::array<int, kCount>& values)
    : values_(values) {
  for (int i = 0; i < kCount; ++i) check_rating(values_[i], "f", i + 1);
}

EnvironmentalFactors::EnvironmentalFactors(const std::array<int, kCount>& values)
    : values_(values) {
  for (int i = 0; i < kCount; ++i) check_rating(values_[i], "env", i + 1);
}

std::array<double, EnvironmentalFactors::kCount> EnvironmentalFactors::as_doubles()
    const {
  std::array<double, kCount> d;
  for (int i = 0; i < kCount; ++i) d[i] = static_cast<double>(values_[i]);
  return d;
}

UseCaseClass classify_use_case(int transaction_count) {
  if (transaction_count < 0)
    throw std::invalid_argument("transaction count must be non-negative");
  if (transaction_count <= 3) return UseCaseClass::Simple;
  if (transaction_count <= 7) return UseCaseClass::Average;
  return UseCaseClass::Complex;
}

double compute_uaw(const ActorCounts& a) {
  check_counts(a.simple, a.average, a.complex, "actor");
  return 1.0 * a.simple + 2.0 * a.average + 3.0 * a.complex;
}

double compute_uucw(const UseCaseCounts& u) {
  check_counts(u.simple, u.average, u.complex, "use case");
  return 5.0 * u.simple + 10.0 * u.average + 15.0 * u.complex;
}

double compute_tcf(const TechnicalFactors& t) {
  double weighted = 0.0;
  for (int i = 0; i < TechnicalFactors::kCount; ++i)
    weighted += t.value(i) * TechnicalFactors::kWeights[static_cast<std::size_t>(i)];
  return 0.6 + 0.01 * weighted;
}

double compute_ef(const EnvironmentalFactors& e) {
  double weighted = 0.0;
  for (int i = 0; i < EnvironmentalFactors::kCount; ++i)
    weighted += e.value(i) * EnvironmentalFactors::kWeights[static_cast<std::size_t>(i)];
  return 1.4 - 0.03 * weighted;
}

SizeBreakdown compute_ucp(const ActorCounts& a, const UseCaseCounts& u,
                          const TechnicalFactors& t,
                          const std::optional<EnvironmentalFactors>& e,
                          UcpMode mode) {
  SizeBreakdown b;
  b.uaw = compute_uaw(a);
  b.uucw = compute_uucw(u);
  b.uucp = b.uaw + b.uucw;
  b.tcf = compute_tcf(t);
  if (mode == UcpMode::Full) {
    if (!e.has_value())
      throw std::invalid_argument("full mode requires environmental factors");
    b.ef = compute_ef(*e);
    b.ucp = b.uucp * b.tcf * *b.ef;
  } else {
    b.ucp = b.uucp * b.tcf;
  }
  return b;
}

double pdr(double effort, double ucp) {
  if (effort <= 0.0) throw std::invalid_argument("effort must be positive");
  if (ucp <= 0.0) throw std::invalid_argument("ucp must be positive");
  return effort / ucp;
}

}  // namespace ucpbench
