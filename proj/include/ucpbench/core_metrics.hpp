#pragma once

// Use Case Points size arithmetic: unadjusted actor and use-case weights,
// the technical-complexity and environmental adjustment factors with their
// fixed weight tables, and the final UCP product. Also the project delivery
// rate (PDR), person-hours per UCP.
//
// All functions are pure; factor weights are compile-time constants.

#include <array>
#include <optional>

namespace ucpbench {

struct ActorCounts {
  int simple = 0;
  int average = 0;
  int complex = 0;
};

struct UseCaseCounts {
  int simple = 0;
  int average = 0;
  int complex = 0;
};

enum class UseCaseClass { Simple, Average, Complex };

// Thirteen technical-complexity ratings, each an integer influence value in
// 0..5. Construction validates length and range.
class TechnicalFactors {
 public:
  static constexpr int kCount = 13;
  static constexpr std::array<double, kCount> kWeights = {
      2.0, 2.0, 1.0, 1.0, 1.0, 0.5, 0.5, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0};

  explicit TechnicalFactors(const std::array<int, kCount>& values);

  int value(int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::array<int, kCount>& values() const { return values_; }

 private:
  std::array<int, kCount> values_;
};

// Eight environmental ratings, each an integer influence value in 0..5.
// The last two factors carry negative weights (they hurt productivity).
class EnvironmentalFactors {
 public:
  static constexpr int kCount = 8;
  static constexpr std::array<double, kCount> kWeights = {
      1.5, 0.5, 1.0, 0.5, 1.0, 2.0, -1.0, -1.0};

  explicit EnvironmentalFactors(const std::array<int, kCount>& values);

  int value(int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::array<int, kCount>& values() const { return values_; }
  std::array<double, kCount> as_doubles() const;

  bool operator==(const EnvironmentalFactors&) const = default;

 private:
  std::array<int, kCount> values_;
};

enum class UcpMode { Full, NoEf };

struct SizeBreakdown {
  double uaw = 0.0;
  double uucw = 0.0;
  double uucp = 0.0;
  double tcf = 0.0;
  std::optional<double> ef;  // absent in NoEf mode
  double ucp = 0.0;
};

// Use-case complexity from transaction count: <=3 simple, 4..7 average,
// >7 complex.
UseCaseClass classify_use_case(int transaction_count);

double compute_uaw(const ActorCounts& a);
double compute_uucw(const UseCaseCounts& u);

// TCF = 0.6 + 0.01 * sum(f_i * fw_i); range [0.6, 1.35].
double compute_tcf(const TechnicalFactors& t);

// EF = 1.4 - 0.03 * sum(env_i * ew_i); range [0.425, 1.7].
double compute_ef(const EnvironmentalFactors& e);

// Full mode: UCP = UUCP * TCF * EF (environmental factors required).
// NoEf mode: UCP = UUCP * TCF, ef left unset. NoEf is the variant used by
// the dataset-driven workflows in this project.
SizeBreakdown compute_ucp(const ActorCounts& a, const UseCaseCounts& u,
                          const TechnicalFactors& t,
                          const std::optional<EnvironmentalFactors>& e,
                          UcpMode mode);

// PDR = effort / ucp, person-hours per UCP. Both arguments must be positive.
double pdr(double effort, double ucp);

}  // namespace ucpbench
