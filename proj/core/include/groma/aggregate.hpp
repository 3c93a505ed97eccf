#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace groma {

enum class AggregationMethod { Mean, Median };

/// How the Hoeffding range b - a is chosen.
enum class RangeConstruction {
  /// Ten sample standard deviations of the plr values (mean +/- 5 sigma).
  PlusMinus5Sigma,
  /// The a priori range of a probability, [0, 1].
  APrioriUnit,
};

std::string_view to_string(AggregationMethod m) noexcept;
std::string_view to_string(RangeConstruction r) noexcept;

struct ErrorBound {
  double tolerance = 0.05;
  double range = 0.0;
  double probability_exceed = 0.0;
  std::size_t n = 0;
};

/// Mean, or lower median for even counts. Throws EmptyInput.
double aggregate(std::span<const double> plrs, AggregationMethod method = AggregationMethod::Mean);

/// Probability that the mean of the plrs deviates from its expectation by
/// more than t. Needs at least two values (EmptyVariance otherwise).
ErrorBound compute_error(std::span<const double> plrs, double t,
                         RangeConstruction range = RangeConstruction::PlusMinus5Sigma);

}  // namespace groma
