#include "groma/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "groma/error.hpp"
#include "groma/stats.hpp"

namespace groma {

std::string_view to_string(AggregationMethod m) noexcept { return m == AggregationMethod::Mean ? "mean" : "median"; }

std::string_view to_string(RangeConstruction r) noexcept {
  return r == RangeConstruction::PlusMinus5Sigma ? "plus_minus_5_sigma" : "a_priori_unit";
}

double aggregate(std::span<const double> plrs, AggregationMethod method) {
  if (plrs.empty()) throw Error(ErrorCode::EmptyInput, "no plr values to aggregate");
  if (method == AggregationMethod::Mean) {
    double sum = 0.0;
    for (double p : plrs) sum += p;
    return std::clamp(sum / static_cast<double>(plrs.size()), 0.0, 1.0);
  }
  std::vector<double> sorted(plrs.begin(), plrs.end());
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>((sorted.size() - 1) / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  return *mid;
}

ErrorBound compute_error(std::span<const double> plrs, double t, RangeConstruction range) {
  if (plrs.empty()) throw Error(ErrorCode::EmptyInput, "no plr values");
  if (plrs.size() < 2) throw Error(ErrorCode::EmptyVariance, "an error bound needs at least two plr values");
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidConfig, "tolerance must be positive");

  ErrorBound e;
  e.tolerance = t;
  e.n = plrs.size();
  e.range = range == RangeConstruction::APrioriUnit ? 1.0 : 10.0 * stats::fit_normal(plrs).sigma;
  e.probability_exceed = stats::hoeffding_tail(e.n, t, e.range);
  return e;
}

}  // namespace groma
