#pragma once

#include <cstddef>
#include <span>

namespace groma::stats {

struct NormalFit {
  double mu = 0.0;
  double sigma = 0.0;  // sample standard deviation, (n - 1) denominator
  std::size_t n = 0;
};

/// Mean and unbiased standard deviation. sigma is 0 for a single sample and
/// exactly 0 whenever all samples are equal.
NormalFit fit_normal(std::span<const double> samples);

/// Standard normal CDF.
double phi(double z) noexcept;

/// CDF of N(mu, sigma^2); a unit step at mu when sigma == 0.
double normal_cdf(double x, const NormalFit& fit) noexcept;

/// Anderson-Darling test of normality with both parameters estimated.
struct AdResult {
  double a2 = 0.0;       // raw statistic
  double a2_star = 0.0;  // small-sample corrected statistic
  bool reject = false;
  double alpha = 0.05;
  std::size_t n = 0;
};

inline constexpr std::size_t kAdMinSamples = 8;
inline constexpr double kAdAlpha = 0.05;
inline constexpr double kAdCritical = 0.752;

/// Throws TooFewSamples for n < 8 and DegenerateSample when sigma == 0.
AdResult anderson_darling_normal(std::span<const double> samples);

/// Hoeffding's two-sided tail bound min(1, 2 exp(-2 n t^2 / range^2)).
/// A zero range yields 0; a zero tolerance yields 1.
double hoeffding_tail(std::size_t n, double t, double range) noexcept;

}  // namespace groma::stats
