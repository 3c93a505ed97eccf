#include "groma/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "groma/error.hpp"

namespace groma::stats {

NormalFit fit_normal(std::span<const double> samples) {
  if (samples.empty()) throw Error(ErrorCode::EmptySample, "cannot fit a normal to zero samples");
  double sum = 0.0;
  for (double s : samples) {
    if (!std::isfinite(s)) throw Error(ErrorCode::NonFiniteInput, "sample contains a non-finite value");
    sum += s;
  }
  const auto n = samples.size();
  NormalFit fit;
  fit.n = n;
  fit.mu = sum / static_cast<double>(n);

  // When every sample is identical the mean can still differ from it by an
  // ulp; report sigma = 0 exactly in that case.
  const bool constant = std::all_of(samples.begin(), samples.end(), [&](double s) { return s == samples[0]; });
  if (constant) {
    fit.mu = samples[0];
    return fit;
  }
  double ss = 0.0;
  for (double s : samples) ss += (s - fit.mu) * (s - fit.mu);
  fit.sigma = std::sqrt(ss / static_cast<double>(n - 1));
  return fit;
}

double phi(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_cdf(double x, const NormalFit& fit) noexcept {
  if (fit.sigma == 0.0) return x < fit.mu ? 0.0 : 1.0;
  return phi((x - fit.mu) / fit.sigma);
}

AdResult anderson_darling_normal(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < kAdMinSamples)
    throw Error(ErrorCode::TooFewSamples, "Anderson-Darling needs at least 8 samples, got " + std::to_string(n));
  const NormalFit fit = fit_normal(samples);
  if (fit.sigma == 0.0) throw Error(ErrorCode::DegenerateSample, "all samples are equal");

  std::vector<double> y(samples.begin(), samples.end());
  for (double& v : y) v = (v - fit.mu) / fit.sigma;
  std::sort(y.begin(), y.end());

  constexpr double kLo = 1e-300;
  constexpr double kHi = 1.0 - 1e-16;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lower = std::clamp(phi(y[i]), kLo, kHi);
    // 1 - Phi(y) evaluated as Phi(-y) to keep precision in the upper tail.
    const double upper = std::clamp(phi(-y[n - 1 - i]), kLo, kHi);
    acc += static_cast<double>(2 * i + 1) * (std::log(lower) + std::log(upper));
  }
  const double nd = static_cast<double>(n);

  AdResult r;
  r.n = n;
  r.alpha = kAdAlpha;
  r.a2 = -nd - acc / nd;
  r.a2_star = r.a2 * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
  r.reject = r.a2_star > kAdCritical;
  return r;
}

double hoeffding_tail(std::size_t n, double t, double range) noexcept {
  if (range == 0.0) return 0.0;
  if (t == 0.0) return 1.0;
  const double p = 2.0 * std::exp(-2.0 * static_cast<double>(n) * t * t / (range * range));
  return std::min(1.0, p);
}

}  // namespace groma::stats
