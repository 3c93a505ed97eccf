#include "groma/roma.hpp"

#include <algorithm>
#include <cmath>

#include "groma/error.hpp"

namespace groma {

std::string_view to_string(StatisticMode m) noexcept {
  return m == StatisticMode::DeltaDeviation ? "delta_deviation" : "misclassification";
}

std::string_view to_string(PlrMethod m) noexcept {
  switch (m) {
    case PlrMethod::NormalFit: return "normal_fit";
    case PlrMethod::Empirical: return "empirical";
    case PlrMethod::Degenerate: return "degenerate";
  }
  return "empirical";
}

void validate(const RomaParams& params) {
  validate(params.perturbation);
  if (params.k == 0) throw Error(ErrorCode::InvalidConfig, "k must be at least 1");
  if (!(params.delta > 0.0) || !std::isfinite(params.delta))
    throw Error(ErrorCode::InvalidConfig, "delta must be a finite positive number");
}

std::vector<double> collect_statistics(const Model& model, std::span<const double> x0, Label l,
                                       const PerturbationSpec& spec, std::size_t k, StatisticMode mode,
                                       RandomStream& stream) {
  if (l >= model.label_count())
    throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(l) + " >= label count " +
                                             std::to_string(model.label_count()));
  const double base = mode == StatisticMode::DeltaDeviation ? model.forward(x0)[l] : 0.0;

  std::vector<double> x2(x0.size());
  std::vector<double> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    sample_perturbation(x0, spec, stream, x2);
    const ConfidenceVector y = model.forward(x2);
    if (mode == StatisticMode::DeltaDeviation) {
      out.push_back(y[l] - base);
    } else {
      double other = -INFINITY;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (j != l) other = std::max(other, y[j]);
      // A single-label model has no competitor and can never be misclassified.
      out.push_back(y.size() == 1 ? -y[l] - 1.0 : other - y[l]);
    }
  }
  return out;
}

bool robust_event(double s, double delta, StatisticMode mode) noexcept {
  return mode == StatisticMode::DeltaDeviation ? std::fabs(s) < delta : s < 0.0;
}

PlrEstimate plr_from_statistics(std::span<const double> samples, double delta, StatisticMode mode,
                                EstimatorPolicy policy) {
  if (samples.empty()) throw Error(ErrorCode::EmptySample, "no statistic samples");

  PlrEstimate est;
  est.fit = stats::fit_normal(samples);

  if (est.fit.sigma == 0.0) {
    est.method = PlrMethod::Degenerate;
    est.plr = robust_event(est.fit.mu, delta, mode) ? 1.0 : 0.0;
    return est;
  }

  if (samples.size() >= stats::kAdMinSamples) est.ad = stats::anderson_darling_normal(samples);

  double raw;
  if (policy == EstimatorPolicy::Auto && est.ad && !est.ad->reject) {
    est.method = PlrMethod::NormalFit;
    if (mode == StatisticMode::DeltaDeviation)
      raw = stats::normal_cdf(delta, est.fit) - stats::normal_cdf(-delta, est.fit);
    else
      raw = stats::normal_cdf(0.0, est.fit);
  } else {
    est.method = PlrMethod::Empirical;
    const auto hits = std::count_if(samples.begin(), samples.end(),
                                    [&](double s) { return robust_event(s, delta, mode); });
    raw = static_cast<double>(hits) / static_cast<double>(samples.size());
  }
  est.plr = std::clamp(raw, 0.0, 1.0);
  est.clamped = est.plr != raw;
  return est;
}

LocalRobustnessResult local_robustness(const Model& model, std::span<const double> x0, Label l,
                                       const RomaParams& params, RandomStream& stream, std::uint64_t point_index) {
  validate(params);
  LocalRobustnessResult r;
  r.point_index = point_index;
  r.statistic_samples = collect_statistics(model, x0, l, params.perturbation, params.k, params.mode, stream);
  PlrEstimate est = plr_from_statistics(r.statistic_samples, params.delta, params.mode, params.policy);
  r.plr = est.plr;
  r.fit = est.fit;
  r.ad = est.ad;
  r.method = est.method;
  r.clamped = est.clamped;
  return r;
}

}  // namespace groma
