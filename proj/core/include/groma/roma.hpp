#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "groma/model.hpp"
#include "groma/perturb.hpp"
#include "groma/stats.hpp"

namespace groma {

/// Which per-perturbation statistic is collected around a point.
enum class StatisticMode {
  /// s = N(x2)[l] - N(x0)[l]; the robust event is |s| < delta.
  DeltaDeviation,
  /// s = max_{l' != l} N(x2)[l'] - N(x2)[l]; the robust event is s < 0.
  Misclassification,
};

enum class PlrMethod { NormalFit, Empirical, Degenerate };

/// Auto uses the normal fit when Anderson-Darling accepts normality and falls
/// back to the empirical frequency otherwise. ForceEmpirical always counts.
enum class EstimatorPolicy { Auto, ForceEmpirical };

std::string_view to_string(StatisticMode m) noexcept;
std::string_view to_string(PlrMethod m) noexcept;

struct PlrEstimate {
  double plr = 0.0;
  stats::NormalFit fit;
  std::optional<stats::AdResult> ad;
  PlrMethod method = PlrMethod::Empirical;
  bool clamped = false;
};

struct LocalRobustnessResult {
  std::uint64_t point_index = 0;
  double plr = 0.0;
  std::vector<double> statistic_samples;
  stats::NormalFit fit;
  std::optional<stats::AdResult> ad;
  PlrMethod method = PlrMethod::Empirical;
  bool clamped = false;
};

struct RomaParams {
  PerturbationSpec perturbation;
  double delta = 0.07;
  std::size_t k = 1000;
  StatisticMode mode = StatisticMode::DeltaDeviation;
  EstimatorPolicy policy = EstimatorPolicy::Auto;
};

/// Throws InvalidConfig for k == 0, a non-positive delta, or a bad perturbation spec.
void validate(const RomaParams& params);

/// k statistic values from k perturbations of x0 drawn from `stream`.
std::vector<double> collect_statistics(const Model& model, std::span<const double> x0, Label l,
                                       const PerturbationSpec& spec, std::size_t k, StatisticMode mode,
                                       RandomStream& stream);

/// True when a single statistic value counts as robust.
bool robust_event(double s, double delta, StatisticMode mode) noexcept;

PlrEstimate plr_from_statistics(std::span<const double> samples, double delta, StatisticMode mode,
                                EstimatorPolicy policy = EstimatorPolicy::Auto);

/// Probabilistic local robustness of `model` around x0 for label l. The caller
/// is responsible for checking classify(model, x0) == l first.
LocalRobustnessResult local_robustness(const Model& model, std::span<const double> x0, Label l,
                                       const RomaParams& params, RandomStream& stream,
                                       std::uint64_t point_index = 0);

}  // namespace groma
