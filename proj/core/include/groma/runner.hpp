#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "groma/aggregate.hpp"
#include "groma/data.hpp"
#include "groma/error.hpp"
#include "groma/model.hpp"
#include "groma/roma.hpp"

namespace groma {

enum class DataFormat { Idx, Csv };

std::string_view to_string(DataFormat f) noexcept;

/// Every knob of a run. Defaults reproduce the reference configuration:
/// 100 points per label, epsilon 0.04, delta 0.07, tolerance 0.05.
struct RunConfig {
  std::filesystem::path model_path;
  std::filesystem::path data_path;    // CSV file, or IDX3 images
  std::filesystem::path label_path;   // IDX1 labels (IDX only)
  DataFormat data_format = DataFormat::Idx;
  std::optional<std::vector<Label>> labels;  // unset: every model label

  std::size_t n = 100;
  std::size_t k = 1000;
  double epsilon = 0.04;
  double delta = 0.07;
  std::uint64_t seed = 0;
  StatisticMode mode = StatisticMode::DeltaDeviation;
  AggregationMethod method = AggregationMethod::Mean;
  double tolerance = 0.05;
  RangeConstruction range_construction = RangeConstruction::PlusMinus5Sigma;
  bool clip = true;
  bool with_replacement = false;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  EstimatorPolicy policy = EstimatorPolicy::Auto;
  bool per_point = false;

  // Execution only; never affects results.
  unsigned workers = 1;
  std::ostream* progress = nullptr;
};

/// Throws InvalidConfig when an invariant (n, k >= 1; epsilon >= 0;
/// delta, tolerance > 0; workers >= 1) is violated.
void validate(const RunConfig& config);

RomaParams roma_params(const RunConfig& config);

/// Key of the perturbation substream for the i-th drawn point of label l.
StreamKey perturbation_key(std::uint64_t seed, Label l, std::size_t draw_position) noexcept;

struct PointSummary {
  std::size_t draw_position = 0;
  std::size_t source_index = 0;
  bool classified_correctly = false;
  double plr = 0.0;
  PlrMethod method = PlrMethod::Empirical;
  double mu = 0.0;
  double sigma = 0.0;
  std::optional<double> a2_star;
  bool ad_reject = false;
};

struct LabelFailure {
  ErrorCode code;
  std::string message;
};

struct LabelReport {
  Label label = 0;
  std::optional<double> pgcr;
  std::optional<ErrorBound> error;  // absent for median, n_used < 2, or failure
  std::size_t n_requested = 0;
  std::size_t n_used = 0;
  std::size_t n_skipped_misclassified = 0;
  std::size_t normality_reject_count = 0;
  std::size_t degenerate_count = 0;
  std::size_t clamped_count = 0;
  std::vector<double> plrs;  // in draw order, correctly classified points only
  std::vector<PointSummary> per_point;
  std::optional<LabelFailure> failure;
  double wall_seconds = 0.0;
};

struct PGCRReport {
  RunConfig config;
  std::string tool_version;
  std::string model_fingerprint;
  std::string dataset_fingerprint;
  std::size_t dataset_size = 0;
  std::size_t input_dim = 0;
  std::size_t label_count = 0;
  std::size_t model_layers = 0;
  std::vector<LabelReport> labels;

  bool all_succeeded() const noexcept;
};

std::string_view tool_version() noexcept;

/// One label of the algorithm: draw n points, skip the misclassified ones,
/// estimate plr per point, aggregate, bound the error. AllPointsMisclassified
/// is recorded in the returned entry; draw and shape errors are thrown.
LabelReport run_label(const Model& model, const LabeledDataset& dataset, Label l, const RunConfig& config);

/// Every requested label against in-memory inputs. Per-label failures are
/// recorded in that label's entry.
PGCRReport run_groma(const Model& model, const LabeledDataset& dataset, const RunConfig& config);

/// Loads the model and dataset named in config, then runs every label.
PGCRReport run_groma(const RunConfig& config);

}  // namespace groma
