#include "groma/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "digest.hpp"

#ifndef GROMA_VERSION
#define GROMA_VERSION "0.0.0"
#endif

namespace groma {

std::string_view to_string(DataFormat f) noexcept { return f == DataFormat::Idx ? "idx" : "csv"; }

std::string_view tool_version() noexcept { return GROMA_VERSION; }

bool PGCRReport::all_succeeded() const noexcept {
  for (const auto& l : labels)
    if (l.failure || !l.pgcr) return false;
  return true;
}

void validate(const RunConfig& config) {
  if (config.n == 0) throw Error(ErrorCode::InvalidConfig, "n must be at least 1");
  if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance))
    throw Error(ErrorCode::InvalidConfig, "tolerance must be a finite positive number");
  if (config.workers == 0) throw Error(ErrorCode::InvalidConfig, "workers must be at least 1");
  validate(roma_params(config));
}

RomaParams roma_params(const RunConfig& config) {
  RomaParams p;
  p.perturbation = {config.epsilon, config.domain_lo, config.domain_hi, config.clip};
  p.delta = config.delta;
  p.k = config.k;
  p.mode = config.mode;
  p.policy = config.policy;
  return p;
}

StreamKey perturbation_key(std::uint64_t seed, Label l, std::size_t draw_position) noexcept {
  return {seed, (std::uint64_t{l} << 32) | static_cast<std::uint32_t>(draw_position), StreamPurpose::Perturbation};
}

namespace {

struct PointOutcome {
  bool classified = false;
  std::optional<LocalRobustnessResult> result;
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

LabelReport run_label(const Model& model, const LabeledDataset& dataset, Label l, const RunConfig& config) {
  validate(config);
  if (dataset.input_dim() != model.input_dim())
    throw Error(ErrorCode::DimensionMismatch, "dataset width " + std::to_string(dataset.input_dim()) +
                                                  " != model input_dim " + std::to_string(model.input_dim()));
  if (l >= model.label_count())
    throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(l) + " >= model label count " +
                                             std::to_string(model.label_count()));

  const auto started = std::chrono::steady_clock::now();
  LabelReport report;
  report.label = l;

  const SampleDraw draw = draw_samples(dataset, l, config.n, config.seed, config.with_replacement);
  report.n_requested = draw.points.size();

  const RomaParams params = roma_params(config);
  std::vector<PointOutcome> outcomes(draw.points.size());
  std::mutex progress_mutex;

  parallel_for(draw.points.size(), config.workers, [&](std::size_t i) {
    const auto& x0 = draw.points[i];
    PointOutcome& slot = outcomes[i];
    slot.classified = model.classify(x0) == l;
    if (slot.classified) {
      RandomStream stream = derive_stream(perturbation_key(config.seed, l, i));
      slot.result = local_robustness(model, x0, l, params, stream, i);
    }
    if (config.progress) {
      std::lock_guard lock(progress_mutex);
      *config.progress << "label " << l << " point " << i + 1 << "/" << draw.points.size();
      if (slot.result)
        *config.progress << " plr=" << slot.result->plr << " (" << to_string(slot.result->method) << ")\n";
      else
        *config.progress << " skipped: misclassified\n";
    }
  });

  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const PointOutcome& o = outcomes[i];
    if (config.per_point) {
      PointSummary s;
      s.draw_position = i;
      s.source_index = draw.source_indices[i];
      s.classified_correctly = o.classified;
      if (o.result) {
        s.plr = o.result->plr;
        s.method = o.result->method;
        s.mu = o.result->fit.mu;
        s.sigma = o.result->fit.sigma;
        if (o.result->ad) {
          s.a2_star = o.result->ad->a2_star;
          s.ad_reject = o.result->ad->reject;
        }
      }
      report.per_point.push_back(s);
    }
    if (!o.classified) {
      ++report.n_skipped_misclassified;
      continue;
    }
    ++report.n_used;
    report.plrs.push_back(o.result->plr);
    if (o.result->ad && o.result->ad->reject) ++report.normality_reject_count;
    if (o.result->method == PlrMethod::Degenerate) ++report.degenerate_count;
    if (o.result->clamped) ++report.clamped_count;
  }

  if (report.n_used == 0) {
    if (report.n_requested > 0)
      report.failure = LabelFailure{ErrorCode::AllPointsMisclassified,
                                    "none of the " + std::to_string(report.n_requested) + " drawn points of label " +
                                        std::to_string(l) + " is classified as " + std::to_string(l)};
  } else {
    report.pgcr = aggregate(report.plrs, config.method);
    if (config.method == AggregationMethod::Mean && report.n_used >= 2)
      report.error = compute_error(report.plrs, config.tolerance, config.range_construction);
  }

  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

PGCRReport run_groma(const Model& model, const LabeledDataset& dataset, const RunConfig& config) {
  validate(config);
  if (dataset.input_dim() != model.input_dim() && dataset.size() > 0)
    throw Error(ErrorCode::DimensionMismatch, "dataset width " + std::to_string(dataset.input_dim()) +
                                                  " != model input_dim " + std::to_string(model.input_dim()));

  PGCRReport report;
  report.config = config;
  report.config.progress = nullptr;
  report.tool_version = tool_version();
  report.dataset_fingerprint = dataset.fingerprint();
  report.dataset_size = dataset.size();
  report.input_dim = model.input_dim();
  report.label_count = model.label_count();
  report.model_layers = model.spec().layers.size();

  std::vector<Label> labels;
  if (config.labels) {
    labels = *config.labels;
  } else {
    for (std::size_t l = 0; l < model.label_count(); ++l) labels.push_back(static_cast<Label>(l));
  }

  for (Label l : labels) {
    try {
      report.labels.push_back(run_label(model, dataset, l, config));
    } catch (const Error& e) {
      LabelReport failed;
      failed.label = l;
      failed.failure = LabelFailure{e.code(), e.what()};
      report.labels.push_back(std::move(failed));
    }
  }
  return report;
}

PGCRReport run_groma(const RunConfig& config) {
  validate(config);
  if (config.data_format == DataFormat::Idx && config.label_path.empty())
    throw Error(ErrorCode::InvalidConfig, "IDX data needs a label file");
  const auto model_bytes = read_file_bytes(config.model_path);
  const Model model = load_model({reinterpret_cast<const char*>(model_bytes.data()), model_bytes.size()});

  DatasetOptions opts;
  opts.domain_lo = config.domain_lo;
  opts.domain_hi = config.domain_hi;
  opts.label_count = model.label_count();
  const LabeledDataset dataset = config.data_format == DataFormat::Csv
                                     ? load_csv_file(config.data_path, opts)
                                     : load_idx_files(config.data_path, config.label_path, opts);

  PGCRReport report = run_groma(model, dataset, config);
  report.model_fingerprint = detail::sha256_hex(model_bytes);
  return report;
}

}  // namespace groma
