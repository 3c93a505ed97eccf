#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "groma/model.hpp"

namespace groma {

struct DatasetOptions {
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  // 0 means "infer as max label + 1".
  std::size_t label_count = 0;
};

/// The representative input set. Samples are stored row-major in one buffer.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::size_t input_dim, std::vector<double> values, std::vector<Label> labels,
                 const DatasetOptions& options);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t label_count() const noexcept { return label_count_; }
  double domain_lo() const noexcept { return domain_lo_; }
  double domain_hi() const noexcept { return domain_hi_; }

  std::span<const double> sample(std::size_t i) const {
    return {values_.data() + i * input_dim_, input_dim_};
  }
  Label label(std::size_t i) const { return labels_[i]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  /// Indices of all samples carrying label l, ascending.
  std::vector<std::size_t> members(Label l) const;

  /// SHA-256 of the source bytes (empty if built in memory).
  const std::string& fingerprint() const noexcept { return fingerprint_; }
  void set_fingerprint(std::string fp) { fingerprint_ = std::move(fp); }

 private:
  std::size_t input_dim_ = 0;
  std::size_t label_count_ = 0;
  double domain_lo_ = 0.0;
  double domain_hi_ = 1.0;
  std::vector<double> values_;
  std::vector<Label> labels_;
  std::string fingerprint_;
};

/// IDX3 unsigned-byte images + IDX1 labels. Pixels are divided by 255 and
/// flattened row-major.
LabeledDataset load_idx(std::span<const unsigned char> image_bytes, std::span<const unsigned char> label_bytes,
                        const DatasetOptions& options = {});

/// Header-less CSV, one row per sample: label, then the feature values.
LabeledDataset load_csv(std::string_view text, const DatasetOptions& options = {});

LabeledDataset load_idx_files(const std::filesystem::path& images, const std::filesystem::path& labels,
                              const DatasetOptions& options = {});
LabeledDataset load_csv_file(const std::filesystem::path& path, const DatasetOptions& options = {});

/// Encodes uint8 images and labels as an IDX3/IDX1 pair.
std::vector<unsigned char> encode_idx_images(std::span<const unsigned char> pixels, std::uint32_t count,
                                             std::uint32_t rows, std::uint32_t cols);
std::vector<unsigned char> encode_idx_labels(std::span<const unsigned char> labels);

struct SampleDraw {
  Label label = 0;
  std::vector<std::size_t> source_indices;
  std::vector<std::vector<double>> points;
};

/// Draws n points uniformly from the samples labelled l. Without replacement
/// unless `with_replacement` is set. The draw is a function of (dataset, l, n, seed).
SampleDraw draw_samples(const LabeledDataset& dataset, Label l, std::size_t n, std::uint64_t seed,
                        bool with_replacement = false);

std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path);

}  // namespace groma
