#include "groma/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>

#include "digest.hpp"
#include "groma/error.hpp"
#include "groma/perturb.hpp"

namespace groma {

namespace {

constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

std::uint32_t read_be32(std::span<const unsigned char> bytes, std::size_t offset) {
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string row_tag(std::size_t row) { return "row " + std::to_string(row + 1); }

}  // namespace

LabeledDataset::LabeledDataset(std::size_t input_dim, std::vector<double> values, std::vector<Label> labels,
                               const DatasetOptions& options)
    : input_dim_(input_dim),
      domain_lo_(options.domain_lo),
      domain_hi_(options.domain_hi),
      values_(std::move(values)),
      labels_(std::move(labels)) {
  if (!(domain_lo_ <= domain_hi_)) throw Error(ErrorCode::InvalidConfig, "domain_lo must not exceed domain_hi");
  if (values_.size() != labels_.size() * input_dim_)
    throw Error(ErrorCode::CountMismatch, std::to_string(values_.size()) + " values for " +
                                              std::to_string(labels_.size()) + " samples of width " +
                                              std::to_string(input_dim_));
  for (double v : values_)
    if (!(v >= domain_lo_ && v <= domain_hi_))
      throw Error(ErrorCode::OutOfDomainValue, "value " + std::to_string(v) + " outside [" +
                                                   std::to_string(domain_lo_) + ", " + std::to_string(domain_hi_) + "]");

  const Label max_label = labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end());
  if (options.label_count == 0) {
    label_count_ = labels_.empty() ? 0 : std::size_t{max_label} + 1;
  } else {
    label_count_ = options.label_count;
    if (!labels_.empty() && max_label >= label_count_)
      throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(max_label) + " >= label count " +
                                                  std::to_string(label_count_));
  }
}

std::vector<std::size_t> LabeledDataset::members(Label l) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == l) out.push_back(i);
  return out;
}

LabeledDataset load_idx(std::span<const unsigned char> image_bytes, std::span<const unsigned char> label_bytes,
                        const DatasetOptions& options) {
  if (image_bytes.size() < 4 || label_bytes.size() < 4) throw Error(ErrorCode::TruncatedFile, "missing IDX magic");
  if (read_be32(image_bytes, 0) != kIdxImagesMagic)
    throw Error(ErrorCode::BadMagic, "image file magic is not 0x00000803");
  if (read_be32(label_bytes, 0) != kIdxLabelsMagic)
    throw Error(ErrorCode::BadMagic, "label file magic is not 0x00000801");
  if (image_bytes.size() < 16) throw Error(ErrorCode::TruncatedFile, "IDX3 header shorter than 16 bytes");
  if (label_bytes.size() < 8) throw Error(ErrorCode::TruncatedFile, "IDX1 header shorter than 8 bytes");

  const std::uint64_t count = read_be32(image_bytes, 4);
  const std::uint64_t rows = read_be32(image_bytes, 8);
  const std::uint64_t cols = read_be32(image_bytes, 12);
  const std::uint64_t label_count = read_be32(label_bytes, 4);
  const std::uint64_t dim = rows * cols;

  if (image_bytes.size() - 16 < count * dim)
    throw Error(ErrorCode::TruncatedFile, "IDX3 payload holds fewer than " + std::to_string(count) + " images");
  if (label_bytes.size() - 8 < label_count)
    throw Error(ErrorCode::TruncatedFile, "IDX1 payload holds fewer than " + std::to_string(label_count) + " labels");
  if (count != label_count)
    throw Error(ErrorCode::CountMismatch,
                std::to_string(count) + " images but " + std::to_string(label_count) + " labels");

  std::vector<double> values(count * dim);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = image_bytes[16 + i] / 255.0;
  std::vector<Label> labels(label_bytes.begin() + 8, label_bytes.begin() + 8 + static_cast<std::ptrdiff_t>(count));

  LabeledDataset ds(dim, std::move(values), std::move(labels), options);
  std::vector<unsigned char> both(image_bytes.begin(), image_bytes.end());
  both.insert(both.end(), label_bytes.begin(), label_bytes.end());
  ds.set_fingerprint(detail::sha256_hex(both));
  return ds;
}

LabeledDataset load_csv(std::string_view text, const DatasetOptions& options) {
  std::vector<double> values;
  std::vector<Label> labels;
  std::size_t width = 0;
  bool have_width = false;

  std::size_t row = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }

    if (fields.size() < 2)
      throw Error(ErrorCode::RaggedRows, row_tag(row) + ": needs a label and at least one feature");
    if (!have_width) {
      width = fields.size() - 1;
      have_width = true;
    } else if (fields.size() - 1 != width) {
      throw Error(ErrorCode::RaggedRows, row_tag(row) + " has " + std::to_string(fields.size() - 1) +
                                             " features, expected " + std::to_string(width));
    }

    Label label = 0;
    const auto lf = fields[0];
    auto [lp, lec] = std::from_chars(lf.data(), lf.data() + lf.size(), label);
    if (lec != std::errc{} || lp != lf.data() + lf.size())
      throw Error(ErrorCode::NonNumericField, row_tag(row) + ": label '" + std::string(lf) + "'");
    labels.push_back(label);

    for (std::size_t f = 1; f < fields.size(); ++f) {
      const auto field = fields[f];
      double v = 0.0;
      auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || p != field.data() + field.size() || !std::isfinite(v))
        throw Error(ErrorCode::NonNumericField, row_tag(row) + ": field '" + std::string(field) + "'");
      if (!(v >= options.domain_lo && v <= options.domain_hi))
        throw Error(ErrorCode::OutOfDomainValue, row_tag(row) + ": value " + std::string(field) + " outside [" +
                                                     std::to_string(options.domain_lo) + ", " +
                                                     std::to_string(options.domain_hi) + "]");
      values.push_back(v);
    }
    ++row;
  }

  LabeledDataset ds(width, std::move(values), std::move(labels), options);
  const auto* raw = reinterpret_cast<const unsigned char*>(text.data());
  ds.set_fingerprint(detail::sha256_hex({raw, text.size()}));
  return ds;
}

std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

LabeledDataset load_idx_files(const std::filesystem::path& images, const std::filesystem::path& labels,
                              const DatasetOptions& options) {
  const auto img = read_file_bytes(images);
  const auto lab = read_file_bytes(labels);
  return load_idx(img, lab, options);
}

LabeledDataset load_csv_file(const std::filesystem::path& path, const DatasetOptions& options) {
  const auto bytes = read_file_bytes(path);
  return load_csv({reinterpret_cast<const char*>(bytes.data()), bytes.size()}, options);
}

std::vector<unsigned char> encode_idx_images(std::span<const unsigned char> pixels, std::uint32_t count,
                                             std::uint32_t rows, std::uint32_t cols) {
  if (pixels.size() != std::size_t{count} * rows * cols)
    throw Error(ErrorCode::CountMismatch, "pixel buffer does not match count x rows x cols");
  std::vector<unsigned char> out;
  out.reserve(16 + pixels.size());
  write_be32(out, kIdxImagesMagic);
  write_be32(out, count);
  write_be32(out, rows);
  write_be32(out, cols);
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

std::vector<unsigned char> encode_idx_labels(std::span<const unsigned char> labels) {
  std::vector<unsigned char> out;
  out.reserve(8 + labels.size());
  write_be32(out, kIdxLabelsMagic);
  write_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

SampleDraw draw_samples(const LabeledDataset& dataset, Label l, std::size_t n, std::uint64_t seed,
                        bool with_replacement) {
  if (l >= dataset.label_count())
    throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(l) + " not in dataset with " +
                                             std::to_string(dataset.label_count()) + " labels");
  SampleDraw draw;
  draw.label = l;
  if (n == 0) return draw;

  std::vector<std::size_t> pool = dataset.members(l);
  if (pool.empty() || (!with_replacement && pool.size() < n))
    throw Error(ErrorCode::InsufficientSamples, "label " + std::to_string(l) + " has " +
                                                    std::to_string(pool.size()) + " samples, " + std::to_string(n) +
                                                    " requested");

  // The label doubles as the point index so each label gets its own stream.
  RandomStream stream = derive_stream({seed, l, StreamPurpose::SampleDraw});
  draw.source_indices.reserve(n);
  if (with_replacement) {
    for (std::size_t i = 0; i < n; ++i) draw.source_indices.push_back(pool[stream.below(pool.size())]);
  } else {
    // Partial Fisher-Yates: the first n slots become the draw.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i + stream.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      draw.source_indices.push_back(pool[i]);
    }
  }
  draw.points.reserve(n);
  for (std::size_t idx : draw.source_indices) {
    const auto s = dataset.sample(idx);
    draw.points.emplace_back(s.begin(), s.end());
  }
  return draw;
}

}  // namespace groma
