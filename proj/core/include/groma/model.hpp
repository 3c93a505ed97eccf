#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace groma {

using Label = std::uint32_t;

/// One confidence score per label, indexed by label.
using ConfidenceVector = std::vector<double>;

enum class Activation { Identity, Relu, Sigmoid, Tanh, Softmax };

std::string_view to_string(Activation a) noexcept;

struct DenseLayer {
  std::size_t units = 0;
  std::size_t fan_in = 0;
  // Row-major units x fan_in: weights[j * fan_in + i] couples input i to output unit j.
  std::vector<double> weights;
  std::vector<double> bias;
  Activation activation = Activation::Identity;
};

struct ModelSpec {
  int format_version = 1;
  std::size_t input_dim = 0;
  std::size_t label_count = 0;
  std::vector<DenseLayer> layers;
};

/// Immutable dense feedforward classifier. forward() and classify() are pure
/// and may be called concurrently.
class Model {
 public:
  /// Validates every ModelSpec invariant; throws groma::Error on violation.
  explicit Model(ModelSpec spec);

  std::size_t input_dim() const noexcept { return spec_.input_dim; }
  std::size_t label_count() const noexcept { return spec_.label_count; }
  const ModelSpec& spec() const noexcept { return spec_; }

  ConfidenceVector forward(std::span<const double> x) const;

  /// Argmax of forward(x); ties go to the lowest label index.
  Label classify(std::span<const double> x) const;

 private:
  ModelSpec spec_;
  std::size_t widest_ = 0;
};

/// Parses a GNNF document (JSON text, see README for the schema).
Model load_model(std::string_view gnnf_text);
Model load_model_file(const std::filesystem::path& path);

/// Lowest index among the maximal entries. Empty input yields 0.
Label argmax(std::span<const double> values) noexcept;

}  // namespace groma
