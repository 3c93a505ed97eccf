#include "groma/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "groma/error.hpp"

namespace groma {

namespace {

using nlohmann::json;

constexpr int kSupportedVersion = 1;

Activation parse_activation(const std::string& name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::Relu;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "tanh") return Activation::Tanh;
  if (name == "softmax") return Activation::Softmax;
  throw Error(ErrorCode::UnknownActivation, "activation '" + name + "'");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::MalformedDocument, where + ": missing field '" + key + "'");
  return *it;
}

std::size_t require_positive(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
    throw Error(ErrorCode::MalformedDocument, where + ": '" + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw Error(ErrorCode::MalformedDocument, where + ": expected a number");
  return v.get<double>();
}

DenseLayer parse_layer(const json& node, std::size_t fan_in, std::size_t index) {
  const std::string where = "layers[" + std::to_string(index) + "]";
  if (!node.is_object()) throw Error(ErrorCode::MalformedDocument, where + ": expected an object");

  const json& type = require(node, "type", where);
  if (!type.is_string() || type.get<std::string>() != "dense")
    throw Error(ErrorCode::MalformedDocument, where + ": only \"dense\" layers are supported");

  DenseLayer layer;
  layer.units = require_positive(node, "units", where);
  layer.fan_in = fan_in;

  const json& act = require(node, "activation", where);
  if (!act.is_string()) throw Error(ErrorCode::MalformedDocument, where + ": activation must be a string");
  layer.activation = parse_activation(act.get<std::string>());

  const json& rows = require(node, "weights", where);
  if (!rows.is_array()) throw Error(ErrorCode::MalformedDocument, where + ": weights must be an array of rows");
  if (rows.size() != layer.units)
    throw Error(ErrorCode::ShapeMismatch, where + ": " + std::to_string(rows.size()) + " weight rows for " +
                                              std::to_string(layer.units) + " units");
  layer.weights.reserve(layer.units * fan_in);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const json& row = rows[j];
    if (!row.is_array()) throw Error(ErrorCode::MalformedDocument, where + ": weight row must be an array");
    if (row.size() != fan_in)
      throw Error(ErrorCode::ShapeMismatch, where + ": weight row " + std::to_string(j) + " has " +
                                                std::to_string(row.size()) + " entries, expected fan-in " +
                                                std::to_string(fan_in));
    for (const json& w : row) layer.weights.push_back(require_number(w, where));
  }

  const json& bias = require(node, "bias", where);
  if (!bias.is_array()) throw Error(ErrorCode::MalformedDocument, where + ": bias must be an array");
  if (bias.size() != layer.units)
    throw Error(ErrorCode::ShapeMismatch, where + ": bias length " + std::to_string(bias.size()) +
                                              " != units " + std::to_string(layer.units));
  for (const json& b : bias) layer.bias.push_back(require_number(b, where));
  return layer;
}

void apply_activation(Activation a, std::span<double> z) {
  switch (a) {
    case Activation::Identity:
      return;
    case Activation::Relu:
      for (double& v : z) v = v > 0.0 ? v : 0.0;
      return;
    case Activation::Sigmoid:
      for (double& v : z) v = 1.0 / (1.0 + std::exp(-v));
      return;
    case Activation::Tanh:
      for (double& v : z) v = std::tanh(v);
      return;
    case Activation::Softmax: {
      const double top = *std::max_element(z.begin(), z.end());
      double sum = 0.0;
      for (double& v : z) {
        v = std::exp(v - top);
        sum += v;
      }
      for (double& v : z) v /= sum;
      return;
    }
  }
}

}  // namespace

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::Identity: return "identity";
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Softmax: return "softmax";
  }
  return "identity";
}

Model::Model(ModelSpec spec) : spec_(std::move(spec)) {
  if (spec_.format_version != kSupportedVersion)
    throw Error(ErrorCode::UnsupportedVersion, "gnnf_version " + std::to_string(spec_.format_version));
  if (spec_.input_dim == 0 || spec_.label_count == 0)
    throw Error(ErrorCode::MalformedDocument, "input_dim and label_count must be positive");
  if (spec_.layers.empty()) throw Error(ErrorCode::MalformedDocument, "model has no layers");

  std::size_t width = spec_.input_dim;
  widest_ = width;
  for (std::size_t k = 0; k < spec_.layers.size(); ++k) {
    const DenseLayer& layer = spec_.layers[k];
    const std::string where = "layers[" + std::to_string(k) + "]";
    if (layer.units == 0) throw Error(ErrorCode::MalformedDocument, where + ": zero units");
    if (layer.fan_in != width)
      throw Error(ErrorCode::ShapeMismatch, where + ": fan-in " + std::to_string(layer.fan_in) +
                                                " does not chain from width " + std::to_string(width));
    if (layer.weights.size() != layer.units * layer.fan_in || layer.bias.size() != layer.units)
      throw Error(ErrorCode::ShapeMismatch, where + ": parameter sizes disagree with units x fan-in");
    if (layer.activation == Activation::Softmax && k + 1 != spec_.layers.size())
      throw Error(ErrorCode::MalformedDocument, where + ": softmax is only allowed on the final layer");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(layer.weights.begin(), layer.weights.end(), finite) ||
        !std::all_of(layer.bias.begin(), layer.bias.end(), finite))
      throw Error(ErrorCode::NonFiniteParameter, where + ": non-finite weight or bias");
    width = layer.units;
    widest_ = std::max(widest_, width);
  }
  if (width != spec_.label_count)
    throw Error(ErrorCode::ShapeMismatch, "final layer width " + std::to_string(width) + " != label_count " +
                                              std::to_string(spec_.label_count));
}

ConfidenceVector Model::forward(std::span<const double> x) const {
  if (x.size() != spec_.input_dim)
    throw Error(ErrorCode::DimensionMismatch, "input has " + std::to_string(x.size()) + " entries, model expects " +
                                                  std::to_string(spec_.input_dim));

  std::vector<double> in(x.begin(), x.end());
  std::vector<double> out;
  in.reserve(widest_);
  out.reserve(widest_);
  for (const DenseLayer& layer : spec_.layers) {
    out.assign(layer.units, 0.0);
    for (std::size_t j = 0; j < layer.units; ++j) {
      const double* row = layer.weights.data() + j * layer.fan_in;
      double acc = layer.bias[j];
      for (std::size_t i = 0; i < layer.fan_in; ++i) acc += row[i] * in[i];
      out[j] = acc;
    }
    apply_activation(layer.activation, out);
    in.swap(out);
  }
  return in;
}

Label Model::classify(std::span<const double> x) const { return argmax(forward(x)); }

Label argmax(std::span<const double> values) noexcept {
  Label best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = static_cast<Label>(i);
  return best;
}

Model load_model(std::string_view gnnf_text) {
  json doc;
  try {
    doc = json::parse(gnnf_text.begin(), gnnf_text.end());
  } catch (const json::out_of_range& e) {
    // A literal such as 1e999 overflows to infinity.
    throw Error(ErrorCode::NonFiniteParameter, e.what());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedDocument, "top level must be an object");

  const json& version = require(doc, "gnnf_version", "document");
  if (!version.is_number_integer()) throw Error(ErrorCode::MalformedDocument, "gnnf_version must be an integer");

  ModelSpec spec;
  spec.format_version = version.get<int>();
  if (spec.format_version != kSupportedVersion)
    throw Error(ErrorCode::UnsupportedVersion, "gnnf_version " + std::to_string(spec.format_version));
  spec.input_dim = require_positive(doc, "input_dim", "document");
  spec.label_count = require_positive(doc, "label_count", "document");

  const json& layers = require(doc, "layers", "document");
  if (!layers.is_array()) throw Error(ErrorCode::MalformedDocument, "layers must be an array");
  std::size_t fan_in = spec.input_dim;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    spec.layers.push_back(parse_layer(layers[k], fan_in, k));
    fan_in = spec.layers.back().units;
  }
  return Model(std::move(spec));
}

Model load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace groma
