#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "groma/data.hpp"
#include "groma/model.hpp"

namespace groma::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(GROMA_FIXTURE_DIR) / name;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("groma_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline DenseLayer dense(std::size_t units, std::size_t fan_in, std::vector<double> weights, std::vector<double> bias,
                        Activation act) {
  return DenseLayer{units, fan_in, std::move(weights), std::move(bias), act};
}

/// Zero weights, softmax over the given biases: the output never depends on x.
inline Model constant_model(std::size_t input_dim, std::vector<double> biases) {
  const std::size_t m = biases.size();
  ModelSpec spec{1, input_dim, m, {}};
  spec.layers.push_back(dense(m, input_dim, std::vector<double>(m * input_dim, 0.0), std::move(biases),
                              Activation::Softmax));
  return Model(std::move(spec));
}

/// 2 inputs, 2 classes: logit0 = w0*x0 + w1*x1 + b, logit1 = 0, softmax.
/// Confidence of label 0 is sigmoid(w0*x0 + w1*x1 + b).
struct LinearPair {
  double w0 = 8.0;
  double w1 = 4.0;
  double b = -5.5;

  Model model() const {
    ModelSpec spec{1, 2, 2, {}};
    spec.layers.push_back(dense(2, 2, {w0, w1, 0.0, 0.0}, {b, 0.0}, Activation::Softmax));
    return Model(std::move(spec));
  }

  /// Independent closed form of the label-0 confidence.
  double p0(double x0, double x1) const { return 1.0 / (1.0 + std::exp(-(w0 * x0 + w1 * x1 + b))); }
};

/// Exhaustive grid over the epsilon-ball around (x0, x1): fraction of the
/// grid points whose label-0 confidence moves by less than delta. No clipping
/// (callers keep the ball inside the domain).
inline double grid_plr_oracle(const LinearPair& lp, double x0, double x1, double eps, double delta,
                              int steps = 200) {
  const double base = lp.p0(x0, x1);
  long hits = 0;
  long total = 0;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      const double u = -eps + 2.0 * eps * i / steps;
      const double v = -eps + 2.0 * eps * j / steps;
      if (std::fabs(lp.p0(x0 + u, x1 + v) - base) < delta) ++hits;
      ++total;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

/// Textbook nested-loop forward pass used as a hand oracle.
inline std::vector<double> oracle_forward(const ModelSpec& spec, std::vector<double> x) {
  for (const auto& layer : spec.layers) {
    std::vector<double> z(layer.units);
    for (std::size_t j = 0; j < layer.units; ++j) {
      long double acc = layer.bias[j];
      for (std::size_t i = 0; i < layer.fan_in; ++i)
        acc += static_cast<long double>(layer.weights[j * layer.fan_in + i]) * x[i];
      z[j] = static_cast<double>(acc);
    }
    switch (layer.activation) {
      case Activation::Relu:
        for (auto& v : z) v = std::max(0.0, v);
        break;
      case Activation::Sigmoid:
        for (auto& v : z) v = 1.0 / (1.0 + std::exp(-v));
        break;
      case Activation::Tanh:
        for (auto& v : z) v = std::tanh(v);
        break;
      case Activation::Softmax: {
        long double sum = 0.0L;
        for (double v : z) sum += std::exp(static_cast<long double>(v));
        for (auto& v : z) v = static_cast<double>(std::exp(static_cast<long double>(v)) / sum);
        break;
      }
      case Activation::Identity:
        break;
    }
    x = std::move(z);
  }
  return x;
}

/// Dataset of `count` copies of label `l` at points spread around `center`.
inline LabeledDataset cluster_dataset(std::size_t count, std::vector<double> center, double spread, Label l,
                                      std::size_t label_count, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> values;
  for (std::size_t i = 0; i < count; ++i)
    for (double c : center) values.push_back(c + u(gen));
  DatasetOptions opts;
  opts.label_count = label_count;
  return LabeledDataset(center.size(), std::move(values), std::vector<Label>(count, l), opts);
}

// 25-digit reference values of the standard normal CDF.
inline const std::vector<std::pair<double, double>> kPhiReference = {
    {-8, 6.220960574271784123515995e-16}, {-6, 9.865876450376981407008641e-10},
    {-5, 2.866515718791939116737523e-07}, {-4, 3.167124183311992125377076e-05},
    {-3, 0.001349898031630094526651815},  {-2.5, 0.006209665325776135166978105},
    {-1.96, 0.02499789514822043621282369}, {-1.5, 0.06680720126885806600449404},
    {-1, 0.1586552539314570514147675},    {-0.5, 0.3085375387259868963622954},
    {-0.1, 0.4601721627229710163310661},  {0, 0.5},
    {0.1, 0.5398278372770289836689339},   {0.5, 0.6914624612740131036377046},
    {1, 0.8413447460685429485852325},     {1.5, 0.933192798731141933995506},
    {1.96, 0.9750021048517795637871763},  {2.5, 0.9937903346742238648330219},
    {4, 0.9999683287581668800787462},     {7, 0.9999999999987201874561142},
};

}  // namespace groma::testing
