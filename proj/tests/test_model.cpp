#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "groma/error.hpp"
#include "groma/model.hpp"
#include "groma/perturb.hpp"
#include "test_support.hpp"

namespace groma {
namespace {

using testing::dense;
using testing::fixture;

ErrorCode load_error(const std::string& text) {
  try {
    load_model(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "document loaded without error";
  return ErrorCode::IoError;
}

TEST(LoadModel, IdentityNetwork) {
  const Model m = load_model_file(fixture("identity2.gnnf"));
  EXPECT_EQ(m.label_count(), 2u);
  EXPECT_EQ(m.input_dim(), 2u);
  const auto y = m.forward(std::vector<double>{0.3, 0.7});
  EXPECT_EQ(y, (std::vector<double>{0.3, 0.7}));
}

TEST(LoadModel, RowLengthMismatchIsShapeMismatch) {
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":3,"label_count":3,"layers":[
      {"type":"dense","units":3,"weights":[[1,0],[0,1],[1,1]],"bias":[0,0,0],"activation":"identity"}]})"),
            ErrorCode::ShapeMismatch);
}

TEST(LoadModel, ErrorPaths) {
  EXPECT_EQ(load_error("{not json"), ErrorCode::MalformedDocument);
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":2,"label_count":2})"), ErrorCode::MalformedDocument);
  EXPECT_EQ(load_error(R"({"gnnf_version":2,"input_dim":1,"label_count":1,"layers":[]})"),
            ErrorCode::UnsupportedVersion);
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":1,"label_count":1,"layers":[
      {"type":"dense","units":1,"weights":[[1]],"bias":[0],"activation":"gelu"}]})"),
            ErrorCode::UnknownActivation);
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":1,"label_count":1,"layers":[
      {"type":"dense","units":1,"weights":[[1e999]],"bias":[0],"activation":"identity"}]})"),
            ErrorCode::NonFiniteParameter);
  // Final width must equal label_count.
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":1,"label_count":2,"layers":[
      {"type":"dense","units":1,"weights":[[1]],"bias":[0],"activation":"identity"}]})"),
            ErrorCode::ShapeMismatch);
  // Bias length.
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":1,"label_count":1,"layers":[
      {"type":"dense","units":1,"weights":[[1]],"bias":[0, 1],"activation":"identity"}]})"),
            ErrorCode::ShapeMismatch);
  // Softmax on a hidden layer.
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":1,"label_count":1,"layers":[
      {"type":"dense","units":1,"weights":[[1]],"bias":[0],"activation":"softmax"},
      {"type":"dense","units":1,"weights":[[1]],"bias":[0],"activation":"identity"}]})"),
            ErrorCode::MalformedDocument);
  EXPECT_EQ(load_error(R"({"gnnf_version":1,"input_dim":1,"label_count":1,"layers":[
      {"type":"conv2d","units":1,"weights":[[1]],"bias":[0],"activation":"identity"}]})"),
            ErrorCode::MalformedDocument);
}

TEST(LoadModel, MissingFileIsIoError) {
  try {
    load_model_file(fixture("does_not_exist.gnnf"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

// Frozen from a 40-digit evaluation of the same network.
TEST(Forward, TwoLayerMatchesHandOracle) {
  const Model m = load_model_file(fixture("two_layer.gnnf"));
  const std::vector<double> x{0.2, 0.6, 0.9};
  const auto y = m.forward(x);
  ASSERT_EQ(y.size(), 3u);
  EXPECT_NEAR(y[0], 0.41142526914230726957, 1e-12);
  EXPECT_NEAR(y[1], 0.20687761729994541873, 1e-12);
  EXPECT_NEAR(y[2], 0.38169711355774731171, 1e-12);

  const auto oracle = testing::oracle_forward(m.spec(), x);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(y[i], oracle[i], 1e-12);
  EXPECT_EQ(m.classify(x), 0u);
  EXPECT_EQ(m.classify(x), argmax(oracle));
}

TEST(Forward, SoftmaxValues) {
  ModelSpec spec{1, 3, 3, {}};
  spec.layers.push_back(dense(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, {0, 0, 0}, Activation::Softmax));
  const Model m(spec);
  const auto y = m.forward(std::vector<double>{1, 2, 3});
  EXPECT_NEAR(y[0], 0.09003057, 1e-8);
  EXPECT_NEAR(y[1], 0.24472847, 1e-8);
  EXPECT_NEAR(y[2], 0.66524096, 1e-8);

  const auto half = m.forward(std::vector<double>{0, 0, 0});
  EXPECT_DOUBLE_EQ(half[0], 1.0 / 3.0);

  const Model two = testing::constant_model(1, {0.0, 0.0});
  EXPECT_EQ(two.forward(std::vector<double>{0.4}), (std::vector<double>{0.5, 0.5}));
}

TEST(Forward, SoftmaxIsStableForHugeLogits) {
  ModelSpec spec{1, 1, 2, {}};
  spec.layers.push_back(dense(2, 1, {1000.0, 0.0}, {0.0, 0.0}, Activation::Softmax));
  const auto y = Model(spec).forward(std::vector<double>{1.0});
  EXPECT_TRUE(std::isfinite(y[0]) && std::isfinite(y[1]));
  EXPECT_DOUBLE_EQ(y[0], 1.0);
}

TEST(Forward, Activations) {
  auto single = [](Activation a, double pre) {
    ModelSpec spec{1, 1, 1, {}};
    spec.layers.push_back(dense(1, 1, {1.0}, {0.0}, a));
    return Model(spec).forward(std::vector<double>{pre})[0];
  };
  EXPECT_EQ(single(Activation::Relu, -1.0), 0.0);
  EXPECT_EQ(single(Activation::Relu, 2.5), 2.5);
  EXPECT_DOUBLE_EQ(single(Activation::Sigmoid, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(single(Activation::Tanh, 0.5), std::tanh(0.5));
  EXPECT_EQ(single(Activation::Identity, -3.25), -3.25);
}

TEST(Forward, DimensionMismatch) {
  const Model m = load_model_file(fixture("identity2.gnnf"));
  try {
    m.forward(std::vector<double>{1.0, 2.0, 3.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  EXPECT_THROW(m.classify(std::vector<double>{1.0}), Error);
}

TEST(Classify, ArgmaxAndTies) {
  EXPECT_EQ(argmax(std::vector<double>{0.1, 0.7, 0.2}), 1u);
  EXPECT_EQ(argmax(std::vector<double>{0.5, 0.5}), 0u);
  EXPECT_EQ(argmax(std::vector<double>{0.2, 0.4, 0.4}), 1u);
  EXPECT_EQ(testing::constant_model(2, {0.0, 0.0}).classify(std::vector<double>{0.1, 0.9}), 0u);
}

// Random small networks, random inputs.
class RandomNetworks : public ::testing::Test {
 protected:
  Model random_model(RandomStream& s, Activation hidden, bool softmax_out) {
    const std::size_t n = 1 + s.below(5), h = 1 + s.below(6), m = 2 + s.below(4);
    ModelSpec spec{1, n, m, {}};
    std::vector<double> w1(h * n), b1(h), w2(m * h), b2(m);
    for (auto* v : {&w1, &b1, &w2, &b2})
      for (double& x : *v) x = s.uniform(-2.0, 2.0);
    spec.layers.push_back(dense(h, n, w1, b1, hidden));
    spec.layers.push_back(dense(m, h, w2, b2, softmax_out ? Activation::Softmax : Activation::Identity));
    return Model(spec);
  }
  std::vector<double> random_input(RandomStream& s, std::size_t n) {
    std::vector<double> x(n);
    for (double& v : x) v = s.uniform();
    return x;
  }
};

TEST_F(RandomNetworks, DeterministicAndNormalized) {
  RandomStream s(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const Model m = random_model(s, trial % 2 ? Activation::Tanh : Activation::Relu, true);
    const auto x = random_input(s, m.input_dim());
    const auto y1 = m.forward(x);
    const auto y2 = m.forward(x);
    ASSERT_EQ(y1, y2);  // bit-identical
    const double sum = std::accumulate(y1.begin(), y1.end(), 0.0);
    ASSERT_NEAR(sum, 1.0, 1e-9);
    for (double v : y1) ASSERT_GT(v, 0.0);
    const auto oracle = testing::oracle_forward(m.spec(), x);
    for (std::size_t i = 0; i < y1.size(); ++i) ASSERT_NEAR(y1[i], oracle[i], 1e-12);
  }
}

TEST_F(RandomNetworks, SoftmaxShiftInvariance) {
  RandomStream s(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Model m = random_model(s, Activation::Sigmoid, true);
    ModelSpec shifted = m.spec();
    const double c = s.uniform(-50.0, 50.0);
    for (double& b : shifted.layers.back().bias) b += c;
    const Model m2(shifted);
    const auto x = random_input(s, m.input_dim());
    const auto y1 = m.forward(x);
    const auto y2 = m2.forward(x);
    for (std::size_t i = 0; i < y1.size(); ++i) ASSERT_NEAR(y1[i], y2[i], 1e-12);
  }
}

TEST_F(RandomNetworks, ClassifyInvariantUnderMonotoneMaps) {
  RandomStream s(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Model m = random_model(s, Activation::Relu, false);
    const auto y = m.forward(random_input(s, m.input_dim()));
    std::vector<double> cubed(y), exped(y);
    for (double& v : cubed) v = v * v * v + 3.0;
    for (double& v : exped) v = std::exp(v / 4.0);
    ASSERT_EQ(argmax(y), argmax(cubed));
    ASSERT_EQ(argmax(y), argmax(exped));
  }
}

}  // namespace
}  // namespace groma
