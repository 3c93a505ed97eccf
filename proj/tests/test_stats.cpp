#include <gtest/gtest.h>

#include <cmath>
#include <utility>

#include "groma/error.hpp"
#include "groma/perturb.hpp"
#include "groma/stats.hpp"
#include "test_support.hpp"

namespace groma::stats {
namespace {

std::vector<double> normal_draws(std::uint64_t seed, std::size_t n, double mu = 0.0, double sigma = 1.0) {
  RandomStream s(seed);
  std::vector<double> out(n);
  for (double& v : out) v = mu + sigma * s.normal();
  return out;
}

TEST(FitNormal, Examples) {
  const auto a = fit_normal(std::vector<double>{1, 1, 1});
  EXPECT_EQ(a.mu, 1.0);
  EXPECT_EQ(a.sigma, 0.0);
  EXPECT_EQ(a.n, 3u);

  const auto b = fit_normal(std::vector<double>{0, 2});
  EXPECT_EQ(b.mu, 1.0);
  EXPECT_DOUBLE_EQ(b.sigma, std::sqrt(2.0));

  EXPECT_EQ(fit_normal(std::vector<double>{4.5}).sigma, 0.0);
  // Equal values whose sum is inexact still give sigma == 0 exactly.
  EXPECT_EQ(fit_normal(std::vector<double>(7, 0.1)).sigma, 0.0);
}

TEST(FitNormal, SeededStandardNormal) {
  const auto fit = fit_normal(normal_draws(17, 10000));
  EXPECT_NEAR(fit.mu, 0.0, 0.05);
  EXPECT_NEAR(fit.sigma, 1.0, 0.05);
}

TEST(FitNormal, Errors) {
  EXPECT_THROW(fit_normal(std::vector<double>{}), Error);
  try {
    fit_normal(std::vector<double>{1.0, NAN});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteInput);
  }
}

TEST(FitNormal, Equivariance) {
  RandomStream gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = normal_draws(trial, 2 + gen.below(50), gen.uniform(-3, 3), gen.uniform(0.1, 4));
    const double shift = gen.uniform(-10, 10), scale = gen.uniform(-5, 5);
    std::vector<double> shifted(x), scaled(x);
    for (double& v : shifted) v += shift;
    for (double& v : scaled) v *= scale;
    const auto f = fit_normal(x), fs = fit_normal(shifted), fc = fit_normal(scaled);
    ASSERT_NEAR(fs.mu, f.mu + shift, 1e-9);
    ASSERT_NEAR(fs.sigma, f.sigma, 1e-9);
    ASSERT_NEAR(fc.mu, f.mu * scale, 1e-9);
    ASSERT_NEAR(fc.sigma, f.sigma * std::fabs(scale), 1e-9);
  }
}

TEST(NormalCdf, Examples) {
  const NormalFit unit{0.0, 1.0, 10};
  EXPECT_EQ(normal_cdf(0.0, unit), 0.5);
  EXPECT_EQ(normal_cdf(3.0, NormalFit{3.0, 2.0, 10}), 0.5);
  EXPECT_NEAR(normal_cdf(1.96, unit), 0.9750021049, 1e-8);
  const NormalFit step{2.0, 0.0, 3};
  EXPECT_EQ(normal_cdf(1.0, step), 0.0);
  EXPECT_EQ(normal_cdf(2.0, step), 1.0);
  EXPECT_EQ(normal_cdf(2.5, step), 1.0);
}

TEST(NormalCdf, MatchesHighPrecisionReference) {
  for (const auto& [z, p] : testing::kPhiReference) EXPECT_NEAR(phi(z), p, 1e-12) << "z = " << z;
}

TEST(NormalCdf, MonotoneAndBounded) {
  double prev = 0.0;
  for (double z = -40.0; z <= 40.0; z += 0.01) {
    const double p = phi(z);
    ASSERT_GE(p, prev);
    ASSERT_GE(p, 0.0);
    ASSERT_LE(p, 1.0);
    prev = p;
  }
}

std::vector<double> normal_quantiles(std::size_t n) {
  // Inverse CDF by bisection on phi; accurate to ~1e-15.
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double target = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    double lo = -10, hi = 10;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (phi(mid) < target ? lo : hi) = mid;
    }
    q[i] = 0.5 * (lo + hi);
  }
  return q;
}

TEST(AndersonDarling, NormalQuantilesAccepted) {
  const auto r = anderson_darling_normal(normal_quantiles(20));
  EXPECT_FALSE(r.reject);
  EXPECT_EQ(r.n, 20u);
  EXPECT_EQ(r.alpha, 0.05);
  // Reference A^2 for this sample from an independent statistics package.
  EXPECT_NEAR(r.a2, 0.04426732106334086, 1e-9);
  EXPECT_NEAR(r.a2_star, 0.04426732106334086 * (1 + 0.75 / 20 + 2.25 / 400), 1e-9);
}

TEST(AndersonDarling, UniformRejected) {
  RandomStream s(500);
  std::vector<double> x(500);
  for (double& v : x) v = s.uniform();
  EXPECT_TRUE(anderson_darling_normal(x).reject);
}

TEST(AndersonDarling, Errors) {
  try {
    anderson_darling_normal(std::vector<double>{1, 2, 3, 4, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewSamples);
  }
  try {
    anderson_darling_normal(std::vector<double>(10, 3.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateSample);
  }
}

TEST(AndersonDarling, AffineInvariance) {
  RandomStream gen(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = normal_draws(100 + trial, 8 + gen.below(200));
    std::vector<double> y(x);
    const double a = gen.uniform(0.1, 10) * (gen.below(2) ? 1 : -1), b = gen.uniform(-5, 5);
    for (double& v : y) v = a * v + b;
    ASSERT_NEAR(anderson_darling_normal(x).a2_star, anderson_darling_normal(y).a2_star, 1e-9);
  }
}

TEST(AndersonDarling, ExtremeOutlierStaysFinite) {
  std::vector<double> x = normal_draws(4, 50);
  x.push_back(1e6);
  const auto r = anderson_darling_normal(x);
  EXPECT_TRUE(std::isfinite(r.a2_star));
  EXPECT_TRUE(r.reject);
}

TEST(AndersonDarling, CalibrationAtNominalLevel) {
  int rejects = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial)
    rejects += anderson_darling_normal(normal_draws(10000 + trial, 100)).reject ? 1 : 0;
  const double rate = rejects / 1000.0;
  EXPECT_GE(rate, 0.02);
  EXPECT_LE(rate, 0.08);
}

TEST(Hoeffding, Examples) {
  // 2 exp(-12.5), evaluated at 40 digits.
  EXPECT_NEAR(hoeffding_tail(100, 0.05, 0.2), 7.4533063441573419858e-6, 7.4533063441573419858e-6 * 1e-9);
  EXPECT_EQ(hoeffding_tail(100, 0.0, 0.2), 1.0);
  EXPECT_EQ(hoeffding_tail(100, 0.05, 0.0), 0.0);
  EXPECT_EQ(hoeffding_tail(1, 0.01, 1.0), 1.0);  // capped
}

TEST(Hoeffding, Monotonicity) {
  RandomStream s(6);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + s.below(500);
    const double t = s.uniform(0.001, 0.3), r = s.uniform(0.001, 1.0);
    const double p = hoeffding_tail(n, t, r);
    ASSERT_GE(p, 0.0);
    ASSERT_LE(p, 1.0);
    ASSERT_LE(hoeffding_tail(n + 1 + s.below(100), t, r), p);
    ASSERT_LE(hoeffding_tail(n, t * s.uniform(1.0, 2.0), r), p);
    ASSERT_GE(hoeffding_tail(n, t, r * s.uniform(1.0, 2.0)), p);
  }
}

}  // namespace
}  // namespace groma::stats
