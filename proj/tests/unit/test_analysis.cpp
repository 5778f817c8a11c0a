// Copyright 2026 The phaseflip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "phaseflip/analysis.hpp"
#include "phaseflip/errors.hpp"
#include "phaseflip/rng.hpp"

namespace phaseflip {
namespace {

const GammaModelParams kPrinted{0.272, 0.394, 0.37};

DecayCurve exact_curve(const ModelFunction& m, const std::vector<double>& params, const std::vector<double>& xs,
                       std::uint64_t shots = 1000) {
  DecayCurve c{"synthetic", {}};
  for (double x : xs) {
    const double y = m.value(x, params);
    c.points.push_back({x, y, binomial_error(y, shots), shots});
  }
  return c;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

// Crossing located by scanning the model itself for a sign change.
double scanned_crossing(double epsilon) {
  auto diff = [&](double p) { return gamma_model(p, {1.0, 0.0, epsilon}) - (0.95 - 0.93 * p); };
  double lo = 1e-6;
  for (double p = 1e-3; p < 1.0 - 1e-3; p += 1e-3) {
    if ((diff(lo) > 0.0) != (diff(p) > 0.0)) {
      double a = lo;
      double b = p;
      for (int i = 0; i < 100; ++i) {
        const double m = 0.5 * (a + b);
        ((diff(a) > 0.0) == (diff(m) > 0.0) ? a : b) = m;
      }
      return 0.5 * (a + b);
    }
    lo = p;
  }
  return NAN;
}

TEST(GammaModels, IdealAndLinearEndpoints) {
  EXPECT_DOUBLE_EQ(gamma_ideal(0.0), 1.0);
  EXPECT_DOUBLE_EQ(gamma_ideal(0.5), 0.5);
  EXPECT_DOUBLE_EQ(gamma_ideal(1.0), 0.0);
  EXPECT_NEAR(gamma_ideal(0.3), 0.784, 1e-15);
  EXPECT_DOUBLE_EQ(gamma_linear(0.25), 0.75);
}

TEST(GammaModels, IdealBeatsLinearBelowHalf) {
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    const double gap = gamma_ideal(p) - gamma_linear(p);
    EXPECT_NEAR(gap, p * (1.0 - p) * (1.0 - 2.0 * p), 1e-14);
    if (p <= 0.5) EXPECT_GE(gap, -1e-15);
    EXPECT_NEAR(gamma_ideal(p) + gamma_ideal(1.0 - p), 1.0, 1e-14);
  }
}

TEST(GammaModels, PrintedFitAtZero) {
  EXPECT_NEAR(gamma_model(0.0, kPrinted), 0.6524, 5e-4);
  EXPECT_NEAR(gamma_model(0.0, kPrinted), 0.394 + 0.272 * 0.95, 1e-15);
}

TEST(GammaModels, ZeroEpsilonIsAffineInIdeal) {
  const GammaModelParams p0{0.5, 0.2, 0.0};
  for (double p = 0.0; p <= 1.0; p += 0.05) {
    EXPECT_NEAR(gamma_model(p, p0), 0.2 + 0.5 * (0.02 + 0.93 * gamma_ideal(p)), 1e-12);
  }
  // Symmetric about p = 1/2 like the ideal curve.
  for (double p = 0.0; p <= 0.5; p += 0.05) {
    EXPECT_NEAR(gamma_model(p, p0) + gamma_model(1.0 - p, p0), gamma_model(0.0, p0) + gamma_model(1.0, p0), 1e-12);
  }
}

TEST(GammaModels, ImprovementWindow) {
  const double p = improvement_crossing(0.37);
  EXPECT_GE(p, 0.25);
  EXPECT_LE(p, 0.29);
  EXPECT_NEAR(p, scanned_crossing(0.37), 1e-9);
  EXPECT_NEAR(improvement_crossing(0.0), 0.5, 1e-12);
  for (double eps : {0.1, 0.2, 0.3, 0.45}) EXPECT_NEAR(improvement_crossing(eps), scanned_crossing(eps), 1e-9);
  EXPECT_THROW(improvement_crossing(1.0), DomainError);
}

TEST(BinomialError, Values) {
  EXPECT_DOUBLE_EQ(binomial_error(0.5, 100), 0.05);
  EXPECT_DOUBLE_EQ(binomial_error(0.0, 100), 0.0);
  EXPECT_DOUBLE_EQ(binomial_error(0.3, 0), 0.0);
}

TEST(DecayModels, NamesRoundTrip) {
  for (auto m : {DecayModel::gaussian, DecayModel::exponential, DecayModel::sinusoid}) {
    EXPECT_EQ(parse_decay_model(to_string(m)), m);
  }
  EXPECT_THROW(parse_decay_model("lorentzian"), Error);
}

class GradientCheck : public ::testing::TestWithParam<int> {};

TEST_P(GradientCheck, MatchesCentralDifferences) {
  ModelFunction m;
  std::vector<double> params;
  switch (GetParam()) {
    case 0: m = decay_model_function(DecayModel::gaussian); params = {0.5, -0.45, 0.28}; break;
    case 1: m = decay_model_function(DecayModel::exponential); params = {0.5, 0.4, 2.72}; break;
    case 2: m = decay_model_function(DecayModel::sinusoid); params = {0.5, 0.48, -0.7}; break;
    default: m = gamma_model_function(); params = {0.272, 0.394, 0.37}; break;
  }
  std::vector<double> grad(params.size());
  for (double x : {0.0, 0.1, 0.37, 0.9, 1.0}) {
    m.gradient(x, params, grad);
    for (std::size_t j = 0; j < params.size(); ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(params[j]));
      auto up = params;
      auto dn = params;
      up[j] += h;
      dn[j] -= h;
      const double fd = (m.value(x, up) - m.value(x, dn)) / (2.0 * h);
      EXPECT_NEAR(grad[j], fd, 1e-7) << m.name << " x=" << x << " j=" << j;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Models, GradientCheck, ::testing::Range(0, 4));

TEST(FitDecay, NoiselessGaussianRecoversT2Star) {
  const auto m = decay_model_function(DecayModel::gaussian);
  const DecayCurve c = exact_curve(m, {0.5, -0.5, 0.28}, linspace(0.0, 0.7, 20));
  FitOptions unweighted{Weighting::unweighted};
  const FitResult f = fit_decay(c, DecayModel::gaussian, std::nullopt, unweighted);
  EXPECT_TRUE(f.converged);
  EXPECT_NEAR(f.param("tau"), 0.28, 1e-6);
  EXPECT_NEAR(f.param("y_inf"), 0.5, 1e-6);
  EXPECT_NEAR(f.rss, 0.0, 1e-12);
}

TEST(FitDecay, NoiselessExponentialRecoversT2Hahn) {
  const auto m = decay_model_function(DecayModel::exponential);
  const DecayCurve c = exact_curve(m, {0.5, 0.5, 2.72}, linspace(0.0, 6.0, 20));
  const FitResult f = fit_decay(c, DecayModel::exponential, std::nullopt, FitOptions{Weighting::unweighted});
  EXPECT_TRUE(f.converged);
  EXPECT_NEAR(f.param("tau"), 2.72, 1e-6);
  EXPECT_NEAR(f.param("A"), 0.5, 1e-6);
}

TEST(FitDecay, SinusoidFoldsNegativeAmplitude) {
  const auto m = decay_model_function(DecayModel::sinusoid);
  const DecayCurve c = exact_curve(m, {0.5, -0.45, 0.8}, linspace(0.0, 2.0 * 3.141592653589793, 25));
  const FitResult f = fit_decay(c, DecayModel::sinusoid, std::nullopt, FitOptions{Weighting::unweighted});
  EXPECT_GT(f.param("A"), 0.0);
  EXPECT_NEAR(f.param("A"), 0.45, 1e-6);
  EXPECT_NEAR(std::remainder(f.param("phi0") - (0.8 + 3.141592653589793), 2.0 * 3.141592653589793), 0.0, 1e-6);
}

TEST(FitDecay, SyntheticBinomialDataWithinThreeSigma) {
  const auto m = decay_model_function(DecayModel::exponential);
  const std::vector<double> truth{0.5, 0.45, 2.72};
  constexpr std::uint64_t kShots = 2000;
  Rng rng = make_stream(77, {});
  int outside = 0;
  constexpr int kTrials = 20;
  for (int trial = 0; trial < kTrials; ++trial) {
    DecayCurve c{"noisy", {}};
    for (double x : linspace(0.0, 6.0, 20)) {
      std::binomial_distribution<std::uint64_t> b(kShots, m.value(x, truth));
      const double y = static_cast<double>(b(rng)) / kShots;
      c.points.push_back({x, y, binomial_error(y, kShots), kShots});
    }
    const FitResult f = fit_decay(c, DecayModel::exponential, std::nullopt, FitOptions{Weighting::binomial});
    ASSERT_TRUE(f.converged);
    if (std::abs(f.param("tau") - 2.72) > 3.0 * f.std_error("tau")) ++outside;
  }
  // 3 sigma coverage is 99.7%; allow one excursion.
  EXPECT_LE(outside, 1);
}

TEST(FitDecay, TooFewPointsRaises) {
  const auto m = decay_model_function(DecayModel::exponential);
  const DecayCurve c = exact_curve(m, {0.5, 0.5, 2.0}, {0.0, 1.0, 2.0});
  EXPECT_THROW(fit_decay(c, DecayModel::exponential), FitError);
}

TEST(FitLeastSquares, DegenerateDesignRaises) {
  const auto m = decay_model_function(DecayModel::exponential);
  DecayCurve c{"flat", {}};
  for (int i = 0; i < 8; ++i) c.points.push_back({1.0, 0.4, 0.01, 1000});
  EXPECT_THROW(fit_least_squares(m, c, {0.5, 0.5, 1.0}), FitError);
}

TEST(FitGamma, RecoversPrintedParametersFromExactData) {
  const auto m = gamma_model_function();
  const DecayCurve c = exact_curve(m, {0.272, 0.394, 0.37}, linspace(0.0, 1.0, 11), 10000);
  const FitResult f = fit_gamma_model(c);
  EXPECT_TRUE(f.converged);
  EXPECT_NEAR(f.param("a"), 0.272, 1e-6);
  EXPECT_NEAR(f.param("b"), 0.394, 1e-6);
  EXPECT_NEAR(f.param("epsilon"), 0.37, 1e-5);
  EXPECT_THROW(f.param("c"), Error);
}

TEST(FitGamma, NoisyRoundTripWithinThreeSigma) {
  const auto m = gamma_model_function();
  const std::vector<double> truth{0.272, 0.394, 0.37};
  constexpr std::uint64_t kShots = 10000;
  for (std::uint64_t seed : {1, 2, 3}) {
    Rng rng = make_stream(79, {seed});
    DecayCurve c{"gamma", {}};
    for (double x : linspace(0.0, 1.0, 11)) {
      std::binomial_distribution<std::uint64_t> b(kShots, m.value(x, truth));
      const double y = static_cast<double>(b(rng)) / kShots;
      c.points.push_back({x, y, binomial_error(y, kShots), kShots});
    }
    const FitResult f = fit_gamma_model(c);
    ASSERT_TRUE(f.converged);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_LT(std::abs(f.params[j] - truth[j]), 3.0 * f.std_errors[j]) << f.names[j] << " seed " << seed;
    }
  }
}

TEST(FitGamma, Preconditions) {
  const auto m = gamma_model_function();
  EXPECT_THROW(fit_gamma_model(exact_curve(m, {0.3, 0.4, 0.3}, linspace(0.0, 1.0, 5))), FitError);
  DecayCurve out_of_range = exact_curve(m, {0.3, 0.4, 0.3}, linspace(0.0, 1.0, 8));
  out_of_range.points[3].x = 1.5;
  EXPECT_THROW(fit_gamma_model(out_of_range), FitError);
  DecayCurve zero_err = exact_curve(m, {0.3, 0.4, 0.3}, linspace(0.0, 1.0, 8));
  zero_err.points[2].y_err = 0.0;
  EXPECT_THROW(fit_gamma_model(zero_err), FitError);
}

TEST(Bootstrap, AgreesWithCovarianceErrors) {
  const auto m = gamma_model_function();
  constexpr std::uint64_t kShots = 4000;
  Rng rng = make_stream(78, {});
  const std::vector<double> truth{0.6, 0.2, 0.3};
  DecayCurve c{"gamma", {}};
  for (double x : linspace(0.0, 1.0, 11)) {
    std::binomial_distribution<std::uint64_t> b(kShots, m.value(x, truth));
    const double y = static_cast<double>(b(rng)) / kShots;
    c.points.push_back({x, y, binomial_error(y, kShots), kShots});
  }
  const FitResult f = fit_gamma_model(c);
  const auto boot = bootstrap_stderr(m, c, f, 200, 5);
  ASSERT_EQ(boot.size(), 3U);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_GT(boot[j] / f.std_errors[j], 0.5) << f.names[j];
    EXPECT_LT(boot[j] / f.std_errors[j], 2.0) << f.names[j];
  }
  EXPECT_EQ(boot, bootstrap_stderr(m, c, f, 200, 5));
}

}  // namespace
}  // namespace phaseflip
