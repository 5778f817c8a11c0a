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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phaseflip {

// 1 - 3p^2 + 2p^3: probability of at most one flip among three.
double gamma_ideal(double p);
// 1 - p: an unprotected qubit.
double gamma_linear(double p);

struct GammaModelParams {
  double a = 0.0;        // visibility
  double b = 0.0;        // offset
  double epsilon = 0.0;  // readout/reset asymmetry
};

// b + a (0.95 - 1.73 eps p - 2.79 p^2 + 3.9 eps p^2 + 1.86 p^3 - 2.17 eps p^3).
double gamma_model(double p, const GammaModelParams& params);

// Smallest p in (0, 1) where the normalised model crosses the straight line
// through its endpoints, 0.95 - 0.93 p. Throws DomainError if there is none.
double improvement_crossing(double epsilon);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  double y_err = 0.0;
  std::uint64_t shots = 0;
};

struct DecayCurve {
  std::string label;
  std::vector<CurvePoint> points;
};

// Binomial standard error sqrt(y(1-y)/shots); 0 when shots == 0.
double binomial_error(double y, std::uint64_t shots);

struct ModelFunction {
  std::string name;
  std::vector<std::string> parameter_names;
  std::function<double(double, std::span<const double>)> value;
  // Writes d value / d param_j into grad (size = number of parameters).
  std::function<void(double, std::span<const double>, std::span<double>)> gradient;
};

enum class DecayModel { gaussian, exponential, sinusoid };

const char* to_string(DecayModel model) noexcept;
DecayModel parse_decay_model(const std::string& name);

// gaussian:    y_inf + A exp(-(t/tau)^2)     params (y_inf, A, tau)
// exponential: y_inf + A exp(-t/tau)         params (y_inf, A, tau)
// sinusoid:    y0 + A cos(x + phi0)          params (y0, A, phi0)
ModelFunction decay_model_function(DecayModel model);
// params (a, b, epsilon)
ModelFunction gamma_model_function();

enum class Weighting { binomial, unweighted };

struct FitOptions {
  Weighting weighting = Weighting::binomial;
  int max_iterations = 200;
  double relative_tolerance = 1e-9;
};

struct FitResult {
  std::string model;
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> std_errors;
  double rss = 0.0;  // weighted residual sum of squares
  bool converged = false;
  std::size_t n_points = 0;
  int iterations = 0;

  // Throws Error for an unknown name.
  double param(const std::string& name) const;
  double std_error(const std::string& name) const;
};

// Levenberg-Marquardt (damped Gauss-Newton with Marquardt scaling). Standard
// errors come from the inverse curvature J^T W J scaled by rss / (n - k).
// Throws FitError when the curvature is singular.
FitResult fit_least_squares(const ModelFunction& model, const DecayCurve& curve, std::vector<double> initial,
                            const FitOptions& options = {});

// Needs >= 6 points and (binomial weighting) y_err > 0 everywhere; throws FitError otherwise.
FitResult fit_gamma_model(const DecayCurve& curve, std::optional<GammaModelParams> initial = std::nullopt,
                          const FitOptions& options = {});

// Needs >= 5 points. A negative fitted amplitude is folded into the phase
// (sinusoid) and a negative tau into |tau| (gaussian).
FitResult fit_decay(const DecayCurve& curve, DecayModel model, std::optional<std::vector<double>> initial = std::nullopt,
                    const FitOptions& options = {});

// Parametric bootstrap: resamples each point binomially around the fitted
// curve and refits; returns the sample standard deviation of each parameter.
std::vector<double> bootstrap_stderr(const ModelFunction& model, const DecayCurve& curve, const FitResult& fit,
                                     std::size_t resamples, std::uint64_t seed, const FitOptions& options = {});

}  // namespace phaseflip
