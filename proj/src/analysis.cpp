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

#include "phaseflip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "phaseflip/errors.hpp"
#include "phaseflip/native_gates.hpp"
#include "phaseflip/rng.hpp"

namespace phaseflip {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

double gamma_polynomial(double p, double eps) {
  return 0.95 - 1.73 * eps * p - 2.79 * p * p + 3.9 * eps * p * p + 1.86 * p * p * p - 2.17 * eps * p * p * p;
}

struct Problem {
  const ModelFunction& model;
  std::vector<double> xs, ys, sqrt_w;
};

// Weighted residuals and Jacobian of the residual r_i = sqrt(w_i) (y_i - f_i).
double evaluate(const Problem& pr, const std::vector<double>& p, Eigen::VectorXd* r, Eigen::MatrixXd* jac) {
  const std::size_t n = pr.xs.size();
  const std::size_t k = p.size();
  std::vector<double> grad(k);
  double cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = pr.model.value(pr.xs[i], p);
    const double ri = pr.sqrt_w[i] * (pr.ys[i] - f);
    cost += ri * ri;
    if (r) (*r)(static_cast<Eigen::Index>(i)) = ri;
    if (jac) {
      pr.model.gradient(pr.xs[i], p, grad);
      for (std::size_t j = 0; j < k; ++j) {
        (*jac)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pr.sqrt_w[i] * grad[j];
      }
    }
  }
  return cost;
}

}  // namespace

double gamma_ideal(double p) {
  check_probability(p);
  return 1.0 - 3.0 * p * p + 2.0 * p * p * p;
}

double gamma_linear(double p) {
  check_probability(p);
  return 1.0 - p;
}

double gamma_model(double p, const GammaModelParams& params) {
  check_probability(p);
  return params.b + params.a * gamma_polynomial(p, params.epsilon);
}

double improvement_crossing(double epsilon) {
  // gamma_polynomial(p) - (0.95 - 0.93 p) = p (c0 + c1 p + c2 p^2), and
  // c0 + c1 + c2 = 0, so the quadratic is c2 (p - 1)(p - c0 / c2).
  const double c0 = 0.93 - 1.73 * epsilon;
  const double c2 = 1.86 - 2.17 * epsilon;
  if (std::abs(c2) < 1e-15) throw DomainError("no crossing in (0, 1) for this epsilon");
  const double root = c0 / c2;
  if (!(root > 0.0 && root < 1.0)) throw DomainError("no crossing in (0, 1) for this epsilon");
  return root;
}

double binomial_error(double y, std::uint64_t shots) {
  if (shots == 0) return 0.0;
  const double v = std::clamp(y, 0.0, 1.0);
  return std::sqrt(v * (1.0 - v) / static_cast<double>(shots));
}

const char* to_string(DecayModel model) noexcept {
  switch (model) {
    case DecayModel::gaussian:
      return "gaussian";
    case DecayModel::exponential:
      return "exponential";
    case DecayModel::sinusoid:
      return "sinusoid";
  }
  return "?";
}

DecayModel parse_decay_model(const std::string& name) {
  for (auto m : {DecayModel::gaussian, DecayModel::exponential, DecayModel::sinusoid}) {
    if (name == to_string(m)) return m;
  }
  throw Error("unknown decay model '" + name + "'");
}

ModelFunction decay_model_function(DecayModel model) {
  ModelFunction f;
  f.name = to_string(model);
  switch (model) {
    case DecayModel::gaussian:
      f.parameter_names = {"y_inf", "A", "tau"};
      f.value = [](double t, std::span<const double> p) { return p[0] + p[1] * std::exp(-(t / p[2]) * (t / p[2])); };
      f.gradient = [](double t, std::span<const double> p, std::span<double> g) {
        const double e = std::exp(-(t / p[2]) * (t / p[2]));
        g[0] = 1.0;
        g[1] = e;
        g[2] = p[1] * e * 2.0 * t * t / (p[2] * p[2] * p[2]);
      };
      break;
    case DecayModel::exponential:
      f.parameter_names = {"y_inf", "A", "tau"};
      f.value = [](double t, std::span<const double> p) { return p[0] + p[1] * std::exp(-t / p[2]); };
      f.gradient = [](double t, std::span<const double> p, std::span<double> g) {
        const double e = std::exp(-t / p[2]);
        g[0] = 1.0;
        g[1] = e;
        g[2] = p[1] * e * t / (p[2] * p[2]);
      };
      break;
    case DecayModel::sinusoid:
      f.parameter_names = {"y0", "A", "phi0"};
      f.value = [](double x, std::span<const double> p) { return p[0] + p[1] * std::cos(x + p[2]); };
      f.gradient = [](double x, std::span<const double> p, std::span<double> g) {
        g[0] = 1.0;
        g[1] = std::cos(x + p[2]);
        g[2] = -p[1] * std::sin(x + p[2]);
      };
      break;
  }
  return f;
}

ModelFunction gamma_model_function() {
  ModelFunction f;
  f.name = "gamma";
  f.parameter_names = {"a", "b", "epsilon"};
  f.value = [](double p, std::span<const double> q) { return gamma_model(p, {q[0], q[1], q[2]}); };
  f.gradient = [](double p, std::span<const double> q, std::span<double> g) {
    g[0] = gamma_polynomial(p, q[2]);
    g[1] = 1.0;
    g[2] = q[0] * (-1.73 * p + 3.9 * p * p - 2.17 * p * p * p);
  };
  return f;
}

double FitResult::param(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return params.at(i);
  }
  throw Error("fit has no parameter '" + name + "'");
}

double FitResult::std_error(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return std_errors.at(i);
  }
  throw Error("fit has no parameter '" + name + "'");
}

FitResult fit_least_squares(const ModelFunction& model, const DecayCurve& curve, std::vector<double> initial,
                            const FitOptions& options) {
  const std::size_t k = model.parameter_names.size();
  if (initial.size() != k) throw FitError("initial guess has the wrong number of parameters");
  Problem pr{model, {}, {}, {}};
  for (const auto& pt : curve.points) {
    pr.xs.push_back(pt.x);
    pr.ys.push_back(pt.y);
    if (options.weighting == Weighting::binomial) {
      if (!(pt.y_err > 0.0)) throw FitError("binomial weighting needs y_err > 0 at every point");
      pr.sqrt_w.push_back(1.0 / pt.y_err);
    } else {
      pr.sqrt_w.push_back(1.0);
    }
  }
  const std::size_t n = pr.xs.size();
  if (n < k) throw FitError("fewer points than parameters");
  const auto N = static_cast<Eigen::Index>(n);
  const auto K = static_cast<Eigen::Index>(k);

  std::vector<double> p = std::move(initial);
  Eigen::VectorXd r(N);
  Eigen::MatrixXd J(N, K);
  double cost = evaluate(pr, p, &r, &J);
  if (!std::isfinite(cost)) throw FitError("model is not finite at the initial guess");
  double lambda = 1e-3;
  bool converged = false;
  int it = 0;
  for (; it < options.max_iterations && !converged; ++it) {
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd damped = A;
      for (Eigen::Index j = 0; j < K; ++j) damped(j, j) += lambda * std::max(A(j, j), 1e-300);
      const Eigen::VectorXd step = damped.ldlt().solve(g);
      std::vector<double> trial(p);
      for (std::size_t j = 0; j < k; ++j) trial[j] += step(static_cast<Eigen::Index>(j));
      const double trial_cost = evaluate(pr, trial, nullptr, nullptr);
      if (std::isfinite(trial_cost) && trial_cost <= cost) {
        double rel = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          rel = std::max(rel, std::abs(step(static_cast<Eigen::Index>(j))) / std::max(std::abs(trial[j]), 1e-12));
        }
        p = std::move(trial);
        cost = evaluate(pr, p, &r, &J);
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (rel < options.relative_tolerance || cost == 0.0) converged = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e16) {
          // No descent direction left at working precision: stationary point.
          converged = true;
          break;
        }
      }
    }
  }

  // Rank test on the unit-diagonal scaled curvature so parameter units do not matter.
  const Eigen::MatrixXd A = J.transpose() * J;
  Eigen::VectorXd scale(K);
  for (Eigen::Index j = 0; j < K; ++j) {
    if (!(A(j, j) > 0.0)) throw FitError("parameter " + model.parameter_names[static_cast<std::size_t>(j)] +
                                         " does not affect the " + model.name + " model");
    scale(j) = 1.0 / std::sqrt(A(j, j));
  }
  const Eigen::MatrixXd scaled = scale.asDiagonal() * A * scale.asDiagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(scaled);
  lu.setThreshold(1e-12);
  if (lu.rank() < K) throw FitError("singular curvature matrix in " + model.name + " fit");
  const double s2 = n > k ? cost / static_cast<double>(n - k) : 1.0;
  const Eigen::MatrixXd cov = scale.asDiagonal() * lu.inverse() * scale.asDiagonal() * s2;

  FitResult res;
  res.model = model.name;
  res.names = model.parameter_names;
  res.params = p;
  for (Eigen::Index j = 0; j < K; ++j) res.std_errors.push_back(std::sqrt(std::max(cov(j, j), 0.0)));
  res.rss = cost;
  res.converged = converged;
  res.n_points = n;
  res.iterations = it;
  return res;
}

FitResult fit_gamma_model(const DecayCurve& curve, std::optional<GammaModelParams> initial, const FitOptions& options) {
  if (curve.points.size() < 6) throw FitError("gamma fit needs at least 6 points");
  for (const auto& pt : curve.points) {
    if (!(pt.x >= 0.0 && pt.x <= 1.0)) throw FitError("gamma fit needs p in [0, 1]");
  }
  GammaModelParams guess;
  if (initial) {
    guess = *initial;
  } else {
    const auto lo = std::min_element(curve.points.begin(), curve.points.end(),
                                     [](const CurvePoint& u, const CurvePoint& v) { return u.x < v.x; });
    const auto hi = std::max_element(curve.points.begin(), curve.points.end(),
                                     [](const CurvePoint& u, const CurvePoint& v) { return u.x < v.x; });
    const double span = hi->x - lo->x;
    const double slope = span > 0.0 ? (lo->y - hi->y) / span : 0.0;
    guess.a = slope / 0.93;
    guess.b = lo->y - 0.95 * guess.a + 0.93 * guess.a * lo->x;
    guess.epsilon = 0.0;
    if (guess.a == 0.0) guess.a = 0.1;
  }
  return fit_least_squares(gamma_model_function(), curve, {guess.a, guess.b, guess.epsilon}, options);
}

namespace {

std::vector<double> decay_guess(const DecayCurve& curve, DecayModel model) {
  const auto& pts = curve.points;
  if (model == DecayModel::sinusoid) {
    Eigen::MatrixXd X(static_cast<Eigen::Index>(pts.size()), 3);
    Eigen::VectorXd y(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      X(r, 0) = 1.0;
      X(r, 1) = std::cos(pts[i].x);
      X(r, 2) = std::sin(pts[i].x);
      y(r) = pts[i].y;
    }
    const Eigen::Vector3d c = X.colPivHouseholderQr().solve(y);
    const double amp = std::hypot(c(1), c(2));
    return {c(0), amp > 0.0 ? amp : 1e-3, std::atan2(-c(2), c(1))};
  }
  std::vector<CurvePoint> sorted(pts);
  std::sort(sorted.begin(), sorted.end(), [](const CurvePoint& u, const CurvePoint& v) { return u.x < v.x; });
  const double y_inf = sorted.back().y;
  double amp = sorted.front().y - y_inf;
  if (amp == 0.0) amp = 1e-3;
  double tau = 0.5 * (sorted.back().x + sorted.front().x);
  const double target = std::abs(amp) / std::exp(1.0);
  for (const auto& pt : sorted) {
    if (std::abs(pt.y - y_inf) <= target && pt.x > 0.0) {
      tau = pt.x;
      break;
    }
  }
  if (!(tau > 0.0)) tau = 1.0;
  return {y_inf, amp, tau};
}

}  // namespace

FitResult fit_decay(const DecayCurve& curve, DecayModel model, std::optional<std::vector<double>> initial,
                    const FitOptions& options) {
  if (curve.points.size() < 5) throw FitError("decay fit needs at least 5 points");
  auto guess = initial ? *initial : decay_guess(curve, model);
  FitResult res = fit_least_squares(decay_model_function(model), curve, std::move(guess), options);
  if (model == DecayModel::sinusoid) {
    if (res.params[1] < 0.0) {
      res.params[1] = -res.params[1];
      res.params[2] += kPi;
    }
    res.params[2] = wrap_phase(res.params[2]);
  } else if (model == DecayModel::gaussian) {
    res.params[2] = std::abs(res.params[2]);
  }
  return res;
}

std::vector<double> bootstrap_stderr(const ModelFunction& model, const DecayCurve& curve, const FitResult& fit,
                                     std::size_t resamples, std::uint64_t seed, const FitOptions& options) {
  const std::size_t k = fit.params.size();
  std::vector<double> mean(k, 0.0), m2(k, 0.0);
  std::size_t count = 0;
  for (std::size_t b = 0; b < resamples; ++b) {
    Rng rng = make_stream(seed, {b});
    DecayCurve sample = curve;
    for (auto& pt : sample.points) {
      const double truth = std::clamp(model.value(pt.x, fit.params), 0.0, 1.0);
      if (pt.shots > 0) {
        std::binomial_distribution<std::uint64_t> dist(pt.shots, truth);
        pt.y = static_cast<double>(dist(rng)) / static_cast<double>(pt.shots);
      } else {
        std::normal_distribution<double> dist(0.0, 1.0);
        pt.y = truth + pt.y_err * dist(rng);
      }
    }
    FitResult refit;
    try {
      refit = fit_least_squares(model, sample, fit.params, options);
    } catch (const FitError&) {
      continue;
    }
    ++count;
    for (std::size_t j = 0; j < k; ++j) {
      const double d = refit.params[j] - mean[j];
      mean[j] += d / static_cast<double>(count);
      m2[j] += d * (refit.params[j] - mean[j]);
    }
  }
  if (count < 2) throw FitError("bootstrap produced fewer than two successful refits");
  std::vector<double> out(k);
  for (std::size_t j = 0; j < k; ++j) out[j] = std::sqrt(m2[j] / static_cast<double>(count - 1));
  return out;
}

}  // namespace phaseflip
