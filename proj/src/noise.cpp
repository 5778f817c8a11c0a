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

#include "phaseflip/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "phaseflip/errors.hpp"

namespace phaseflip {

namespace {

// Multiplies the |1> component of a qubit by e^{i phi/2} and |0> by e^{-i phi/2}.
void phase_rotate(StateVector& state, std::size_t qubit, double phi) {
  const Complex down = std::polar(1.0, -phi / 2.0);
  const Complex up = std::polar(1.0, phi / 2.0);
  const std::size_t bit = std::size_t{1} << qubit;
  auto amps = state.mutable_amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (i & bit) ? up : down;
}

void conditional_phase(StateVector& state, const Edge& edge, double phi) {
  const Complex factor = std::polar(1.0, phi);
  const std::size_t mask = (std::size_t{1} << edge.a) | (std::size_t{1} << edge.b);
  auto amps = state.mutable_amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == mask) amps[i] *= factor;
  }
}

double kick_probability(double gamma, double duration) {
  return 0.5 * (1.0 - std::exp(-gamma * duration));
}

void check_qubit_index(const StateVector& state, std::size_t q) {
  if (q >= state.n_qubits()) throw IndexError("qubit " + std::to_string(q) + " out of range");
}

}  // namespace

double QubitNoise::t2_star() const {
  return sigma_qs > 0.0 ? std::sqrt(2.0) / sigma_qs : std::numeric_limits<double>::infinity();
}

double QubitNoise::t2_hahn() const {
  return gamma_m > 0.0 ? 1.0 / gamma_m : std::numeric_limits<double>::infinity();
}

NoiseParams NoiseParams::noiseless(std::size_t n_qubits) {
  NoiseParams p;
  p.qubits.assign(n_qubits, QubitNoise{});
  return p;
}

bool NoiseParams::is_noiseless() const {
  const bool quiet_qubits = std::all_of(qubits.begin(), qubits.end(), [](const QubitNoise& q) {
    return q.sigma_qs == 0.0 && q.gamma_m == 0.0;
  });
  const bool quiet_edges = std::all_of(residual_exchange.begin(), residual_exchange.end(),
                                       [](const ResidualExchange& r) { return r.rate_rad_per_s == 0.0; });
  return quiet_qubits && quiet_edges;
}

QubitNoise calibrate_noise(double t2_star, double t2_hahn) {
  if (!(t2_star > 0.0) || !(t2_hahn > 0.0)) throw CoherenceError("coherence times must be positive");
  if (t2_star > t2_hahn) throw CoherenceError("T2* exceeds T2Hahn");
  return QubitNoise{std::sqrt(2.0) / t2_star, 1.0 / t2_hahn};
}

ReadoutModel ReadoutModel::ideal(const DeviceModel& device) { return uniform(device, 1.0, 1.0); }

ReadoutModel ReadoutModel::uniform(const DeviceModel& device, double f_even, double f_odd) {
  ReadoutModel m;
  for (const auto& rp : device.readout_pairs) m.pairs.push_back({rp.qubits, f_even, f_odd, kParityClasses});
  m.validate();
  return m;
}

const ReadoutPairModel& ReadoutModel::for_pair(const Edge& pair) const {
  for (const auto& p : pairs) {
    if (p.pair.same_qubits(pair)) return p;
  }
  throw ReadoutConstraintError("no readout model for pair " + edge_name(pair));
}

void ReadoutModel::validate() const {
  for (const auto& p : pairs) {
    if (p.f_even < 0.5 || p.f_even > 1.0 || p.f_odd < 0.5 || p.f_odd > 1.0) {
      throw Error("readout fidelities must lie in [0.5, 1] for pair " + edge_name(p.pair));
    }
  }
}

ShotNoiseContext begin_shot(const NoiseParams& params, Rng& rng) {
  ShotNoiseContext ctx;
  std::normal_distribution<double> standard_normal(0.0, 1.0);
  ctx.frequency_offsets.reserve(params.qubits.size());
  ctx.gamma_m.reserve(params.qubits.size());
  for (const auto& q : params.qubits) {
    ctx.frequency_offsets.push_back(q.sigma_qs * standard_normal(rng));
    ctx.gamma_m.push_back(q.gamma_m);
  }
  ctx.residual_exchange = params.residual_exchange;
  return ctx;
}

void apply_idle(StateVector& state, std::span<const std::size_t> qubits, double duration,
                const ShotNoiseContext& ctx, Rng& rng) {
  if (duration < 0.0) throw TimeError("idle duration must be non-negative");
  if (duration == 0.0) return;
  for (auto q : qubits) {
    check_qubit_index(state, q);
    const double offset = q < ctx.frequency_offsets.size() ? ctx.frequency_offsets[q] : 0.0;
    const double gamma = q < ctx.gamma_m.size() ? ctx.gamma_m[q] : 0.0;
    if (offset != 0.0) phase_rotate(state, q, offset * duration);
    if (bernoulli(rng, kick_probability(gamma, duration))) phase_rotate(state, q, kPi);
  }
  for (const auto& r : ctx.residual_exchange) {
    if (r.rate_rad_per_s == 0.0) continue;
    const bool both = std::find(qubits.begin(), qubits.end(), r.edge.a) != qubits.end() &&
                      std::find(qubits.begin(), qubits.end(), r.edge.b) != qubits.end();
    if (both) conditional_phase(state, r.edge, r.rate_rad_per_s * duration);
  }
}

void apply_driven_rotation(StateVector& state, const RotationGate& gate, const ShotNoiseContext& ctx,
                           Rng& rng) {
  check_qubit_index(state, gate.qubit);
  if (gate.duration <= 0.0) {
    const std::size_t target[1] = {gate.qubit};
    apply_unitary(state, rotation_unitary(gate), target);
    return;
  }
  constexpr int kSlices = 16;
  const double dt = gate.duration / kSlices;
  const double omega = gate.angle / gate.duration;
  const double delta = gate.qubit < ctx.frequency_offsets.size() ? ctx.frequency_offsets[gate.qubit] : 0.0;
  const double gamma = gate.qubit < ctx.gamma_m.size() ? ctx.gamma_m[gate.qubit] : 0.0;

  // exp(-i dt/2 (omega cos(a) sx + omega sin(a) sy + delta sz))
  const double vx = omega * std::cos(gate.axis);
  const double vy = omega * std::sin(gate.axis);
  const double vz = delta;
  const double norm = std::sqrt(vx * vx + vy * vy + vz * vz);
  const double c = std::cos(norm * dt / 2.0);
  const double s = norm > 0.0 ? std::sin(norm * dt / 2.0) / norm : 0.0;
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  m(0, 0) = c - i * s * vz;
  m(0, 1) = -i * s * (vx - i * vy);
  m(1, 0) = -i * s * (vx + i * vy);
  m(1, 1) = c + i * s * vz;
  const Unitary slice(m);
  const std::size_t target[1] = {gate.qubit};
  const double kick = kick_probability(gamma, dt);
  for (int k = 0; k < kSlices; ++k) {
    apply_unitary(state, slice, target);
    if (bernoulli(rng, kick)) phase_rotate(state, gate.qubit, kPi);
  }
}

std::vector<bool> inject_errors(StateVector& state, const ErrorInjection& injection, Rng& rng) {
  for (auto q : injection.targets) check_qubit_index(state, q);
  std::vector<bool> fired(injection.targets.size(), false);
  if (injection.mode == ErrorInjection::Mode::deterministic_phase) {
    if (injection.phase == 0.0) return fired;
    for (std::size_t k = 0; k < injection.targets.size(); ++k) {
      phase_rotate(state, injection.targets[k], injection.phase);
      fired[k] = true;
    }
    return fired;
  }
  for (std::size_t k = 0; k < injection.targets.size(); ++k) {
    if (bernoulli(rng, injection.probability)) {
      phase_rotate(state, injection.targets[k], kPi);
      fired[k] = true;
    }
  }
  return fired;
}

Parity readout_with_error(Parity truth, const ReadoutPairModel& model, Rng& rng) {
  const double u = uniform01(rng);
  if (truth == Parity::even) return u < model.f_even ? Parity::even : Parity::odd;
  return u < model.f_odd ? Parity::odd : Parity::even;
}

bool reset_via_swap(StateVector& state, std::size_t reset_qubit, std::size_t helper,
                    const ResetModel& model, const DeviceModel& device, Rng& rng) {
  const Edge edge{reset_qubit, helper};
  const auto gate = calibrate_resonant_swap(device, edge);
  const auto u = resonant_swap_unitary(gate, device);
  if (bernoulli(rng, model.retain_probability)) return false;
  const std::size_t targets[2] = {reset_qubit, helper};
  apply_unitary(state, u, targets);
  return true;
}

}  // namespace phaseflip
