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
#include <span>
#include <vector>

#include "phaseflip/device.hpp"
#include "phaseflip/native_gates.hpp"
#include "phaseflip/rng.hpp"
#include "phaseflip/state_vector.hpp"

namespace phaseflip {

// Per-qubit dephasing: a quasi-static Gaussian frequency offset (sd sigma_qs,
// rad/s) drawn once per shot plus Markovian telegraph kicks at rate gamma_m.
// Ramsey decays as exp(-(t/T2*)^2) exp(-gamma_m t) with T2* = sqrt(2)/sigma_qs;
// an echo removes the quasi-static part, leaving exp(-t/T2Hahn), T2Hahn = 1/gamma_m.
struct QubitNoise {
  double sigma_qs = 0.0;
  double gamma_m = 0.0;

  double t2_star() const;  // infinity when sigma_qs == 0
  double t2_hahn() const;  // infinity when gamma_m == 0
};

// Constant always-on conditional phase accumulated while an edge idles.
struct ResidualExchange {
  Edge edge;
  double rate_rad_per_s = 0.0;
};

struct NoiseParams {
  std::vector<QubitNoise> qubits;
  std::vector<ResidualExchange> residual_exchange;
  // Apply idle dephasing to every qubit for the duration of each gate.
  bool dephase_during_gates = false;

  static NoiseParams noiseless(std::size_t n_qubits);
  bool is_noiseless() const;
};

// Throws CoherenceError unless 0 < t2_star <= t2_hahn.
QubitNoise calibrate_noise(double t2_star, double t2_hahn);

struct ReadoutPairModel {
  Edge pair;
  double f_even = 1.0;  // P(report even | true even)
  double f_odd = 1.0;   // P(report odd | true odd)
  PairClassMap odd_class = kParityClasses;
};

struct ReadoutModel {
  std::vector<ReadoutPairModel> pairs;

  static ReadoutModel ideal(const DeviceModel& device);
  static ReadoutModel uniform(const DeviceModel& device, double f_even, double f_odd);
  // Throws ReadoutConstraintError if the pair is not a readout pair.
  const ReadoutPairModel& for_pair(const Edge& pair) const;
  void validate() const;
};

struct ResetModel {
  // Probability that a swap-based reset leaves the reset qubit untouched.
  double retain_probability = 0.0;
};

struct ErrorInjection {
  enum class Mode { deterministic_phase, bernoulli_flip };
  Mode mode = Mode::deterministic_phase;
  double phase = 0.0;        // deterministic mode
  double probability = 0.0;  // bernoulli mode
  std::vector<std::size_t> targets;
};

struct ShotNoiseContext {
  std::vector<double> frequency_offsets;  // rad/s, fixed for the shot
  std::vector<double> gamma_m;
  std::vector<ResidualExchange> residual_exchange;
};

ShotNoiseContext begin_shot(const NoiseParams& params, Rng& rng);

// Z(offset*duration) on each qubit, then an independent Z(pi) kick with
// probability (1 - exp(-gamma_m duration))/2, then residual conditional
// phases on edges whose qubits both idle. Throws TimeError for duration < 0.
void apply_idle(StateVector& state, std::span<const std::size_t> qubits, double duration,
                const ShotNoiseContext& ctx, Rng& rng);

// Resonant drive with the shot's frequency offset as detuning; Markovian
// kicks interleaved over the pulse in equal slices.
void apply_driven_rotation(StateVector& state, const RotationGate& gate, const ShotNoiseContext& ctx,
                           Rng& rng);

// Returns which targets received a Z(pi) (bernoulli) or Z(phase) (deterministic, all targets
// flagged when phase != 0).
std::vector<bool> inject_errors(StateVector& state, const ErrorInjection& injection, Rng& rng);

Parity readout_with_error(Parity truth, const ReadoutPairModel& model, Rng& rng);

// With probability 1 - r applies the resonant swap on (reset_qubit, helper);
// otherwise leaves the state unchanged. Returns whether the swap was applied.
bool reset_via_swap(StateVector& state, std::size_t reset_qubit, std::size_t helper,
                    const ResetModel& model, const DeviceModel& device, Rng& rng);

}  // namespace phaseflip
