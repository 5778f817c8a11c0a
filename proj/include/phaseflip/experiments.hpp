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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phaseflip/analysis.hpp"
#include "phaseflip/compiler.hpp"
#include "phaseflip/executor.hpp"

namespace phaseflip {

enum class ExperimentKind {
  rabi,
  ramsey,
  hahn,
  cphase_calibration,
  swap_demo,
  toffoli_test,
  two_qubit_code,
  three_qubit_phase_sweep,
  three_qubit_random,
  logical_circuit,
};

const char* to_string(ExperimentKind kind) noexcept;
// Throws Error for an unknown name.
ExperimentKind parse_experiment_kind(const std::string& name);

enum class SweepUnit { microseconds, pi_radians, probability, none };

struct KindInfo {
  ExperimentKind kind;
  SweepUnit sweep_unit;
  std::string summary;
  std::vector<std::string> options;
};

// Stable order.
const std::vector<KindInfo>& experiment_registry();
const KindInfo& kind_info(ExperimentKind kind);

// One step of a config-supplied logical circuit. A swept angle (also an
// error phase), probability or duration takes the sweep value.
struct LogicalStep {
  LogicalInstruction instruction;
  bool sweep_angle = false;
  bool sweep_probability = false;
  bool sweep_duration = false;
};

struct ExperimentOptions {
  std::size_t qubit = 0;  // rabi, ramsey, hahn

  std::size_t control = 3;  // cphase_calibration
  std::size_t target = 0;
  double cphase = kPi;

  bool echo = false;                                    // two_qubit_code
  PrepareState input = PrepareState::down;              // two_qubit_code, three-qubit runners
  std::size_t ancilla = 0;                              // two_qubit_code
  std::vector<std::vector<std::size_t>> subsets;        // three_qubit_phase_sweep
  std::size_t swept_control = 0;                        // toffoli_test: Q1 or Q3
  bool three_qubit_echo = true;                         // three-qubit runners
  double echo_axis = kPi / 2.0;                         // three-qubit runners

  std::vector<LogicalStep> circuit;  // logical_circuit
  std::optional<DecayModel> fit_model;  // logical_circuit

  Estimator estimator = Estimator::sampled;
  bool fit = true;
  Weighting weighting = Weighting::binomial;  // gamma fits
  std::optional<std::vector<double>> initial_guess;
  bool record_shots = false;
};

struct ExperimentSpec {
  std::string name;
  ExperimentKind kind = ExperimentKind::rabi;
  std::vector<double> sweep;  // SI: seconds, radians or probability
  std::uint64_t shots = 10000;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  ExperimentOptions options;
};

struct ShotLogEntry {
  std::size_t point = 0;
  double x = 0.0;
  std::vector<bool> flips;
  Parity reported = Parity::even;
  bool success = false;
};

struct ExperimentResult {
  std::string name;
  ExperimentKind kind = ExperimentKind::rabi;
  std::vector<DecayCurve> curves;
  std::vector<FitResult> fits;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> circuit_listing;  // native circuit of the first sweep point
  std::vector<ShotLogEntry> shot_log;
  // Set when the curves were measured but a fit failed; curves stay usable.
  std::optional<std::string> fit_error;

  const DecayCurve& curve(const std::string& label) const;
  double metric(const std::string& key) const;
};

// Throws Error for an empty sweep, zero shots or options that do not fit the kind.
ExperimentResult run_experiment(const ExperimentSpec& spec, const Setup& setup, unsigned jobs = 1);

// Circuit builders (also used by the tests).

// Encode, echo, error site, decode, relative-phase Toffoli, projection of the
// data qubit Q4 back to |down> (computed from the error-free circuit), then a
// PSB read of Q4 with the automatic Q3 reset.
NativeCircuit three_qubit_code_circuit(const DeviceModel& device, PrepareState input, const ErrorInjection& injection,
                                       bool echo, double echo_axis);

// prepare Q4, H(anc), CZ, H(Q4), wait t/2, [Y^2(anc)], wait t/2, H(Q4), CZ,
// H(anc), CNOT(anc -> Q4), projection, read Q4.
NativeCircuit two_qubit_code_circuit(const DeviceModel& device, PrepareState input, std::size_t ancilla, double wait,
                                     bool echo);

// Rotation returning a qubit's noiseless state to |down>.
RotationGate projection_rotation(const DeviceModel& device, const NativeCircuit& prefix, std::size_t qubit);

}  // namespace phaseflip
