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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phaseflip/device.hpp"
#include "phaseflip/native_circuit.hpp"
#include "phaseflip/noise.hpp"
#include "phaseflip/state_vector.hpp"

namespace phaseflip {

enum class LogicalOp { prepare, h, x, y, z, rotation, cz, cnot, toffoli, idle, error, measure };

const char* to_string(LogicalOp op) noexcept;
// Throws Error for an unknown name.
LogicalOp parse_logical_op(std::string_view name);

// Single-qubit input states reachable from |down>.
// minus_y is X|down>.
enum class PrepareState { down, up, plus_x, plus_y, minus_y };

const char* to_string(PrepareState state) noexcept;
PrepareState parse_prepare_state(std::string_view name);

struct LogicalInstruction {
  LogicalOp op = LogicalOp::idle;
  std::vector<std::size_t> qubits;  // cnot: (control, target); toffoli: (c1, c2, target)
  double angle = 0.0;               // x, y, z, rotation
  double axis = 0.0;                // rotation
  PrepareState state = PrepareState::down;
  double duration = 0.0;  // idle, seconds
  ErrorInjection injection;
};

class LogicalCircuit {
 public:
  explicit LogicalCircuit(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::vector<LogicalInstruction>& instructions() const noexcept { return instructions_; }

  // Only on a qubit no earlier instruction has touched.
  LogicalCircuit& prepare(std::size_t q, PrepareState state);
  LogicalCircuit& h(std::size_t q);
  LogicalCircuit& x(std::size_t q, double theta = kPi / 2.0);
  LogicalCircuit& y(std::size_t q, double theta = kPi / 2.0);
  LogicalCircuit& z(std::size_t q, double phi);
  LogicalCircuit& rotation(std::size_t q, double axis, double theta);
  LogicalCircuit& cz(std::size_t a, std::size_t b);
  LogicalCircuit& cnot(std::size_t control, std::size_t target);
  LogicalCircuit& toffoli(std::size_t c1, std::size_t c2, std::size_t target);
  LogicalCircuit& idle(std::vector<std::size_t> qubits, double duration);
  LogicalCircuit& error(ErrorInjection injection);
  LogicalCircuit& measure(std::size_t q);

  // Validates and appends; throws CompositionError for anything after a measure.
  LogicalCircuit& push(LogicalInstruction instruction);

  bool is_unitary() const;
  std::vector<std::size_t> measured_qubits() const;

 private:
  std::size_t n_qubits_;
  std::vector<LogicalInstruction> instructions_;
  std::vector<bool> touched_;
  bool measuring_ = false;
};

// H -> Y^-1 then a pi frame shift; CNOT -> Y^-1(t) CZ Y(t); TOFFOLI ->
// toffoli_like; Z -> frame update; trailing measures go through
// insert_readout_reset. Throws ConnectivityError for a missing edge.
NativeCircuit lower(const LogicalCircuit& circuit, const DeviceModel& device);

// Appends PSB-compatible reads of the targets. A qubit's pair partner must be
// statically |down> (untouched since the start or since a reset); otherwise
// the partner is first reset by a resonant swap with a |down> neighbour
// outside the pair. Both qubits of a pair requested -> one joint parity read.
NativeCircuit insert_readout_reset(const NativeCircuit& circuit, const DeviceModel& device,
                                   const std::vector<std::size_t>& targets);

// Textbook matrix of a unitary-only logical circuit on n_qubits (<= 6).
// prepare(q, s) acts as the rotation taking |down> to s.
Unitary logical_unitary(const LogicalCircuit& circuit, std::size_t n_qubits);

enum class EquivalenceMode { exact, up_to_control_diagonal };

struct EquivalenceResult {
  bool equivalent = false;
  double max_deviation = 0.0;
};

// exact: compares up to a global phase. up_to_control_diagonal: accepts
// L^dagger N = D (x) I with D diagonal on the control qubits.
EquivalenceResult verify_equivalence(const NativeCircuit& native, const LogicalCircuit& logical, EquivalenceMode mode,
                                     double tolerance = 1e-9, const std::vector<std::size_t>& controls = {});

}  // namespace phaseflip
