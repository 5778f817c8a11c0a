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
#include <variant>
#include <vector>

#include "phaseflip/device.hpp"
#include "phaseflip/native_gates.hpp"
#include "phaseflip/noise.hpp"

namespace phaseflip {

struct Idle {
  std::vector<std::size_t> qubits;
  double duration = 0.0;  // seconds
};

// Placeholder for intentional error injection at this point of the circuit.
struct ErrorSite {
  ErrorInjection injection;
};

struct ResetViaSwap {
  ResonantSwapGate swap;
  std::size_t reset_qubit = 0;
  std::size_t helper = 0;
};

struct PairMeasure {
  Edge pair;
  // Qubit whose state is being read; empty for a joint parity read.
  std::optional<std::size_t> target;
};

using NativeInstruction =
    std::variant<RotationGate, ConditionalPhaseGate, ResonantSwapGate, Idle, ErrorSite, ResetViaSwap, PairMeasure>;

std::string to_string(const NativeInstruction& instruction);

// Physical instruction list plus per-qubit virtual-Z frames.
//
// Frame convention: the logical operation applied so far equals
// Rz(frame) * (physical operation so far) on every qubit. A logical rotation
// about axis a is therefore emitted about a - frame, and Z(phi) only moves
// the frame.
class NativeCircuit {
 public:
  explicit NativeCircuit(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return frames_.size(); }
  const std::vector<NativeInstruction>& instructions() const noexcept { return instructions_; }
  const std::vector<double>& phase_frame() const noexcept { return frames_; }
  double phase_frame(std::size_t qubit) const;

  // Logical rotation; the emitted axis is shifted by the qubit's frame.
  NativeCircuit& rotate(const RotationGate& logical);
  NativeCircuit& virtual_z(std::size_t qubit, double phi);
  NativeCircuit& cphase(const ConditionalPhaseGate& gate);
  // A full swap exchanges the two frames; a partial swap requires equal frames.
  NativeCircuit& swap(const ResonantSwapGate& gate);
  NativeCircuit& idle(std::vector<std::size_t> qubits, double duration);
  NativeCircuit& error_site(ErrorInjection injection);
  NativeCircuit& reset(const ResonantSwapGate& swap, std::size_t reset_qubit, std::size_t helper);
  NativeCircuit& measure(const Edge& pair, std::optional<std::size_t> target = std::nullopt);

  // Replays other's instructions through this circuit's frames, then adds
  // other's trailing frames.
  NativeCircuit& append(const NativeCircuit& other);

  // Raw emission without frame bookkeeping.
  NativeCircuit& push_physical(NativeInstruction instruction);

  bool is_unitary() const;
  double total_duration() const;

 private:
  void check_qubit(std::size_t q) const;

  std::vector<NativeInstruction> instructions_;
  std::vector<double> frames_;
};

// Throws ConnectivityError for a two-qubit instruction off the device edges
// and ReadoutConstraintError for a PairMeasure on a non-readout pair.
void check_connectivity(const NativeCircuit& circuit, const DeviceModel& device);

}  // namespace phaseflip
