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

#include "phaseflip/native_circuit.hpp"
#include "phaseflip/state_vector.hpp"

namespace phaseflip {

// Applies a coherent native instruction (rotation, conditional phase,
// resonant swap) to raw amplitudes; idles are identity. Throws
// CompositionError for stochastic instructions.
void apply_native_unitary(std::span<Complex> amplitudes, std::size_t n_qubits, const NativeInstruction& instruction);

// Product matrix of the circuit's logical action (physical instructions
// followed by the trailing virtual-Z frames), built column by column from
// the basis states. Idle is treated as identity. Throws SizeError unless
// circuit.n_qubits() <= n_qubits <= 6 and CompositionError for error sites,
// resets or measurements.
Unitary full_unitary_of_circuit(const NativeCircuit& circuit, std::size_t n_qubits);

}  // namespace phaseflip
