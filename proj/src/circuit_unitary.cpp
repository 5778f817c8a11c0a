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

#include "phaseflip/circuit_unitary.hpp"

#include <string>
#include <type_traits>
#include <vector>

#include "phaseflip/errors.hpp"

namespace phaseflip {

void apply_native_unitary(std::span<Complex> amplitudes, std::size_t n_qubits, const NativeInstruction& instruction) {
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RotationGate>) {
          const std::size_t t[1] = {g.qubit};
          apply_unitary(amplitudes, n_qubits, rotation_unitary(g), t);
        } else if constexpr (std::is_same_v<T, ConditionalPhaseGate>) {
          const std::size_t t[2] = {g.edge.a, g.edge.b};
          apply_unitary(amplitudes, n_qubits, g.unitary(), t);
        } else if constexpr (std::is_same_v<T, ResonantSwapGate>) {
          const std::size_t t[2] = {g.edge.a, g.edge.b};
          apply_unitary(amplitudes, n_qubits, odd_subspace_rotation(g.swap_angle), t);
        } else if constexpr (std::is_same_v<T, Idle>) {
          // identity
        } else {
          throw CompositionError("stochastic instruction " + to_string(NativeInstruction{g}) + " has no unitary");
        }
      },
      instruction);
}

Unitary full_unitary_of_circuit(const NativeCircuit& circuit, std::size_t n_qubits) {
  if (n_qubits > 6 || n_qubits < circuit.n_qubits()) {
    throw SizeError("full unitary needs circuit width <= n_qubits <= 6, got " + std::to_string(n_qubits));
  }
  if (!circuit.is_unitary()) throw CompositionError("circuit contains stochastic instructions");
  const std::size_t dim = std::size_t{1} << n_qubits;
  Eigen::MatrixXcd m(dim, dim);
  std::vector<Complex> column(dim);
  std::vector<Unitary> frames;
  for (std::size_t q = 0; q < circuit.n_qubits(); ++q) frames.push_back(z_rotation_unitary(circuit.phase_frame(q)));
  for (std::size_t basis = 0; basis < dim; ++basis) {
    std::fill(column.begin(), column.end(), Complex{});
    column[basis] = 1.0;
    for (const auto& instr : circuit.instructions()) apply_native_unitary(column, n_qubits, instr);
    for (std::size_t q = 0; q < frames.size(); ++q) {
      const std::size_t t[1] = {q};
      apply_unitary(column, n_qubits, frames[q], t);
    }
    for (std::size_t r = 0; r < dim; ++r) m(r, basis) = column[r];
  }
  return Unitary(m);
}

}  // namespace phaseflip
