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

#include "phaseflip/native_circuit.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "phaseflip/errors.hpp"

namespace phaseflip {

namespace {

std::string pi_units(double angle) {
  std::ostringstream out;
  out << angle / kPi << "pi";
  return out.str();
}

std::string qubit_list(const std::vector<std::size_t>& qubits) {
  std::string s;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i) s += ",";
    s += qubit_name(qubits[i]);
  }
  return s;
}

struct Describe {
  std::string operator()(const RotationGate& g) const {
    std::ostringstream out;
    out << "R(" << qubit_name(g.qubit) << "; theta=" << pi_units(g.angle) << ", axis=" << pi_units(g.axis) << ")";
    return out.str();
  }
  std::string operator()(const ConditionalPhaseGate& g) const {
    return "CPhase(" + qubit_name(g.edge.a) + "," + qubit_name(g.edge.b) + "; phi=" + pi_units(g.phase) + ")";
  }
  std::string operator()(const ResonantSwapGate& g) const {
    return "SWAP(" + qubit_name(g.edge.a) + "," + qubit_name(g.edge.b) + "; angle=" + pi_units(g.swap_angle) + ")";
  }
  std::string operator()(const Idle& g) const {
    std::ostringstream out;
    out << "Idle(" << qubit_list(g.qubits) << "; " << g.duration * 1e6 << "us)";
    return out.str();
  }
  std::string operator()(const ErrorSite& g) const {
    std::ostringstream out;
    if (g.injection.mode == ErrorInjection::Mode::deterministic_phase) {
      out << "ErrorZ(" << qubit_list(g.injection.targets) << "; phi=" << pi_units(g.injection.phase) << ")";
    } else {
      out << "ErrorFlip(" << qubit_list(g.injection.targets) << "; p=" << g.injection.probability << ")";
    }
    return out.str();
  }
  std::string operator()(const ResetViaSwap& g) const {
    return "Reset(" + qubit_name(g.reset_qubit) + " via " + qubit_name(g.helper) + ")";
  }
  std::string operator()(const PairMeasure& g) const {
    std::string s = "Measure(" + qubit_name(g.pair.a) + "," + qubit_name(g.pair.b);
    if (g.target) s += " -> " + qubit_name(*g.target);
    return s + ")";
  }
};

}  // namespace

std::string to_string(const NativeInstruction& instruction) { return std::visit(Describe{}, instruction); }

NativeCircuit::NativeCircuit(std::size_t n_qubits) : frames_(n_qubits, 0.0) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) throw SizeError("native circuit needs 1..12 qubits");
}

void NativeCircuit::check_qubit(std::size_t q) const {
  if (q >= frames_.size()) throw IndexError("qubit " + std::to_string(q) + " outside circuit");
}

double NativeCircuit::phase_frame(std::size_t qubit) const {
  check_qubit(qubit);
  return frames_[qubit];
}

NativeCircuit& NativeCircuit::rotate(const RotationGate& logical) {
  check_qubit(logical.qubit);
  RotationGate physical = logical;
  physical.axis = wrap_phase(logical.axis - frames_[logical.qubit]);
  instructions_.emplace_back(physical);
  return *this;
}

NativeCircuit& NativeCircuit::virtual_z(std::size_t qubit, double phi) {
  check_qubit(qubit);
  frames_[qubit] = wrap_phase(frames_[qubit] + phi);
  return *this;
}

NativeCircuit& NativeCircuit::cphase(const ConditionalPhaseGate& gate) {
  check_qubit(gate.edge.a);
  check_qubit(gate.edge.b);
  instructions_.emplace_back(gate);
  return *this;
}

NativeCircuit& NativeCircuit::swap(const ResonantSwapGate& gate) {
  check_qubit(gate.edge.a);
  check_qubit(gate.edge.b);
  double& fa = frames_[gate.edge.a];
  double& fb = frames_[gate.edge.b];
  if (std::abs(wrap_phase(gate.swap_angle - kPi)) < 1e-12) {
    std::swap(fa, fb);
  } else if (std::abs(wrap_phase(fa - fb)) > 1e-12) {
    throw CompositionError("partial swap on " + edge_name(gate.edge) + " needs equal phase frames");
  }
  instructions_.emplace_back(gate);
  return *this;
}

NativeCircuit& NativeCircuit::idle(std::vector<std::size_t> qubits, double duration) {
  if (duration < 0.0) throw TimeError("idle duration must be non-negative");
  for (auto q : qubits) check_qubit(q);
  instructions_.emplace_back(Idle{std::move(qubits), duration});
  return *this;
}

NativeCircuit& NativeCircuit::error_site(ErrorInjection injection) {
  for (auto q : injection.targets) check_qubit(q);
  instructions_.emplace_back(ErrorSite{std::move(injection)});
  return *this;
}

NativeCircuit& NativeCircuit::reset(const ResonantSwapGate& swap, std::size_t reset_qubit, std::size_t helper) {
  check_qubit(reset_qubit);
  check_qubit(helper);
  if (!swap.edge.same_qubits(Edge{reset_qubit, helper})) {
    throw CompositionError("reset swap edge does not join " + qubit_name(reset_qubit) + " and " + qubit_name(helper));
  }
  // The reset qubit ends in |down>, where its frame is a global phase; the
  // helper inherits the reset qubit's frame in the swapped branch.
  std::swap(frames_[reset_qubit], frames_[helper]);
  instructions_.emplace_back(ResetViaSwap{swap, reset_qubit, helper});
  return *this;
}

NativeCircuit& NativeCircuit::measure(const Edge& pair, std::optional<std::size_t> target) {
  check_qubit(pair.a);
  check_qubit(pair.b);
  if (target && !pair.touches(*target)) throw IndexError("measure target outside the pair");
  instructions_.emplace_back(PairMeasure{pair, target});
  return *this;
}

NativeCircuit& NativeCircuit::push_physical(NativeInstruction instruction) {
  instructions_.push_back(std::move(instruction));
  return *this;
}

NativeCircuit& NativeCircuit::append(const NativeCircuit& other) {
  if (other.n_qubits() != n_qubits()) throw SizeError("appended circuit has a different qubit count");
  for (const auto& instr : other.instructions_) {
    std::visit(
        [this](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RotationGate>) {
            rotate(g);
          } else if constexpr (std::is_same_v<T, ResonantSwapGate>) {
            swap(g);
          } else if constexpr (std::is_same_v<T, ResetViaSwap>) {
            reset(g.swap, g.reset_qubit, g.helper);
          } else {
            instructions_.emplace_back(g);
          }
        },
        instr);
  }
  for (std::size_t q = 0; q < frames_.size(); ++q) virtual_z(q, other.frames_[q]);
  return *this;
}

bool NativeCircuit::is_unitary() const {
  for (const auto& instr : instructions_) {
    if (std::holds_alternative<ErrorSite>(instr) || std::holds_alternative<ResetViaSwap>(instr) ||
        std::holds_alternative<PairMeasure>(instr)) {
      return false;
    }
  }
  return true;
}

double NativeCircuit::total_duration() const {
  double total = 0.0;
  for (const auto& instr : instructions_) {
    std::visit(
        [&total](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RotationGate> || std::is_same_v<T, Idle>) {
            total += g.duration;
          } else if constexpr (std::is_same_v<T, ConditionalPhaseGate> || std::is_same_v<T, ResonantSwapGate>) {
            total += g.duration();
          } else if constexpr (std::is_same_v<T, ResetViaSwap>) {
            total += g.swap.duration();
          }
        },
        instr);
  }
  return total;
}

void check_connectivity(const NativeCircuit& circuit, const DeviceModel& device) {
  if (circuit.n_qubits() > device.n_qubits()) throw ConnectivityError("circuit wider than the device");
  auto require = [&device](const Edge& e) {
    if (!device.has_edge(e)) throw ConnectivityError("instruction on missing edge " + edge_name(e));
  };
  for (const auto& instr : circuit.instructions()) {
    if (const auto* g = std::get_if<ConditionalPhaseGate>(&instr)) require(g->edge);
    if (const auto* g = std::get_if<ResonantSwapGate>(&instr)) require(g->edge);
    if (const auto* g = std::get_if<ResetViaSwap>(&instr)) require(g->swap.edge);
    if (const auto* g = std::get_if<PairMeasure>(&instr)) {
      bool found = false;
      for (const auto& rp : device.readout_pairs) found = found || rp.qubits.same_qubits(g->pair);
      if (!found) throw ReadoutConstraintError("measurement on non-readout pair " + edge_name(g->pair));
    }
  }
}

}  // namespace phaseflip
