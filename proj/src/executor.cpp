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

#include "phaseflip/executor.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <thread>

#include "phaseflip/circuit_unitary.hpp"
#include "phaseflip/errors.hpp"

namespace phaseflip {

namespace {

enum class OpKind { coherent, driven, idle, error, reset, measure };

struct Op {
  OpKind kind;
  std::optional<Unitary> unitary;
  std::vector<std::size_t> targets;
  double duration = 0.0;
  RotationGate rotation;
  const ErrorInjection* injection = nullptr;
  const ReadoutPairModel* readout = nullptr;
  Edge pair;
  bool final = false;
};

struct Program {
  std::vector<Op> ops;
  std::vector<std::size_t> all_qubits;
  bool dephase_gates = false;
};

Program compile(const NativeCircuit& circuit, const Setup& setup, bool noisy_drives) {
  if (circuit.n_qubits() != setup.device.n_qubits()) throw SizeError("circuit width differs from the device");
  check_connectivity(circuit, setup.device);
  Program prog;
  prog.all_qubits.resize(circuit.n_qubits());
  std::iota(prog.all_qubits.begin(), prog.all_qubits.end(), std::size_t{0});
  prog.dephase_gates = setup.noise.dephase_during_gates;
  const bool driven = noisy_drives || setup.noise.dephase_during_gates;
  std::optional<std::size_t> last_measure;
  for (const auto& instr : circuit.instructions()) {
    Op op{};
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RotationGate>) {
            op.rotation = g;
            op.targets = {g.qubit};
            op.duration = g.duration;
            if (driven) {
              op.kind = OpKind::driven;
            } else {
              op.kind = OpKind::coherent;
              op.unitary = rotation_unitary(g);
            }
          } else if constexpr (std::is_same_v<T, ConditionalPhaseGate>) {
            op.kind = OpKind::coherent;
            op.unitary = g.unitary();
            op.targets = {g.edge.a, g.edge.b};
            op.duration = g.duration();
          } else if constexpr (std::is_same_v<T, ResonantSwapGate>) {
            op.kind = OpKind::coherent;
            op.unitary = resonant_swap_unitary(g, setup.device);
            op.targets = {g.edge.a, g.edge.b};
            op.duration = g.duration();
          } else if constexpr (std::is_same_v<T, Idle>) {
            op.kind = OpKind::idle;
            op.targets = g.qubits;
            op.duration = g.duration;
          } else if constexpr (std::is_same_v<T, ErrorSite>) {
            op.kind = OpKind::error;
            op.injection = &g.injection;
          } else if constexpr (std::is_same_v<T, ResetViaSwap>) {
            op.kind = OpKind::reset;
            op.targets = {g.reset_qubit, g.helper};
            op.duration = g.swap.duration();
          } else if constexpr (std::is_same_v<T, PairMeasure>) {
            op.kind = OpKind::measure;
            op.pair = g.pair;
            op.readout = &setup.readout.for_pair(g.pair);
            last_measure = prog.ops.size();
          }
        },
        instr);
    prog.ops.push_back(std::move(op));
  }
  if (!last_measure) throw CompositionError("circuit has no pair measurement");
  prog.ops[*last_measure].final = true;
  return prog;
}

// Read order on the pair follows the readout model's orientation.
std::pair<std::size_t, std::size_t> oriented(const Edge& measured, const ReadoutPairModel& model) {
  if (model.pair.a == measured.a) return measured.as_pair();
  return {measured.b, measured.a};
}

ShotRecord run_shot(const Program& prog, const Setup& setup, const ExecutionSettings& s, std::uint64_t shot) {
  StateVector state(setup.device.n_qubits());
  Rng rng = make_stream(s.master_seed, {s.stream_id, s.curve, s.point, shot});
  const ShotNoiseContext ctx = begin_shot(setup.noise, rng);
  ShotRecord rec;
  auto idle_others = [&](const Op& op) {
    if (!prog.dephase_gates || op.duration <= 0.0) return;
    std::vector<std::size_t> others;
    for (auto q : prog.all_qubits) {
      if (std::find(op.targets.begin(), op.targets.end(), q) == op.targets.end()) others.push_back(q);
    }
    apply_idle(state, others, op.duration, ctx, rng);
  };
  for (const auto& op : prog.ops) {
    switch (op.kind) {
      case OpKind::coherent:
        apply_unitary(state, *op.unitary, op.targets);
        if (prog.dephase_gates && op.targets.size() == 2) {
          apply_idle(state, op.targets, op.duration, ctx, rng);
        }
        idle_others(op);
        break;
      case OpKind::driven:
        apply_driven_rotation(state, op.rotation, ctx, rng);
        idle_others(op);
        break;
      case OpKind::idle:
        apply_idle(state, op.targets, op.duration, ctx, rng);
        break;
      case OpKind::error: {
        const auto fired = inject_errors(state, *op.injection, rng);
        if (s.record_shots) rec.flips.insert(rec.flips.end(), fired.begin(), fired.end());
        break;
      }
      case OpKind::reset:
        reset_via_swap(state, op.targets[0], op.targets[1], setup.reset, setup.device, rng);
        idle_others(op);
        break;
      case OpKind::measure: {
        const auto pair = oriented(op.pair, *op.readout);
        if (op.final && s.estimator == Estimator::exact) {
          const double p_odd = pair_odd_probability(state, pair, op.readout->odd_class);
          rec.odd_value = p_odd * op.readout->f_odd + (1.0 - p_odd) * (1.0 - op.readout->f_even);
          rec.reported = rec.odd_value > 0.5 ? Parity::odd : Parity::even;
        } else {
          const auto m = measure_pair(state, pair, rng, op.readout->odd_class);
          const Parity reported = readout_with_error(m.outcome, *op.readout, rng);
          if (op.final) {
            rec.reported = reported;
            rec.odd_value = reported == Parity::odd ? 1.0 : 0.0;
          }
        }
        break;
      }
    }
  }
  return rec;
}

}  // namespace

Setup Setup::ideal(const DeviceModel& device) {
  return Setup{device, NoiseParams::noiseless(device.n_qubits()), ReadoutModel::ideal(device), ResetModel{}};
}

const char* to_string(Estimator estimator) noexcept {
  return estimator == Estimator::exact ? "exact" : "sampled";
}

PointResult execute(const NativeCircuit& circuit, const Setup& setup, const ExecutionSettings& settings) {
  if (settings.shots == 0) throw Error("shots must be at least 1");
  const Program prog = compile(circuit, setup, settings.noisy_drives);
  const std::uint64_t n = settings.shots;
  std::vector<double> values(n);
  std::vector<ShotRecord> log;
  if (settings.record_shots) log.resize(n);

  const unsigned jobs = std::max(1u, std::min<unsigned>(settings.jobs, static_cast<unsigned>(std::min<std::uint64_t>(n, 1024))));
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t s = begin; s < end; ++s) {
      ShotRecord rec = run_shot(prog, setup, settings, s);
      values[s] = rec.odd_value;
      if (settings.record_shots) log[s] = std::move(rec);
    }
  };
  if (jobs == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(jobs);
    const std::uint64_t chunk = (n + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::uint64_t begin = std::min(n, j * chunk);
      const std::uint64_t end = std::min(n, begin + chunk);
      threads.emplace_back([&, j, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  PointResult res;
  res.shots = n;
  for (double v : values) res.odd_sum += v;
  res.log = std::move(log);
  return res;
}

StateVector simulate_noiseless(const NativeCircuit& circuit, const DeviceModel& device) {
  StateVector state(circuit.n_qubits());
  auto amps = state.mutable_amplitudes();
  for (const auto& instr : circuit.instructions()) {
    if (const auto* e = std::get_if<ErrorSite>(&instr)) {
      if (e->injection.mode == ErrorInjection::Mode::deterministic_phase) {
        for (auto q : e->injection.targets) {
          const std::size_t t[1] = {q};
          apply_unitary(amps, state.n_qubits(), z_rotation_unitary(e->injection.phase), t);
        }
      }
    } else if (const auto* r = std::get_if<ResetViaSwap>(&instr)) {
      const std::size_t t[2] = {r->reset_qubit, r->helper};
      apply_unitary(amps, state.n_qubits(), resonant_swap_unitary(r->swap, device), t);
    } else if (std::holds_alternative<PairMeasure>(instr)) {
      throw CompositionError("noiseless simulation stops before measurements");
    } else {
      apply_native_unitary(amps, state.n_qubits(), instr);
    }
  }
  for (std::size_t q = 0; q < circuit.n_qubits(); ++q) {
    const std::size_t t[1] = {q};
    apply_unitary(amps, state.n_qubits(), z_rotation_unitary(circuit.phase_frame(q)), t);
  }
  return state;
}

BlochAngles bloch_angles(const StateVector& state, std::size_t qubit) {
  if (qubit >= state.n_qubits()) throw IndexError("qubit out of range");
  const std::size_t bit = std::size_t{1} << qubit;
  double rho00 = 0.0, rho11 = 0.0;
  Complex rho10{};
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | bit];
    rho00 += std::norm(a0);
    rho11 += std::norm(a1);
    rho10 += a1 * std::conj(a0);
  }
  const double z = rho00 - rho11;
  const double r = std::sqrt(z * z + 4.0 * std::norm(rho10));
  BlochAngles out;
  out.purity = r;
  out.theta = std::acos(std::clamp(r > 0.0 ? z / r : 1.0, -1.0, 1.0));
  out.phi = std::abs(rho10) > 1e-15 ? std::arg(rho10) : 0.0;
  return out;
}

}  // namespace phaseflip
