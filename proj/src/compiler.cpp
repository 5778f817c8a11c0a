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

#include "phaseflip/compiler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "phaseflip/circuit_unitary.hpp"
#include "phaseflip/errors.hpp"
#include "phaseflip/toffoli.hpp"

namespace phaseflip {

namespace {

constexpr std::array<std::pair<LogicalOp, const char*>, 12> kOpNames{{
    {LogicalOp::prepare, "prepare"},
    {LogicalOp::h, "h"},
    {LogicalOp::x, "x"},
    {LogicalOp::y, "y"},
    {LogicalOp::z, "z"},
    {LogicalOp::rotation, "rotation"},
    {LogicalOp::cz, "cz"},
    {LogicalOp::cnot, "cnot"},
    {LogicalOp::toffoli, "toffoli"},
    {LogicalOp::idle, "idle"},
    {LogicalOp::error, "error"},
    {LogicalOp::measure, "measure"},
}};

constexpr std::array<std::pair<PrepareState, const char*>, 5> kStateNames{{
    {PrepareState::down, "down"},
    {PrepareState::up, "up"},
    {PrepareState::plus_x, "plus_x"},
    {PrepareState::plus_y, "plus_y"},
    {PrepareState::minus_y, "minus_y"},
}};

std::string lower_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::size_t arity(LogicalOp op) {
  switch (op) {
    case LogicalOp::cz:
    case LogicalOp::cnot:
      return 2;
    case LogicalOp::toffoli:
      return 3;
    case LogicalOp::idle:
    case LogicalOp::error:
      return 0;  // variable
    default:
      return 1;
  }
}

// Rotation (axis, angle) taking |down> to the requested state.
std::optional<std::pair<double, double>> preparation_rotation(PrepareState s) {
  switch (s) {
    case PrepareState::down:
      return std::nullopt;
    case PrepareState::up:
      return std::pair{0.0, kPi};
    case PrepareState::plus_x:
      return std::pair{kPi / 2.0, kPi / 2.0};
    case PrepareState::plus_y:
      return std::pair{0.0, -kPi / 2.0};
    case PrepareState::minus_y:
      return std::pair{0.0, kPi / 2.0};
  }
  return std::nullopt;
}

enum class Known { down, unknown };

}  // namespace

const char* to_string(LogicalOp op) noexcept {
  for (const auto& [o, name] : kOpNames) {
    if (o == op) return name;
  }
  return "?";
}

LogicalOp parse_logical_op(std::string_view name) {
  const auto key = lower_case(name);
  for (const auto& [o, n] : kOpNames) {
    if (key == n) return o;
  }
  throw Error("unknown logical op '" + std::string(name) + "'");
}

const char* to_string(PrepareState state) noexcept {
  for (const auto& [s, name] : kStateNames) {
    if (s == state) return name;
  }
  return "?";
}

PrepareState parse_prepare_state(std::string_view name) {
  const auto key = lower_case(name);
  if (key == "x") return PrepareState::minus_y;
  for (const auto& [s, n] : kStateNames) {
    if (key == n) return s;
  }
  throw Error("unknown input state '" + std::string(name) + "'");
}

namespace {

LogicalInstruction instruction(LogicalOp op, std::vector<std::size_t> qubits, double angle = 0.0, double axis = 0.0) {
  LogicalInstruction in;
  in.op = op;
  in.qubits = std::move(qubits);
  in.angle = angle;
  in.axis = axis;
  return in;
}

}  // namespace

LogicalCircuit::LogicalCircuit(std::size_t n_qubits) : n_qubits_(n_qubits), touched_(n_qubits, false) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) throw SizeError("logical circuit needs 1..12 qubits");
}

LogicalCircuit& LogicalCircuit::push(LogicalInstruction in) {
  const bool is_measure = in.op == LogicalOp::measure;
  if (measuring_ && !is_measure) throw CompositionError("measure must be a trailing suffix");
  const auto& qs = in.op == LogicalOp::error ? in.injection.targets : in.qubits;
  const std::size_t need = arity(in.op);
  if (need != 0 && qs.size() != need) {
    throw CompositionError(std::string(to_string(in.op)) + " expects " + std::to_string(need) + " qubit(s)");
  }
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (qs[i] >= n_qubits_) throw IndexError("qubit " + std::to_string(qs[i]) + " outside circuit");
    for (std::size_t j = 0; j < i; ++j) {
      if (qs[i] == qs[j]) throw IndexError("repeated qubit in " + std::string(to_string(in.op)));
    }
  }
  if (in.op == LogicalOp::prepare && touched_[in.qubits[0]]) {
    throw CompositionError("prepare on " + qubit_name(in.qubits[0]) + " after it was used");
  }
  if (in.op == LogicalOp::idle && in.duration < 0.0) throw TimeError("idle duration must be non-negative");
  if (in.op != LogicalOp::idle && in.op != LogicalOp::error) {
    for (auto q : qs) touched_[q] = true;
  }
  measuring_ = measuring_ || is_measure;
  instructions_.push_back(std::move(in));
  return *this;
}

LogicalCircuit& LogicalCircuit::prepare(std::size_t q, PrepareState state) {
  auto in = instruction(LogicalOp::prepare, {q});
  in.state = state;
  return push(std::move(in));
}
LogicalCircuit& LogicalCircuit::h(std::size_t q) { return push(instruction(LogicalOp::h, {q})); }
LogicalCircuit& LogicalCircuit::x(std::size_t q, double theta) {
  return push(instruction(LogicalOp::x, {q}, theta));
}
LogicalCircuit& LogicalCircuit::y(std::size_t q, double theta) {
  return push(instruction(LogicalOp::y, {q}, theta));
}
LogicalCircuit& LogicalCircuit::z(std::size_t q, double phi) {
  return push(instruction(LogicalOp::z, {q}, phi));
}
LogicalCircuit& LogicalCircuit::rotation(std::size_t q, double axis, double theta) {
  return push(instruction(LogicalOp::rotation, {q}, theta, axis));
}
LogicalCircuit& LogicalCircuit::cz(std::size_t a, std::size_t b) {
  return push(instruction(LogicalOp::cz, {a, b}));
}
LogicalCircuit& LogicalCircuit::cnot(std::size_t control, std::size_t target) {
  return push(instruction(LogicalOp::cnot, {control, target}));
}
LogicalCircuit& LogicalCircuit::toffoli(std::size_t c1, std::size_t c2, std::size_t target) {
  return push(instruction(LogicalOp::toffoli, {c1, c2, target}));
}
LogicalCircuit& LogicalCircuit::idle(std::vector<std::size_t> qubits, double duration) {
  auto in = instruction(LogicalOp::idle, std::move(qubits));
  in.duration = duration;
  return push(std::move(in));
}
LogicalCircuit& LogicalCircuit::error(ErrorInjection injection) {
  auto in = instruction(LogicalOp::error, {});
  in.injection = std::move(injection);
  return push(std::move(in));
}
LogicalCircuit& LogicalCircuit::measure(std::size_t q) { return push(instruction(LogicalOp::measure, {q})); }

bool LogicalCircuit::is_unitary() const {
  return std::none_of(instructions_.begin(), instructions_.end(), [](const LogicalInstruction& in) {
    return in.op == LogicalOp::error || in.op == LogicalOp::measure;
  });
}

std::vector<std::size_t> LogicalCircuit::measured_qubits() const {
  std::vector<std::size_t> out;
  for (const auto& in : instructions_) {
    if (in.op == LogicalOp::measure) out.push_back(in.qubits[0]);
  }
  return out;
}

NativeCircuit lower(const LogicalCircuit& circuit, const DeviceModel& device) {
  if (circuit.n_qubits() > device.n_qubits()) throw ConnectivityError("circuit uses qubits absent from the device");
  NativeCircuit native(device.n_qubits());
  auto rot = [&](std::size_t q, double axis, double angle) {
    native.rotate(make_rotation(device, q, axis, angle));
  };
  for (const auto& in : circuit.instructions()) {
    const auto& q = in.qubits;
    switch (in.op) {
      case LogicalOp::prepare:
        if (auto r = preparation_rotation(in.state)) rot(q[0], r->first, r->second);
        break;
      case LogicalOp::h:
        rot(q[0], kPi / 2.0, -kPi / 2.0);
        native.virtual_z(q[0], kPi);
        break;
      case LogicalOp::x:
        rot(q[0], 0.0, in.angle);
        break;
      case LogicalOp::y:
        rot(q[0], kPi / 2.0, in.angle);
        break;
      case LogicalOp::rotation:
        rot(q[0], in.axis, in.angle);
        break;
      case LogicalOp::z:
        native.virtual_z(q[0], in.angle);
        break;
      case LogicalOp::cz:
        native.cphase(make_cz(device, Edge{q[0], q[1]}));
        break;
      case LogicalOp::cnot:
        rot(q[1], kPi / 2.0, -kPi / 2.0);
        native.cphase(make_cz(device, Edge{q[0], q[1]}));
        rot(q[1], kPi / 2.0, kPi / 2.0);
        break;
      case LogicalOp::toffoli:
        native.append(toffoli_like(q[0], q[1], q[2], device));
        break;
      case LogicalOp::idle:
        native.idle(q, in.duration);
        break;
      case LogicalOp::error:
        native.error_site(in.injection);
        break;
      case LogicalOp::measure:
        break;
    }
  }
  const auto targets = circuit.measured_qubits();
  if (targets.empty()) return native;
  return insert_readout_reset(native, device, targets);
}

NativeCircuit insert_readout_reset(const NativeCircuit& circuit, const DeviceModel& device,
                                   const std::vector<std::size_t>& targets) {
  const std::size_t n = circuit.n_qubits();
  std::vector<Known> known(n, Known::down);
  for (const auto& instr : circuit.instructions()) {
    if (const auto* g = std::get_if<RotationGate>(&instr)) known[g->qubit] = Known::unknown;
    if (const auto* g = std::get_if<ConditionalPhaseGate>(&instr)) {
      known[g->edge.a] = known[g->edge.b] = Known::unknown;
    }
    if (const auto* g = std::get_if<ResonantSwapGate>(&instr)) {
      if (std::abs(wrap_phase(g->swap_angle - kPi)) < 1e-12) {
        std::swap(known[g->edge.a], known[g->edge.b]);
      } else if (known[g->edge.a] != Known::down || known[g->edge.b] != Known::down) {
        known[g->edge.a] = known[g->edge.b] = Known::unknown;
      }
    }
    if (const auto* g = std::get_if<ResetViaSwap>(&instr)) {
      known[g->helper] = known[g->reset_qubit];
      known[g->reset_qubit] = Known::down;
    }
    if (const auto* g = std::get_if<PairMeasure>(&instr)) known[g->pair.a] = known[g->pair.b] = Known::unknown;
  }

  NativeCircuit out = circuit;
  std::vector<bool> done(n, false);
  auto is_target = [&](std::size_t q) { return std::find(targets.begin(), targets.end(), q) != targets.end(); };
  for (auto q : targets) {
    if (q >= n) throw IndexError("read target outside circuit");
    if (done[q]) continue;
    const auto rp = device.readout_pair_of(q);
    if (!rp) throw ReadoutConstraintError(qubit_name(q) + " is not in a readout pair");
    const Edge pair = rp->qubits;
    const std::size_t partner = pair.other(q);
    if (is_target(partner)) {
      out.measure(pair);
      done[q] = done[partner] = true;
      continue;
    }
    if (known[partner] != Known::down) {
      std::optional<std::size_t> helper;
      for (auto h : device.neighbours(partner)) {
        if (pair.touches(h) || is_target(h) || h >= n || known[h] != Known::down) continue;
        helper = h;
        break;
      }
      if (!helper) {
        throw ReadoutConstraintError("cannot read " + qubit_name(q) + ": partner " + qubit_name(partner) +
                                     " is unknown and has no |down> helper");
      }
      out.reset(calibrate_resonant_swap(device, Edge{partner, *helper}), partner, *helper);
      known[*helper] = Known::unknown;
      known[partner] = Known::down;
    }
    out.measure(pair, q);
    done[q] = true;
  }
  return out;
}

namespace {

Eigen::Matrix2cd rotation_matrix(double axis, double theta) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd sx, sy;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  return std::cos(theta / 2.0) * Eigen::Matrix2cd::Identity() -
         i * std::sin(theta / 2.0) * (std::cos(axis) * sx + std::sin(axis) * sy);
}

void apply_matrix(std::vector<Complex>& column, std::size_t n, const Eigen::MatrixXcd& m,
                  std::initializer_list<std::size_t> targets) {
  apply_unitary(column, n, Unitary(m), std::span<const std::size_t>(targets.begin(), targets.size()));
}

}  // namespace

Unitary logical_unitary(const LogicalCircuit& circuit, std::size_t n_qubits) {
  if (n_qubits > 6 || n_qubits < circuit.n_qubits()) throw SizeError("logical unitary needs width <= n_qubits <= 6");
  if (!circuit.is_unitary()) throw CompositionError("logical circuit contains errors or measurements");
  const std::size_t dim = std::size_t{1} << n_qubits;
  Eigen::Matrix2cd had;
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
  cz(3, 3) = -1;
  Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();  // control is the high bit
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  Eigen::MatrixXcd toffoli = Eigen::MatrixXcd::Identity(8, 8);
  toffoli(6, 6) = toffoli(7, 7) = 0;
  toffoli(6, 7) = toffoli(7, 6) = 1;

  Eigen::MatrixXcd m(dim, dim);
  std::vector<Complex> col(dim);
  for (std::size_t basis = 0; basis < dim; ++basis) {
    std::fill(col.begin(), col.end(), Complex{});
    col[basis] = 1.0;
    for (const auto& in : circuit.instructions()) {
      const auto& q = in.qubits;
      switch (in.op) {
        case LogicalOp::prepare:
          if (auto r = preparation_rotation(in.state)) apply_matrix(col, n_qubits, rotation_matrix(r->first, r->second), {q[0]});
          break;
        case LogicalOp::h:
          apply_matrix(col, n_qubits, had, {q[0]});
          break;
        case LogicalOp::x:
          apply_matrix(col, n_qubits, rotation_matrix(0.0, in.angle), {q[0]});
          break;
        case LogicalOp::y:
          apply_matrix(col, n_qubits, rotation_matrix(kPi / 2.0, in.angle), {q[0]});
          break;
        case LogicalOp::rotation:
          apply_matrix(col, n_qubits, rotation_matrix(in.axis, in.angle), {q[0]});
          break;
        case LogicalOp::z: {
          Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
          z(0, 0) = std::polar(1.0, -in.angle / 2.0);
          z(1, 1) = std::polar(1.0, in.angle / 2.0);
          apply_matrix(col, n_qubits, z, {q[0]});
          break;
        }
        case LogicalOp::cz:
          apply_matrix(col, n_qubits, cz, {q[0], q[1]});
          break;
        case LogicalOp::cnot:
          apply_matrix(col, n_qubits, cnot, {q[0], q[1]});
          break;
        case LogicalOp::toffoli:
          apply_matrix(col, n_qubits, toffoli, {q[0], q[1], q[2]});
          break;
        default:
          break;
      }
    }
    for (std::size_t r = 0; r < dim; ++r) m(r, basis) = col[r];
  }
  return Unitary(m);
}

EquivalenceResult verify_equivalence(const NativeCircuit& native, const LogicalCircuit& logical, EquivalenceMode mode,
                                     double tolerance, const std::vector<std::size_t>& controls) {
  const std::size_t n = std::max(native.n_qubits(), logical.n_qubits());
  if (n > 6) throw SizeError("equivalence check limited to 6 qubits");
  const Eigen::MatrixXcd N = full_unitary_of_circuit(native, n).matrix();
  const Eigen::MatrixXcd L = logical_unitary(logical, n).matrix();
  EquivalenceResult result;
  if (mode == EquivalenceMode::exact) {
    const Complex overlap = (L.adjoint() * N).trace();
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    result.max_deviation = (N - phase * L).cwiseAbs().maxCoeff();
  } else {
    for (auto c : controls) {
      if (c >= n) throw IndexError("control qubit outside circuit");
    }
    const Eigen::MatrixXcd W = L.adjoint() * N;
    const std::size_t dim = static_cast<std::size_t>(W.rows());
    auto control_value = [&](std::size_t index) {
      std::size_t v = 0;
      for (std::size_t k = 0; k < controls.size(); ++k) v |= ((index >> controls[k]) & 1u) << k;
      return v;
    };
    std::map<std::size_t, std::pair<Complex, std::size_t>> sums;
    for (std::size_t i = 0; i < dim; ++i) {
      auto& s = sums[control_value(i)];
      s.first += W(i, i);
      s.second += 1;
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        Complex expected{};
        if (i == j) {
          const auto& s = sums[control_value(i)];
          expected = s.first / static_cast<double>(s.second);
        }
        dev = std::max(dev, std::abs(W(i, j) - expected));
      }
    }
    result.max_deviation = dev;
  }
  result.equivalent = result.max_deviation < tolerance;
  return result;
}

}  // namespace phaseflip
