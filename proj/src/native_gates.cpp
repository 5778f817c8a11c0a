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

#include "phaseflip/native_gates.hpp"

#include <cmath>
#include <string>

#include "phaseflip/errors.hpp"

namespace phaseflip {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_edge(const DeviceModel& device, const Edge& edge) {
  if (!device.has_edge(edge)) {
    throw ConnectivityError("device has no edge " + edge_name(edge));
  }
}

}  // namespace

double wrap_phase(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

Unitary rotation_unitary(const RotationGate& gate) {
  const double c = std::cos(gate.angle / 2.0);
  const double s = std::sin(gate.angle / 2.0);
  const Complex minus_i{0.0, -1.0};
  Eigen::Matrix2cd m;
  m(0, 0) = c;
  m(0, 1) = minus_i * std::polar(1.0, -gate.axis) * s;
  m(1, 0) = minus_i * std::polar(1.0, gate.axis) * s;
  m(1, 1) = c;
  return Unitary(m);
}

Unitary z_rotation_unitary(double phi) {
  const Complex entries[2] = {std::polar(1.0, -phi / 2.0), std::polar(1.0, phi / 2.0)};
  return Unitary::diagonal(entries);
}

RotationGate make_rotation(const DeviceModel& device, std::size_t qubit, double axis, double angle) {
  if (qubit >= device.n_qubits()) throw IndexError("qubit " + std::to_string(qubit) + " not on device");
  const double rate = device.rabi_rates_hz.at(qubit);
  return RotationGate{qubit, axis, angle, std::abs(angle) / (kTwoPi * rate)};
}

double ExchangePulse::envelope(double t) const {
  if (t < 0.0 || t > duration) return 0.0;
  const double ramp = tukey_alpha * duration / 2.0;
  if (ramp <= 0.0) return 1.0;
  if (t < ramp) return 0.5 * (1.0 - std::cos(kPi * t / ramp));
  if (t > duration - ramp) return 0.5 * (1.0 - std::cos(kPi * (duration - t) / ramp));
  return 1.0;
}

double ExchangePulse::integrated_exchange() const {
  return peak_exchange_hz * duration * (1.0 - tukey_alpha / 2.0);
}

Unitary ConditionalPhaseGate::unitary() const {
  const Complex entries[4] = {1.0, 1.0, 1.0, std::polar(1.0, phase)};
  return Unitary::diagonal(entries);
}

ConditionalPhaseGate conditional_phase_from_pulse(const ExchangePulse& pulse) {
  if (pulse.modulation_hz != 0.0) {
    throw CalibrationError("conditional-phase pulses must be unmodulated");
  }
  if (!(pulse.duration > 0.0) || !(pulse.peak_exchange_hz > 0.0)) {
    throw DegeneratePulseError("exchange pulse has zero duration or amplitude");
  }
  const double phase = wrap_phase(kTwoPi * pulse.integrated_exchange());
  return ConditionalPhaseGate{pulse.edge, phase, pulse};
}

ExchangePulse calibrate_cphase(const Edge& edge, double target_phase, const DeviceModel& device,
                               double peak_exchange_hz, double tukey_alpha) {
  require_edge(device, edge);
  if (!(target_phase > -kPi && target_phase <= kPi)) {
    throw CalibrationError("target phase must lie in (-pi, pi]");
  }
  if (std::abs(target_phase) < 1e-12) {
    throw CalibrationError("zero conditional phase needs a zero-length pulse");
  }
  if (!(peak_exchange_hz > 0.0) || tukey_alpha < 0.0 || tukey_alpha > 1.0) {
    throw CalibrationError("exchange amplitude must be positive and tukey alpha in [0, 1]");
  }
  // Smallest positive integral (in cycles) congruent to the target.
  const double cycles = target_phase > 0.0 ? target_phase / kTwoPi : 1.0 + target_phase / kTwoPi;
  ExchangePulse pulse{edge, peak_exchange_hz, cycles / (peak_exchange_hz * (1.0 - tukey_alpha / 2.0)),
                      tukey_alpha, 0.0};
  const double achieved = conditional_phase_from_pulse(pulse).phase;
  if (std::abs(wrap_phase(achieved - target_phase)) > 1e-6) {
    throw CalibrationError("calibrated pulse misses the target phase");
  }
  return pulse;
}

ConditionalPhaseGate make_cphase(const DeviceModel& device, const Edge& edge, double phase) {
  require_edge(device, edge);
  const double wrapped = wrap_phase(phase);
  if (std::abs(wrapped) < 1e-12) return ConditionalPhaseGate{edge, 0.0, std::nullopt};
  auto gate = conditional_phase_from_pulse(
      calibrate_cphase(edge, wrapped, device, device.exchange_hz, device.tukey_alpha));
  gate.phase = wrapped;
  return gate;
}

ConditionalPhaseGate make_cz(const DeviceModel& device, const Edge& edge) {
  return make_cphase(device, edge, kPi);
}

ConditionalPhaseGate make_cs_inverse(const DeviceModel& device, const Edge& edge) {
  return make_cphase(device, edge, -kPi / 2.0);
}

Unitary odd_subspace_rotation(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0;
  m(3, 3) = 1.0;
  m(1, 1) = c;
  m(2, 2) = c;
  m(1, 2) = Complex{0.0, -s};
  m(2, 1) = Complex{0.0, -s};
  return Unitary(m);
}

double resonant_swap_angle(const ExchangePulse& pulse) {
  return kTwoPi * 0.5 * pulse.integrated_exchange();
}

ResonantSwapGate calibrate_resonant_swap(const DeviceModel& device, const Edge& edge, double swap_angle) {
  require_edge(device, edge);
  if (!(swap_angle > 0.0)) throw CalibrationError("swap angle must be positive");
  const double j0 = device.exchange_hz;
  const double alpha = device.tukey_alpha;
  ExchangePulse pulse{edge, j0, swap_angle / (kPi * j0 * (1.0 - alpha / 2.0)), alpha,
                      std::abs(device.qubit_frequencies_hz.at(edge.a) -
                               device.qubit_frequencies_hz.at(edge.b))};
  return ResonantSwapGate{edge, resonant_swap_angle(pulse), pulse};
}

Unitary resonant_swap_unitary(const ResonantSwapGate& gate, const DeviceModel& device) {
  require_edge(device, gate.edge);
  const double detuning = std::abs(device.qubit_frequencies_hz.at(gate.edge.a) -
                                   device.qubit_frequencies_hz.at(gate.edge.b));
  if (std::abs(gate.pulse.modulation_hz - detuning) > device.resonance_tolerance_hz) {
    throw ResonanceError("modulation " + std::to_string(gate.pulse.modulation_hz) +
                         " Hz is off resonance with " + std::to_string(detuning) + " Hz");
  }
  return odd_subspace_rotation(gate.swap_angle);
}

}  // namespace phaseflip
