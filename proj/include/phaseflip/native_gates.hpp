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
#include <numbers>
#include <optional>

#include "phaseflip/device.hpp"
#include "phaseflip/state_vector.hpp"

namespace phaseflip {

inline constexpr double kPi = std::numbers::pi;

// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

// Drive about an in-plane axis: exp(-i angle/2 (cos(axis) sx + sin(axis) sy)).
// X = (angle pi/2, axis 0), Y = (pi/2, pi/2), X^2 = (pi, 0), X^-1 = (-pi/2, 0).
struct RotationGate {
  std::size_t qubit = 0;
  double axis = 0.0;
  double angle = 0.0;
  double duration = 0.0;  // seconds
};

Unitary rotation_unitary(const RotationGate& gate);
// Rz(phi) = diag(e^{-i phi/2}, e^{i phi/2}).
Unitary z_rotation_unitary(double phi);

// Duration from the qubit's Rabi rate: |angle| / (2 pi f_rabi).
RotationGate make_rotation(const DeviceModel& device, std::size_t qubit, double axis, double angle);

// Tukey-shaped exchange pulse J(t) = J0 * envelope(t) on a barrier gate.
struct ExchangePulse {
  Edge edge;
  double peak_exchange_hz = 0.0;
  double duration = 0.0;  // seconds
  double tukey_alpha = 0.0;
  double modulation_hz = 0.0;

  // Cosine ramps of length alpha*t_p/2 at both ends, flat top in between; zero outside [0, t_p].
  double envelope(double t) const;
  // Closed form of the integral of J(t): J0 * t_p * (1 - alpha/2).
  double integrated_exchange() const;
};

// diag(1, 1, 1, e^{i phase}) on (a, b) in the (dd, du, ud, uu) basis.
struct ConditionalPhaseGate {
  Edge edge;
  double phase = 0.0;
  std::optional<ExchangePulse> pulse;

  Unitary unitary() const;
  double duration() const noexcept { return pulse ? pulse->duration : 0.0; }
};

// Throws DegeneratePulseError for a zero-length or non-positive pulse and
// CalibrationError for a modulated pulse.
ConditionalPhaseGate conditional_phase_from_pulse(const ExchangePulse& pulse);

// Shortest pulse with fixed J0 and alpha giving target_phase (in (-pi, pi]).
ExchangePulse calibrate_cphase(const Edge& edge, double target_phase, const DeviceModel& device,
                               double peak_exchange_hz, double tukey_alpha);

// Calibrated gate using the device's default exchange settings. A zero phase
// gives an identity gate without a pulse.
ConditionalPhaseGate make_cphase(const DeviceModel& device, const Edge& edge, double phase);
ConditionalPhaseGate make_cz(const DeviceModel& device, const Edge& edge);
ConditionalPhaseGate make_cs_inverse(const DeviceModel& device, const Edge& edge);

struct ResonantSwapGate {
  Edge edge;
  double swap_angle = kPi;
  ExchangePulse pulse;

  double duration() const noexcept { return pulse.duration; }
};

// Rotation by angle inside span{|01>, |10>}: cos(angle/2) on the diagonal,
// -i sin(angle/2) off it; |00> and |11> untouched.
Unitary odd_subspace_rotation(double angle);

// Swap angle 2 pi * integral of J_eff, with J_eff(t) = envelope(t) * J0 / 2.
double resonant_swap_angle(const ExchangePulse& pulse);

// Resonantly modulated pulse (f_mod = |f_a - f_b|) reaching swap_angle.
ResonantSwapGate calibrate_resonant_swap(const DeviceModel& device, const Edge& edge,
                                         double swap_angle = kPi);

// Throws ConnectivityError for a missing edge and ResonanceError when the
// modulation misses the Zeeman difference by more than the device tolerance.
Unitary resonant_swap_unitary(const ResonantSwapGate& gate, const DeviceModel& device);

}  // namespace phaseflip
