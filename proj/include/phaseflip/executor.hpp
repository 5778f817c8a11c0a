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
#include <vector>

#include "phaseflip/device.hpp"
#include "phaseflip/native_circuit.hpp"
#include "phaseflip/noise.hpp"
#include "phaseflip/state_vector.hpp"

namespace phaseflip {

// Everything a shot needs besides the circuit.
struct Setup {
  DeviceModel device;
  NoiseParams noise;
  ReadoutModel readout;
  ResetModel reset;

  // Noiseless qubits, perfect readout and reset.
  static Setup ideal(const DeviceModel& device);
};

enum class Estimator {
  sampled,  // projective measurement and sampled readout error per shot
  exact,    // per-trajectory probability of an odd report at the final read
};

const char* to_string(Estimator estimator) noexcept;

struct ExecutionSettings {
  std::uint64_t shots = 1;
  std::uint64_t master_seed = 0;
  // Stream coordinates; shot s uses make_stream(seed, {stream_id, curve, point, s}).
  std::uint64_t stream_id = 0;
  std::uint64_t curve = 0;
  std::uint64_t point = 0;
  Estimator estimator = Estimator::sampled;
  unsigned jobs = 1;
  // Drive noise during rotations even when the noise model does not ask for it.
  bool noisy_drives = false;
  bool record_shots = false;
};

struct ShotRecord {
  std::vector<bool> flips;  // error-site firings in circuit order
  Parity reported = Parity::even;
  double odd_value = 0.0;  // 0/1 when sampled, P(report odd) when exact
};

struct PointResult {
  std::uint64_t shots = 0;
  double odd_sum = 0.0;
  std::vector<ShotRecord> log;

  double odd_fraction() const { return shots ? odd_sum / static_cast<double>(shots) : 0.0; }
};

// Runs the circuit shot by shot. The last PairMeasure is the reported
// outcome; earlier ones collapse the state. Throws CompositionError if the
// circuit has no PairMeasure. Results do not depend on settings.jobs.
PointResult execute(const NativeCircuit& circuit, const Setup& setup, const ExecutionSettings& settings);

// Noiseless logical state after the circuit: coherent gates, deterministic
// error sites, ideal resets and trailing frames; bernoulli error sites and
// idles are skipped. Throws CompositionError on a PairMeasure.
StateVector simulate_noiseless(const NativeCircuit& circuit, const DeviceModel& device);

// Bloch polar/azimuthal angles (theta from |down>, phi) of a qubit's reduced state.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
  double purity = 1.0;
};
BlochAngles bloch_angles(const StateVector& state, std::size_t qubit);

}  // namespace phaseflip
