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
#include <utility>
#include <vector>

namespace phaseflip {

// Unordered pair of qubit indices; order is kept for gates that care
// (control/target of a calibration, reset/helper of a swap).
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;

  bool same_qubits(const Edge& other) const noexcept {
    return (a == other.a && b == other.b) || (a == other.b && b == other.a);
  }
  bool touches(std::size_t q) const noexcept { return a == q || b == q; }
  std::size_t other(std::size_t q) const noexcept { return q == a ? b : a; }
  std::pair<std::size_t, std::size_t> as_pair() const noexcept { return {a, b}; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct ReadoutPair {
  Edge qubits;
  std::string sensor;
};

// Q1..Q4 <-> 0..3.
std::string qubit_name(std::size_t qubit);
// Accepts "Q1".."Q12" (case-insensitive 'q'); throws IndexError otherwise.
std::size_t parse_qubit(std::string_view name);
std::string edge_name(const Edge& edge);

struct DeviceModel {
  std::vector<double> qubit_frequencies_hz;
  std::vector<double> rabi_rates_hz;
  std::vector<Edge> edges;
  std::vector<ReadoutPair> readout_pairs;
  double external_field_t = 0.0;

  // Defaults used when synthesising calibrated exchange pulses.
  double exchange_hz = 10e6;
  double tukey_alpha = 0.5;
  double resonance_tolerance_hz = 1e3;

  std::size_t n_qubits() const noexcept { return qubit_frequencies_hz.size(); }
  bool has_edge(std::size_t a, std::size_t b) const noexcept;
  bool has_edge(const Edge& e) const noexcept { return has_edge(e.a, e.b); }
  std::optional<ReadoutPair> readout_pair_of(std::size_t qubit) const;
  std::vector<std::size_t> neighbours(std::size_t qubit) const;

  // Throws Error if sizes disagree, edges reference missing qubits, or the
  // readout pairs do not partition the qubits into disjoint pairs.
  void validate() const;
};

// The 2x2 germanium register: Q1..Q4 at 1.393/2.192/2.101/2.412 GHz (0.65 T),
// square connectivity, readout pairs Q1Q2 (S1) and Q3Q4 (S2), 5 MHz Rabi rates.
DeviceModel four_qubit_device();

}  // namespace phaseflip
