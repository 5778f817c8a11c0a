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

#include "phaseflip/device.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "phaseflip/errors.hpp"

namespace phaseflip {

std::string qubit_name(std::size_t qubit) { return "Q" + std::to_string(qubit + 1); }

std::size_t parse_qubit(std::string_view name) {
  if (name.size() < 2 || std::toupper(static_cast<unsigned char>(name[0])) != 'Q') {
    throw IndexError("bad qubit name '" + std::string(name) + "'");
  }
  std::size_t number = 0;
  const auto* first = name.data() + 1;
  const auto* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, number);
  if (ec != std::errc{} || ptr != last || number < 1 || number > 12) {
    throw IndexError("bad qubit name '" + std::string(name) + "'");
  }
  return number - 1;
}

std::string edge_name(const Edge& edge) { return qubit_name(edge.a) + qubit_name(edge.b); }

bool DeviceModel::has_edge(std::size_t a, std::size_t b) const noexcept {
  const Edge probe{a, b};
  return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return e.same_qubits(probe); });
}

std::optional<ReadoutPair> DeviceModel::readout_pair_of(std::size_t qubit) const {
  for (const auto& rp : readout_pairs) {
    if (rp.qubits.touches(qubit)) return rp;
  }
  return std::nullopt;
}

std::vector<std::size_t> DeviceModel::neighbours(std::size_t qubit) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges) {
    if (e.touches(qubit)) out.push_back(e.other(qubit));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void DeviceModel::validate() const {
  const std::size_t n = n_qubits();
  if (n == 0) throw Error("device has no qubits");
  if (rabi_rates_hz.size() != n) throw Error("rabi_rates must list one rate per qubit");
  for (double f : rabi_rates_hz) {
    if (!(f > 0.0)) throw Error("rabi rates must be positive");
  }
  for (const auto& e : edges) {
    if (e.a >= n || e.b >= n || e.a == e.b) throw Error("invalid edge " + edge_name(e));
  }
  std::vector<int> seen(n, 0);
  for (const auto& rp : readout_pairs) {
    const auto& e = rp.qubits;
    if (e.a >= n || e.b >= n || e.a == e.b) throw Error("invalid readout pair " + edge_name(e));
    if (seen[e.a]++ || seen[e.b]++) throw Error("readout pairs overlap at " + edge_name(e));
  }
  if (std::any_of(seen.begin(), seen.end(), [](int s) { return s == 0; })) {
    throw Error("readout pairs must cover every qubit");
  }
  if (!(exchange_hz > 0.0) || tukey_alpha < 0.0 || tukey_alpha > 1.0) {
    throw Error("exchange_hz must be positive and tukey_alpha in [0, 1]");
  }
}

DeviceModel four_qubit_device() {
  DeviceModel d;
  d.qubit_frequencies_hz = {1.393e9, 2.192e9, 2.101e9, 2.412e9};
  d.rabi_rates_hz = {5e6, 5e6, 5e6, 5e6};
  d.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  d.readout_pairs = {{{0, 1}, "S1"}, {{2, 3}, "S2"}};
  d.external_field_t = 0.65;
  return d;
}

}  // namespace phaseflip
