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

#include "phaseflip/toffoli.hpp"

#include "phaseflip/errors.hpp"

namespace phaseflip {

NativeCircuit toffoli_like(std::size_t control1, std::size_t control2, std::size_t target, const DeviceModel& device) {
  if (control1 == control2 || control1 == target || control2 == target) {
    throw IndexError("toffoli qubits must be distinct");
  }
  for (std::size_t q : {control1, control2, target}) {
    if (q >= device.n_qubits()) throw IndexError("qubit " + qubit_name(q) + " is not on the device");
  }
  const Edge e1{control1, target};
  const Edge e2{control2, target};
  if (!device.has_edge(e1)) throw ConnectivityError("toffoli needs edge " + edge_name(e1));
  if (!device.has_edge(e2)) throw ConnectivityError("toffoli needs edge " + edge_name(e2));

  const auto y = make_rotation(device, target, kPi / 2.0, kPi / 2.0);
  const auto y_inv = make_rotation(device, target, kPi / 2.0, -kPi / 2.0);
  const auto cz1 = make_cz(device, e1);
  const auto cz2 = make_cz(device, e2);
  const auto cs_inv2 = make_cs_inverse(device, e2);

  NativeCircuit c(device.n_qubits());
  c.cphase(cz1).rotate(y_inv).cphase(cs_inv2).rotate(y);
  c.cphase(cz1).rotate(y_inv).cphase(cz2).cphase(cs_inv2).rotate(y);
  return c;
}

}  // namespace phaseflip
