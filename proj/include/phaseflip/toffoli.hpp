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

#include "phaseflip/device.hpp"
#include "phaseflip/native_circuit.hpp"

namespace phaseflip {

// Relative-phase Toffoli from CZ and CS^-1 pulses on the two control-target
// edges plus Y-axis rotations on the target:
//
//   CZ(c1,t) Y^-1(t) CS^-1(c2,t) Y(t) CZ(c1,t) Y^-1(t) CZ(c2,t) CS^-1(c2,t) Y(t)
//
// (time order). This is the group commutator B^-1 A B A of A = controlled-Z
// from c1 and B = controlled-(Y CS^-1 Y^-1) from c2; it acts as
// Toffoli * diag(1, 1, 1, -i) on the controls. No control-control edge is used.
// Throws ConnectivityError when either control-target edge is missing.
NativeCircuit toffoli_like(std::size_t control1, std::size_t control2, std::size_t target, const DeviceModel& device);

}  // namespace phaseflip
