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

#include <cmath>
#include <complex>
#include <cstddef>
#include <variant>

#include <gtest/gtest.h>

#include "phaseflip/circuit_unitary.hpp"
#include "phaseflip/device.hpp"
#include "phaseflip/errors.hpp"
#include "phaseflip/executor.hpp"
#include "phaseflip/native_gates.hpp"
#include "phaseflip/toffoli.hpp"

namespace phaseflip {
namespace {

std::size_t bit(std::size_t index, std::size_t q) { return (index >> q) & 1U; }

struct Triple {
  std::size_t c1, c2, t;
};

class ToffoliContract : public ::testing::TestWithParam<Triple> {};

// Brute force over the basis: the target flips exactly when both controls are
// up, nothing else changes, and the only phases are a diagonal on the controls
// equal to (1, 1, 1, -i).
TEST_P(ToffoliContract, ActsAsRelativePhaseToffoli) {
  const auto [c1, c2, t] = GetParam();
  const DeviceModel dev = four_qubit_device();
  const NativeCircuit circuit = toffoli_like(c1, c2, t, dev);
  const Unitary u = full_unitary_of_circuit(circuit, 4);
  for (std::size_t in = 0; in < 16; ++in) {
    const bool both = bit(in, c1) && bit(in, c2);
    const std::size_t out = both ? in ^ (std::size_t{1} << t) : in;
    const Complex expected_phase = both ? Complex(0.0, -1.0) : Complex(1.0, 0.0);
    for (std::size_t row = 0; row < 16; ++row) {
      const Complex amp = u(row, in);
      if (row == out) {
        EXPECT_NEAR(std::abs(amp - expected_phase), 0.0, 1e-12) << "in=" << in;
      } else {
        EXPECT_NEAR(std::abs(amp), 0.0, 1e-12) << "in=" << in << " row=" << row;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Placements, ToffoliContract,
                         ::testing::Values(Triple{0, 2, 3}, Triple{2, 0, 3}, Triple{0, 2, 1}, Triple{1, 3, 0},
                                           Triple{1, 3, 2}));

TEST(ToffoliLike, UsesOnlyControlTargetEdgesAndTargetRotations) {
  const DeviceModel dev = four_qubit_device();
  const NativeCircuit circuit = toffoli_like(0, 2, 3, dev);
  int cz = 0;
  int cs_inverse = 0;
  for (const auto& instr : circuit.instructions()) {
    if (const auto* r = std::get_if<RotationGate>(&instr)) {
      EXPECT_EQ(r->qubit, 3U);
      EXPECT_NEAR(std::abs(r->angle), kPi / 2.0, 1e-15);
    } else if (const auto* g = std::get_if<ConditionalPhaseGate>(&instr)) {
      EXPECT_TRUE(g->edge.touches(3));
      EXPECT_FALSE(g->edge.same_qubits(Edge{0, 2}));
      if (std::abs(g->phase - kPi) < 1e-12) ++cz;
      if (std::abs(g->phase + kPi / 2.0) < 1e-12) ++cs_inverse;
    } else {
      ADD_FAILURE() << "unexpected instruction " << to_string(instr);
    }
  }
  EXPECT_EQ(cz, 3);
  EXPECT_EQ(cs_inverse, 2);
  EXPECT_NO_THROW(check_connectivity(circuit, dev));
}

TEST(ToffoliLike, RejectsMissingEdgesAndRepeatedQubits) {
  const DeviceModel dev = four_qubit_device();
  EXPECT_THROW(toffoli_like(0, 1, 2, dev), ConnectivityError);  // Q1-Q3 is not an edge
  EXPECT_THROW(toffoli_like(0, 0, 3, dev), IndexError);
  EXPECT_THROW(toffoli_like(0, 2, 2, dev), IndexError);
  EXPECT_THROW(toffoli_like(0, 2, 7, dev), IndexError);
}

// X(theta) on the first control, optional X^2 on the second, Toffoli-like, then
// the target's up probability: sin^2(theta/2) with the second control up, 0 without.
TEST(ToffoliLike, TruthTableOverThetaGrid) {
  const DeviceModel dev = four_qubit_device();
  for (std::size_t swept : {std::size_t{0}, std::size_t{2}}) {
    const std::size_t other = swept == 0 ? 2 : 0;
    for (bool prep : {false, true}) {
      for (int k = 0; k <= 16; ++k) {
        const double theta = k * kPi / 8.0;
        NativeCircuit c(4);
        c.rotate(make_rotation(dev, swept, 0.0, theta));
        if (prep) c.rotate(make_rotation(dev, other, 0.0, kPi));
        c.append(toffoli_like(0, 2, 3, dev));
        const StateVector s = simulate_noiseless(c, dev);
        const double expected = prep ? std::pow(std::sin(theta / 2.0), 2) : 0.0;
        EXPECT_NEAR(qubit_up_probability(s, 3), expected, 1e-12) << "theta=" << theta << " prep=" << prep;
        // Controls keep their populations.
        EXPECT_NEAR(qubit_up_probability(s, swept), std::pow(std::sin(theta / 2.0), 2), 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace phaseflip
