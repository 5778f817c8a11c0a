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
#include <vector>

#include <gtest/gtest.h>

#include "phaseflip/device.hpp"
#include "phaseflip/errors.hpp"
#include "phaseflip/native_gates.hpp"
#include "phaseflip/state_vector.hpp"

namespace phaseflip {
namespace {

const Complex kI(0.0, 1.0);

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}

// exp(-i theta/2 n.sigma) via cos/sin expansion of a Pauli vector.
Eigen::Matrix2cd textbook_rotation(double theta, double axis) {
  const Eigen::Matrix2cd n = std::cos(axis) * pauli_x() + std::sin(axis) * pauli_y();
  return std::cos(theta / 2.0) * Eigen::Matrix2cd::Identity() - kI * std::sin(theta / 2.0) * n;
}

double simpson(const ExchangePulse& p, int intervals) {
  const double h = p.duration / intervals;
  double s = p.envelope(0.0) + p.envelope(p.duration);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * p.envelope(i * h);
  return p.peak_exchange_hz * s * h / 3.0;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(WrapPhase, MapsIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_NEAR(wrap_phase(-kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_phase(3.0 * kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_phase(2.5 * kPi), 0.5 * kPi, 1e-12);
  EXPECT_NEAR(wrap_phase(-0.5 * kPi), -0.5 * kPi, 1e-15);
  for (double a = -20.0; a < 20.0; a += 0.37) {
    const double w = wrap_phase(a);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_NEAR(std::remainder(a - w, 2.0 * kPi), 0.0, 1e-12);
  }
}

TEST(Rotation, MatchesPauliExpansion) {
  for (double theta : {0.0, 0.5 * kPi, kPi, -0.5 * kPi, 1.234}) {
    for (double axis : {0.0, 0.5 * kPi, 0.3, -2.0}) {
      const Unitary u = rotation_unitary(RotationGate{0, axis, theta, 0.0});
      EXPECT_LT(max_abs(u.matrix() - textbook_rotation(theta, axis)), 1e-14);
    }
  }
}

TEST(Rotation, RabiFringeIsSinSquared) {
  for (double theta = 0.0; theta <= 4.0 * kPi; theta += 0.1) {
    StateVector s(1);
    apply_unitary(s, rotation_unitary(RotationGate{0, 0.0, theta, 0.0}), {0});
    EXPECT_NEAR(qubit_up_probability(s, 0), std::pow(std::sin(theta / 2.0), 2), 1e-13);
  }
}

TEST(Rotation, ZConjugationShiftsAxis) {
  // Rz(phi) R_a(theta) Rz(-phi) = R_{a+phi}(theta): the identity behind virtual Z.
  for (double phi : {0.3, kPi, -1.1}) {
    const Unitary lhs = z_rotation_unitary(phi) * rotation_unitary(RotationGate{0, 0.4, 1.3, 0.0}) *
                        z_rotation_unitary(-phi);
    const Unitary rhs = rotation_unitary(RotationGate{0, 0.4 + phi, 1.3, 0.0});
    EXPECT_LT(max_abs(lhs.matrix() - rhs.matrix()), 1e-14);
  }
}

TEST(Rotation, ZRotationIsDiagonal) {
  const Unitary z = z_rotation_unitary(0.8);
  EXPECT_NEAR(std::abs(z(0, 0) - std::polar(1.0, -0.4)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z(1, 1) - std::polar(1.0, 0.4)), 0.0, 1e-15);
  EXPECT_EQ(z(0, 1), Complex(0.0, 0.0));
}

TEST(Rotation, DurationFollowsRabiRate) {
  const DeviceModel dev = four_qubit_device();
  EXPECT_NEAR(make_rotation(dev, 0, 0.0, kPi / 2.0).duration, 50e-9, 1e-15);
  EXPECT_NEAR(make_rotation(dev, 2, 0.0, -kPi).duration, 100e-9, 1e-15);
  EXPECT_THROW(make_rotation(dev, 4, 0.0, kPi), IndexError);
}

TEST(ExchangePulse, EnvelopeShape) {
  const ExchangePulse p{Edge{0, 3}, 10e6, 100e-9, 0.5, 0.0};
  EXPECT_EQ(p.envelope(-1e-9), 0.0);
  EXPECT_EQ(p.envelope(101e-9), 0.0);
  EXPECT_DOUBLE_EQ(p.envelope(50e-9), 1.0);
  EXPECT_NEAR(p.envelope(12.5e-9), 0.5, 1e-12);  // middle of the 25 ns rise
  EXPECT_NEAR(p.envelope(87.5e-9), 0.5, 1e-12);
}

TEST(ExchangePulse, ClosedFormIntegralMatchesQuadrature) {
  for (double alpha : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const ExchangePulse p{Edge{0, 3}, 7e6, 83e-9, alpha, 0.0};
    EXPECT_NEAR(simpson(p, 20000), p.integrated_exchange(), 1e-7 * p.integrated_exchange()) << alpha;
  }
}

TEST(CPhaseCalibration, SquarePulseDurations) {
  const DeviceModel dev = four_qubit_device();
  const auto cz = calibrate_cphase(Edge{3, 0}, kPi, dev, 10e6, 0.0);
  EXPECT_NEAR(cz.duration, 50e-9, 1e-15);
  const auto csi = calibrate_cphase(Edge{3, 0}, -kPi / 2.0, dev, 10e6, 0.0);
  EXPECT_NEAR(csi.duration, 75e-9, 1e-15);
}

TEST(CPhaseCalibration, HitsTargetForTukeyPulses) {
  const DeviceModel dev = four_qubit_device();
  for (double target : {kPi, -kPi / 2.0, 0.3, -2.9, kPi / 4.0}) {
    const auto pulse = calibrate_cphase(Edge{2, 3}, target, dev, 10e6, 0.5);
    const auto gate = conditional_phase_from_pulse(pulse);
    EXPECT_NEAR(wrap_phase(gate.phase - target), 0.0, 1e-9);
    // Shortest pulse: less than one full cycle of accumulated phase.
    EXPECT_LT(pulse.integrated_exchange(), 1.0);
  }
}

TEST(CPhaseCalibration, RejectsDegenerateRequests) {
  const DeviceModel dev = four_qubit_device();
  EXPECT_THROW(calibrate_cphase(Edge{0, 3}, 0.0, dev, 10e6, 0.5), CalibrationError);
  EXPECT_THROW(calibrate_cphase(Edge{0, 2}, kPi, dev, 10e6, 0.5), ConnectivityError);
  EXPECT_THROW(conditional_phase_from_pulse(ExchangePulse{Edge{0, 3}, 10e6, 0.0, 0.5, 0.0}), DegeneratePulseError);
  EXPECT_THROW(conditional_phase_from_pulse(ExchangePulse{Edge{0, 3}, 10e6, 50e-9, 0.5, 1e6}), CalibrationError);
}

TEST(CPhase, UnitaryIsDiagonalPhase) {
  const DeviceModel dev = four_qubit_device();
  const auto g = make_cphase(dev, Edge{0, 3}, 0.7);
  const Unitary u = g.unitary();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(u(i, i) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(3, 3) - std::polar(1.0, 0.7)), 0.0, 1e-15);
  EXPECT_GT(g.duration(), 0.0);
  EXPECT_EQ(make_cphase(dev, Edge{0, 3}, 0.0).duration(), 0.0);
}

TEST(CPhase, PhasesAdd) {
  const DeviceModel dev = four_qubit_device();
  for (double a : {0.4, -1.2, 2.0}) {
    for (double b : {0.9, -0.3, 2.5}) {
      const Unitary lhs = make_cphase(dev, Edge{0, 3}, a).unitary() * make_cphase(dev, Edge{0, 3}, b).unitary();
      const Unitary rhs = make_cphase(dev, Edge{0, 3}, a + b).unitary();
      EXPECT_LT(max_abs(lhs.matrix() - rhs.matrix()), 1e-12);
    }
  }
}

TEST(CPhase, CzSquaredIsIdentityAndCsInverseSquaredIsCz) {
  const DeviceModel dev = four_qubit_device();
  const Unitary cz = make_cz(dev, Edge{3, 0}).unitary();
  EXPECT_LT(max_abs((cz * cz).matrix() - Eigen::Matrix4cd::Identity()), 1e-15);
  const Unitary csi = make_cs_inverse(dev, Edge{3, 0}).unitary();
  EXPECT_LT(max_abs((csi * csi).matrix() - cz.matrix()), 1e-14);
  EXPECT_NEAR(std::abs(csi(3, 3) - Complex(0.0, -1.0)), 0.0, 1e-15);
}

TEST(ResonantSwap, OddSubspaceRotation) {
  for (double theta : {0.0, 0.7, kPi, 2.0 * kPi}) {
    const Unitary u = odd_subspace_rotation(theta);
    StateVector s(2);
    std::vector<Complex> du{0.0, 1.0, 0.0, 0.0};
    s.assign(du);
    apply_unitary(s, u, {1, 0});
    EXPECT_NEAR(std::norm(s.amplitude(0b10)), std::pow(std::sin(theta / 2.0), 2), 1e-14);
    EXPECT_NEAR(std::abs(u(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(u(3, 3) - 1.0), 0.0, 1e-15);
  }
}

TEST(ResonantSwap, FullSwapIsSwapUpToOddPhases) {
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
  p(0, 0) = 1.0;
  p(1, 1) = kI;
  p(2, 2) = kI;
  p(3, 3) = 1.0;
  EXPECT_LT(max_abs(odd_subspace_rotation(kPi).matrix() * p - swap), 1e-15);
}

TEST(ResonantSwap, CalibrationIsResonantWithZeemanDifference) {
  const DeviceModel dev = four_qubit_device();
  const auto g = calibrate_resonant_swap(dev, Edge{2, 1});
  EXPECT_NEAR(g.swap_angle, kPi, 1e-12);
  EXPECT_NEAR(resonant_swap_angle(g.pulse), kPi, 1e-12);
  EXPECT_NEAR(g.pulse.modulation_hz, 91e6, 1.0);
  EXPECT_NO_THROW(resonant_swap_unitary(g, dev));
  const auto half = calibrate_resonant_swap(dev, Edge{2, 1}, kPi / 2.0);
  EXPECT_NEAR(half.duration(), g.duration() / 2.0, 1e-15);
}

TEST(ResonantSwap, DetunedOrMissingEdgeRaises) {
  const DeviceModel dev = four_qubit_device();
  auto g = calibrate_resonant_swap(dev, Edge{2, 1});
  g.pulse.modulation_hz += 0.5 * dev.resonance_tolerance_hz;
  EXPECT_NO_THROW(resonant_swap_unitary(g, dev));
  g.pulse.modulation_hz += 2.0 * dev.resonance_tolerance_hz;
  EXPECT_THROW(resonant_swap_unitary(g, dev), ResonanceError);
  EXPECT_THROW(calibrate_resonant_swap(dev, Edge{1, 3}), ConnectivityError);
}

TEST(Device, FourQubitLayout) {
  const DeviceModel dev = four_qubit_device();
  EXPECT_NO_THROW(dev.validate());
  EXPECT_EQ(dev.n_qubits(), 4U);
  EXPECT_DOUBLE_EQ(dev.qubit_frequencies_hz[0], 1.393e9);
  EXPECT_DOUBLE_EQ(dev.qubit_frequencies_hz[3], 2.412e9);
  EXPECT_TRUE(dev.has_edge(0, 3));
  EXPECT_TRUE(dev.has_edge(3, 0));
  EXPECT_TRUE(dev.has_edge(1, 2));
  EXPECT_FALSE(dev.has_edge(0, 2));
  EXPECT_FALSE(dev.has_edge(1, 3));
  EXPECT_EQ(dev.neighbours(3), (std::vector<std::size_t>{0, 2}));
  ASSERT_TRUE(dev.readout_pair_of(2).has_value());
  EXPECT_TRUE(dev.readout_pair_of(2)->qubits.same_qubits(Edge{2, 3}));
  EXPECT_EQ(dev.readout_pair_of(0)->sensor, "S1");
}

TEST(Device, QubitNames) {
  EXPECT_EQ(parse_qubit("Q1"), 0U);
  EXPECT_EQ(parse_qubit("q4"), 3U);
  EXPECT_EQ(qubit_name(2), "Q3");
  EXPECT_EQ(edge_name(Edge{0, 3}), "Q1Q4");
  EXPECT_THROW(parse_qubit("Q0"), IndexError);
  EXPECT_THROW(parse_qubit("X1"), IndexError);
  EXPECT_THROW(parse_qubit("Q13"), IndexError);
}

TEST(Device, ValidateCatchesInconsistency) {
  DeviceModel dev = four_qubit_device();
  dev.rabi_rates_hz.pop_back();
  EXPECT_THROW(dev.validate(), Error);
  dev = four_qubit_device();
  dev.edges.push_back(Edge{0, 7});
  EXPECT_THROW(dev.validate(), Error);
  dev = four_qubit_device();
  dev.readout_pairs[1].qubits = Edge{0, 2};
  EXPECT_THROW(dev.validate(), Error);
}

}  // namespace
}  // namespace phaseflip
