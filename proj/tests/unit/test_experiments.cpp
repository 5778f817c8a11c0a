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
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "phaseflip/analysis.hpp"
#include "phaseflip/device.hpp"
#include "phaseflip/errors.hpp"
#include "phaseflip/executor.hpp"
#include "phaseflip/experiments.hpp"
#include "phaseflip/noise.hpp"

namespace phaseflip {
namespace {

constexpr double kUs = 1e-6;
constexpr std::size_t kQ1 = 0, kQ2 = 1, kQ3 = 2, kQ4 = 3;

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

ExperimentSpec spec_of(ExperimentKind kind, std::vector<double> sweep, std::uint64_t shots) {
  ExperimentSpec s;
  s.name = "t";
  s.kind = kind;
  s.sweep = std::move(sweep);
  s.shots = shots;
  s.master_seed = 99;
  return s;
}

Setup ideal() { return Setup::ideal(four_qubit_device()); }

Setup measured_noise() {
  phaseflip::Setup s = ideal();
  s.noise.qubits[kQ1] = calibrate_noise(0.28 * kUs, 2.72 * kUs);
  s.noise.qubits[kQ4] = calibrate_noise(0.23 * kUs, 3.26 * kUs);
  return s;
}

bool in_subset(const std::vector<std::size_t>& s, std::size_t q) {
  return std::find(s.begin(), s.end(), q) != s.end();
}

TEST(Registry, StableAndComplete) {
  const auto& reg = experiment_registry();
  ASSERT_EQ(reg.size(), 10U);
  EXPECT_EQ(reg.front().kind, ExperimentKind::rabi);
  for (const auto& k : reg) {
    EXPECT_EQ(parse_experiment_kind(to_string(k.kind)), k.kind);
    EXPECT_FALSE(k.summary.empty());
    EXPECT_EQ(&kind_info(k.kind), &k);
  }
  EXPECT_THROW(parse_experiment_kind("tomography"), Error);
}

TEST(RunExperiment, RejectsEmptySweepAndZeroShots) {
  EXPECT_THROW(run_experiment(spec_of(ExperimentKind::rabi, {}, 10), ideal()), Error);
  EXPECT_THROW(run_experiment(spec_of(ExperimentKind::rabi, {0.0}, 0), ideal()), Error);
}

TEST(Rabi, NoiselessFringe) {
  // 5 MHz drive: one full period in 200 ns, theta = 2 pi f t.
  auto spec = spec_of(ExperimentKind::rabi, grid(0.0, 0.2 * kUs, 9), 50);
  spec.options.estimator = Estimator::exact;
  spec.options.fit = false;
  for (std::size_t q = 0; q < 4; ++q) {
    spec.options.qubit = q;
    const auto r = run_experiment(spec, ideal());
    ASSERT_EQ(r.curves.size(), 1U);
    for (const auto& p : r.curves[0].points) EXPECT_NEAR(p.y, std::pow(std::sin(kPi * 5e6 * p.x), 2), 1e-12) << q;
    EXPECT_NEAR(r.curves[0].points.front().y, 0.0, 1e-12);
    EXPECT_NEAR(r.curves[0].points[4].y, 1.0, 1e-12);
  }
}

TEST(Rabi, CurvePointsCarryBinomialErrors) {
  auto spec = spec_of(ExperimentKind::rabi, grid(0.0, 0.1 * kUs, 5), 400);
  spec.options.fit = false;
  const auto r = run_experiment(spec, ideal());
  for (const auto& p : r.curves[0].points) {
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.y, 1.0);
    EXPECT_EQ(p.shots, 400U);
    EXPECT_DOUBLE_EQ(p.y_err, binomial_error(p.y, 400));
  }
}

TEST(Ramsey, FittedT2StarNearCalibration) {
  auto spec = spec_of(ExperimentKind::ramsey, grid(0.0, 0.6 * kUs, 16), 3000);
  spec.options.qubit = kQ1;
  const auto r = run_experiment(spec, measured_noise(), 4);
  ASSERT_FALSE(r.fit_error.has_value());
  EXPECT_NEAR(r.metric("t2_star_us"), 0.28, 0.15 * 0.28);
}

TEST(CPhaseCalibration, ReportsCalibratedPhases) {
  const std::vector<std::pair<double, double>> cases{{kPi, kPi}, {-kPi / 2.0, -kPi / 2.0}, {0.0, 0.0}, {kPi / 3.0, kPi / 3.0}};
  for (const auto& [phase, expected] : cases) {
    auto spec = spec_of(ExperimentKind::cphase_calibration, grid(0.0, 2.0 * kPi, 21), 10);
    spec.options.estimator = Estimator::exact;
    spec.options.control = kQ4;
    spec.options.target = kQ1;
    spec.options.cphase = phase;
    const auto r = run_experiment(spec, ideal());
    ASSERT_FALSE(r.fit_error.has_value()) << *r.fit_error;
    EXPECT_NEAR(wrap_phase(r.metric("phase_difference_rad") - expected), 0.0, 0.01) << phase;
    // Each curve is (1 + cos(psi - phi))/2 with phi = 0 (off) or the gate phase (on).
    const auto& off = r.curve("control_off");
    for (const auto& p : off.points) EXPECT_NEAR(p.y, 0.5 * (1.0 + std::cos(p.x)), 1e-9);
  }
  auto spec = spec_of(ExperimentKind::cphase_calibration, grid(0.0, 2.0 * kPi, 21), 10);
  spec.options.estimator = Estimator::exact;
  const auto cz = run_experiment(spec, ideal());
  EXPECT_NEAR(cz.metric("phase_difference_rad"), kPi, 1e-6);
}

TEST(CPhaseCalibration, FlatFringeIsAFitError) {
  phaseflip::Setup s = ideal();
  s.readout = ReadoutModel::uniform(s.device, 0.5, 0.5);
  auto spec = spec_of(ExperimentKind::cphase_calibration, grid(0.0, 2.0 * kPi, 11), 10);
  spec.options.estimator = Estimator::exact;
  const auto r = run_experiment(spec, s);
  EXPECT_TRUE(r.fit_error.has_value());
  EXPECT_EQ(r.curves.size(), 2U);
}

TEST(SwapDemo, IdealSwapMovesState) {
  auto spec = spec_of(ExperimentKind::swap_demo, {0.0, kPi / 2.0, kPi}, 20);
  spec.options.estimator = Estimator::exact;
  const auto r = run_experiment(spec, ideal());
  const auto& q2 = r.curve("q2");
  const auto& q3 = r.curve("q3");
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(q2.points[i].y, std::pow(std::sin(q2.points[i].x / 2.0), 2), 1e-12);
    EXPECT_NEAR(q3.points[i].y, 0.0, 1e-12);
  }
}

TEST(SwapDemo, RetainedResetLeavesResidual) {
  phaseflip::Setup s = ideal();
  s.reset.retain_probability = 0.1;
  constexpr std::uint64_t kShots = 6000;
  auto spec = spec_of(ExperimentKind::swap_demo, {kPi / 2.0, kPi}, kShots);
  const auto r = run_experiment(spec, s, 4);
  for (const auto& p : r.curve("q3").points) {
    const double expected = 0.1 * std::pow(std::sin(p.x / 2.0), 2);
    EXPECT_NEAR(p.y, expected, 4.0 * std::sqrt(expected * (1.0 - expected) / kShots));
  }
  for (const auto& p : r.curve("q2").points) {
    const double expected = 0.9 * std::pow(std::sin(p.x / 2.0), 2);
    EXPECT_NEAR(p.y, expected, 4.0 * std::sqrt(expected * (1.0 - expected) / kShots));
  }
}

TEST(ToffoliTest, TruthTableBothSweptControls) {
  for (std::size_t swept : {kQ1, kQ3}) {
    auto spec = spec_of(ExperimentKind::toffoli_test, grid(0.0, 2.0 * kPi, 13), 5);
    spec.options.estimator = Estimator::exact;
    spec.options.swept_control = swept;
    const auto r = run_experiment(spec, ideal());
    double worst = 0.0;
    for (const auto& p : r.curve("no_prep").points) worst = std::max(worst, std::abs(p.y));
    for (const auto& p : r.curve("prep").points) worst = std::max(worst, std::abs(p.y - std::pow(std::sin(p.x / 2.0), 2)));
    EXPECT_LT(worst, 1e-9) << swept;
  }
  auto bad = spec_of(ExperimentKind::toffoli_test, {0.0}, 1);
  bad.options.swept_control = kQ2;
  EXPECT_THROW(run_experiment(bad, ideal()), Error);
}

TEST(TwoQubitCode, NoiselessIsWaitIndependent) {
  for (bool echo : {false, true}) {
    for (PrepareState input : {PrepareState::minus_y, PrepareState::down, PrepareState::plus_x}) {
      auto spec = spec_of(ExperimentKind::two_qubit_code, grid(0.0, 3.0 * kUs, 7), 5);
      spec.options.estimator = Estimator::exact;
      spec.options.echo = echo;
      spec.options.input = input;
      spec.options.fit = false;
      const auto r = run_experiment(spec, ideal());
      for (const auto& p : r.curves[0].points) EXPECT_NEAR(p.y, 1.0, 1e-10);
    }
  }
}

TEST(TwoQubitCode, CircuitIsIdentityWithoutWait) {
  const DeviceModel dev = four_qubit_device();
  for (std::size_t anc : {kQ1, kQ3}) {
    NativeCircuit c = two_qubit_code_circuit(dev, PrepareState::plus_y, anc, 0.0, true);
    EXPECT_NO_THROW(check_connectivity(c, dev));
  }
  EXPECT_THROW(two_qubit_code_circuit(dev, PrepareState::down, kQ4, 0.0, false), IndexError);
  EXPECT_THROW(two_qubit_code_circuit(dev, PrepareState::down, kQ1, -1.0, false), TimeError);
}

TEST(TwoQubitCode, EchoOutlastsNoEcho) {
  auto no_echo = spec_of(ExperimentKind::two_qubit_code, grid(0.0, 0.8 * kUs, 14), 1500);
  auto echo = spec_of(ExperimentKind::two_qubit_code, grid(0.0, 8.0 * kUs, 14), 1500);
  echo.options.echo = true;
  const auto a = run_experiment(no_echo, measured_noise(), 4);
  const auto b = run_experiment(echo, measured_noise(), 4);
  ASSERT_FALSE(a.fit_error.has_value());
  ASSERT_FALSE(b.fit_error.has_value());
  EXPECT_GT(b.metric("tau_us"), 4.0 * a.metric("tau_us"));
}

class PhaseSweepPattern : public ::testing::TestWithParam<int> {};

// Z(pi) on a subset is a flip pattern; success iff at most one flip.
TEST_P(PhaseSweepPattern, FlipPatternsAtPi) {
  const int mask = GetParam();
  std::vector<std::size_t> subset;
  if (mask & 1) subset.push_back(kQ1);
  if (mask & 2) subset.push_back(kQ3);
  if (mask & 4) subset.push_back(kQ4);
  for (PrepareState input : {PrepareState::down, PrepareState::minus_y}) {
    auto spec = spec_of(ExperimentKind::three_qubit_phase_sweep, {0.0, kPi}, 3);
    spec.options.estimator = Estimator::exact;
    spec.options.input = input;
    spec.options.subsets = {subset};
    const auto r = run_experiment(spec, ideal());
    ASSERT_EQ(r.curves.size(), 1U);
    EXPECT_NEAR(r.curves[0].points[0].y, 1.0, 1e-10);
    EXPECT_NEAR(r.curves[0].points[1].y, subset.size() <= 1 ? 1.0 : 0.0, 1e-10) << r.curves[0].label;
  }
}

INSTANTIATE_TEST_SUITE_P(AllEight, PhaseSweepPattern, ::testing::Range(0, 8));

// Z(phi) = cos(phi/2) I - i sin(phi/2) Z in the code basis: branches with at
// most one Z are corrected, so success = sum over k <= 1 of C(n,k) c^{2(n-k)} s^{2k}.
TEST(PhaseSweep, ContinuousPhaseMatchesBranchCount) {
  auto spec = spec_of(ExperimentKind::three_qubit_phase_sweep, grid(0.0, 2.0 * kPi, 13), 3);
  spec.options.estimator = Estimator::exact;
  spec.options.subsets = {{kQ1}, {kQ1, kQ3}, {kQ4, kQ1, kQ3}};
  for (PrepareState input : {PrepareState::down, PrepareState::minus_y}) {
    spec.options.input = input;
    const auto r = run_experiment(spec, ideal());
    ASSERT_EQ(r.curves.size(), 3U);
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t n = spec.options.subsets[k].size();
      for (const auto& p : r.curves[k].points) {
        const double c2 = std::pow(std::cos(p.x / 2.0), 2);
        const double s2 = 1.0 - c2;
        const double expected = std::pow(c2, n) + static_cast<double>(n) * std::pow(c2, n - 1) * s2;
        EXPECT_NEAR(p.y, expected, 1e-9) << r.curves[k].label << " phi=" << p.x;
      }
    }
  }
}

TEST(PhaseSweep, SubsetValidation) {
  auto spec = spec_of(ExperimentKind::three_qubit_phase_sweep, {0.0}, 1);
  spec.options.subsets = {{kQ2}};
  EXPECT_THROW(run_experiment(spec, ideal()), Error);
}

TEST(ThreeQubitRandom, IdealGammaAtPointThree) {
  constexpr std::uint64_t kShots = 10000;
  auto spec = spec_of(ExperimentKind::three_qubit_random, {0.0, 0.3, 0.5, 1.0}, kShots);
  spec.options.fit = false;
  const auto r = run_experiment(spec, ideal(), 4);
  const auto& pts = r.curve("gamma").points;
  const double sigma = std::sqrt(0.784 * 0.216 / kShots);
  EXPECT_NEAR(pts[0].y, 1.0, 1e-12);
  EXPECT_NEAR(pts[1].y, 0.784, 4.0 * sigma);
  EXPECT_NEAR(pts[2].y, 0.5, 4.0 * std::sqrt(0.25 / kShots));
  EXPECT_NEAR(pts[3].y, 0.0, 1e-12);
}

TEST(ThreeQubitRandom, ShotLogMatchesCurve) {
  auto spec = spec_of(ExperimentKind::three_qubit_random, {0.2, 0.6}, 300);
  spec.options.fit = false;
  spec.options.record_shots = true;
  const auto r = run_experiment(spec, ideal());
  ASSERT_EQ(r.shot_log.size(), 600U);
  std::vector<double> success(2, 0.0);
  for (const auto& e : r.shot_log) {
    ASSERT_EQ(e.flips.size(), 3U);
    int flips = 0;
    for (bool f : e.flips) flips += f ? 1 : 0;
    // Ideal hardware: the report is even exactly when at most one flip fired.
    EXPECT_EQ(e.success, flips <= 1);
    EXPECT_EQ(e.success, e.reported == Parity::even);
    success[e.point] += e.success ? 1.0 : 0.0;
  }
  for (std::size_t i = 0; i < 2; ++i) EXPECT_DOUBLE_EQ(r.curves[0].points[i].y, success[i] / 300.0);
}

TEST(ThreeQubitRandom, SeedReproducibleAndJobIndependent) {
  phaseflip::Setup s = measured_noise();
  s.readout = ReadoutModel::uniform(s.device, 0.95, 0.85);
  s.reset.retain_probability = 0.2;
  auto spec = spec_of(ExperimentKind::three_qubit_random, grid(0.0, 1.0, 6), 400);
  spec.options.record_shots = true;
  const auto a = run_experiment(spec, s, 1);
  const auto b = run_experiment(spec, s, 1);
  const auto c = run_experiment(spec, s, 3);
  for (const auto* other : {&b, &c}) {
    ASSERT_EQ(a.curves[0].points.size(), other->curves[0].points.size());
    for (std::size_t i = 0; i < a.curves[0].points.size(); ++i) {
      EXPECT_EQ(a.curves[0].points[i].y, other->curves[0].points[i].y);
    }
    ASSERT_EQ(a.shot_log.size(), other->shot_log.size());
    for (std::size_t i = 0; i < a.shot_log.size(); ++i) {
      EXPECT_EQ(a.shot_log[i].flips, other->shot_log[i].flips);
      EXPECT_EQ(a.shot_log[i].reported, other->shot_log[i].reported);
    }
    EXPECT_EQ(a.metrics, other->metrics);
  }
  spec.master_seed += 1;
  const auto d = run_experiment(spec, s, 1);
  bool differs = false;
  for (std::size_t i = 0; i < a.curves[0].points.size(); ++i) differs |= a.curves[0].points[i].y != d.curves[0].points[i].y;
  EXPECT_TRUE(differs);
}

struct Knob {
  const char* name;
  void (*apply)(Setup&, double);
  std::vector<double> values;
};

// Gamma(0) must not increase as any single error parameter grows. Exact
// estimator plus common random numbers keep the comparison tight.
TEST(ThreeQubitRandom, MonotoneDegradation) {
  const std::vector<Knob> knobs{
      {"1-f_even", [](phaseflip::Setup& s, double v) { for (auto& p : s.readout.pairs) p.f_even = 1.0 - v; }, {0.0, 0.05, 0.15}},
      {"1-f_odd", [](phaseflip::Setup& s, double v) { for (auto& p : s.readout.pairs) p.f_odd = 1.0 - v; }, {0.0, 0.05, 0.15}},
      {"r", [](phaseflip::Setup& s, double v) { s.reset.retain_probability = v; }, {0.0, 0.2, 0.5}},
      {"sigma_qs", [](phaseflip::Setup& s, double v) { for (std::size_t q : {kQ1, kQ3, kQ4}) s.noise.qubits[q].sigma_qs = v; }, {0.0, 2e6, 6e6}},
      {"gamma_m", [](phaseflip::Setup& s, double v) { for (std::size_t q : {kQ1, kQ3, kQ4}) s.noise.qubits[q].gamma_m = v; }, {0.0, 2e5, 8e5}},
  };
  constexpr std::uint64_t kShots = 1500;
  for (const auto& k : knobs) {
    double previous = 2.0;
    for (double v : k.values) {
      phaseflip::Setup s = ideal();
      s.readout = ReadoutModel::uniform(s.device, 1.0, 1.0);
      k.apply(s, v);
      auto spec = spec_of(ExperimentKind::three_qubit_random, {0.0}, kShots);
      spec.options.estimator = Estimator::exact;
      spec.options.fit = false;
      const double y = run_experiment(spec, s, 4).curves[0].points[0].y;
      EXPECT_LE(y, previous + 2.0 / std::sqrt(static_cast<double>(kShots))) << k.name << "=" << v;
      previous = y;
    }
  }
}

TEST(ThreeQubitCode, CircuitRespectsDeviceAndResetsQ3) {
  const DeviceModel dev = four_qubit_device();
  ErrorInjection inj;
  inj.mode = ErrorInjection::Mode::bernoulli_flip;
  inj.probability = 0.2;
  inj.targets = {kQ1, kQ3, kQ4};
  const NativeCircuit c = three_qubit_code_circuit(dev, PrepareState::minus_y, inj, true, kPi / 2.0);
  EXPECT_NO_THROW(check_connectivity(c, dev));
  bool reset_seen = false;
  for (const auto& i : c.instructions()) {
    if (const auto* r = std::get_if<ResetViaSwap>(&i)) {
      reset_seen = true;
      EXPECT_EQ(r->reset_qubit, kQ3);
      EXPECT_EQ(r->helper, kQ2);
    }
  }
  EXPECT_TRUE(reset_seen);
  const auto& m = std::get<PairMeasure>(c.instructions().back());
  EXPECT_TRUE(m.pair.same_qubits(Edge{kQ3, kQ4}));
}

TEST(LogicalCircuitKind, SweptRotationGivesRabiCurve) {
  auto spec = spec_of(ExperimentKind::logical_circuit, grid(0.0, 2.0 * kPi, 7), 5);
  spec.options.estimator = Estimator::exact;
  LogicalStep rot;
  rot.instruction.op = LogicalOp::x;
  rot.instruction.qubits = {kQ2};
  rot.sweep_angle = true;
  LogicalStep meas;
  meas.instruction.op = LogicalOp::measure;
  meas.instruction.qubits = {kQ2};
  spec.options.circuit = {rot, meas};
  const auto r = run_experiment(spec, ideal());
  for (const auto& p : r.curves[0].points) EXPECT_NEAR(p.y, std::pow(std::sin(p.x / 2.0), 2), 1e-12);
  EXPECT_FALSE(r.circuit_listing.empty());
  spec.options.circuit = {rot};
  EXPECT_THROW(run_experiment(spec, ideal()), Error);
}

TEST(Projection, ReturnsQubitToDown) {
  const DeviceModel dev = four_qubit_device();
  for (double theta : {0.3, kPi / 2.0, 2.5}) {
    NativeCircuit prefix(4);
    prefix.rotate(make_rotation(dev, kQ4, 0.7, theta)).virtual_z(kQ4, 0.4);
    NativeCircuit full = prefix;
    full.rotate(projection_rotation(dev, prefix, kQ4));
    EXPECT_NEAR(qubit_up_probability(simulate_noiseless(full, dev), kQ4), 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace phaseflip
