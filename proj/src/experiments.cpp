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

#include "phaseflip/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "phaseflip/errors.hpp"

namespace phaseflip {

namespace {

constexpr std::size_t kQ1 = 0;
constexpr std::size_t kQ2 = 1;
constexpr std::size_t kQ3 = 2;
constexpr std::size_t kQ4 = 3;

const std::vector<KindInfo> kRegistry = {
    {ExperimentKind::rabi, SweepUnit::microseconds, "drive duration sweep, P_up of one qubit", {"qubit", "estimator"}},
    {ExperimentKind::ramsey,
     SweepUnit::microseconds,
     "X - wait - X, gaussian fit for T2*",
     {"qubit", "estimator", "fit", "initial_guess"}},
    {ExperimentKind::hahn,
     SweepUnit::microseconds,
     "X - wait/2 - X^2 - wait/2 - X, exponential fit for T2Hahn",
     {"qubit", "estimator", "fit", "initial_guess"}},
    {ExperimentKind::cphase_calibration,
     SweepUnit::pi_radians,
     "analysis-phase sweep with control off/on, sinusoid fits, phase difference",
     {"control", "target", "phase", "estimator"}},
    {ExperimentKind::swap_demo, SweepUnit::pi_radians, "X(theta) on Q3, swap with Q2, read Q2 and Q3", {"estimator"}},
    {ExperimentKind::toffoli_test,
     SweepUnit::pi_radians,
     "X(theta) on one control, optional X^2 on the other, relative-phase Toffoli onto Q4",
     {"swept_control", "estimator"}},
    {ExperimentKind::two_qubit_code,
     SweepUnit::microseconds,
     "two-qubit phase flip code versus wait time, fitted tau",
     {"ancilla", "echo", "input", "estimator", "fit", "initial_guess"}},
    {ExperimentKind::three_qubit_phase_sweep,
     SweepUnit::pi_radians,
     "three-qubit code with deterministic Z(phi) on qubit subsets",
     {"subsets", "input", "echo", "echo_axis", "estimator"}},
    {ExperimentKind::three_qubit_random,
     SweepUnit::probability,
     "three-qubit code with random Z(pi) flips at probability p, gamma-model fit",
     {"input", "echo", "echo_axis", "estimator", "fit", "weighting", "initial_guess", "record_shots"}},
    {ExperimentKind::logical_circuit,
     SweepUnit::none,
     "user circuit; an angle, phase, probability or duration of \"x\" takes the sweep value",
     {"circuit", "sweep_unit", "fit_model", "estimator", "fit", "initial_guess"}},
};

std::string subset_label(const std::vector<std::size_t>& subset) {
  if (subset.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) s += "_";
    s += qubit_name(subset[i]);
  }
  return s;
}

void require_qubit(const DeviceModel& device, std::size_t q, const char* what) {
  if (q >= device.n_qubits()) throw IndexError(std::string(what) + " " + qubit_name(q) + " not on device");
}

void require_four_qubits(const DeviceModel& device) {
  if (device.n_qubits() < 4) throw Error("code experiments need qubits Q1..Q4");
}

DecayCurve to_microseconds(const DecayCurve& c) {
  DecayCurve out = c;
  for (auto& p : out.points) p.x *= 1e6;
  return out;
}

FitOptions unweighted() {
  FitOptions o;
  o.weighting = Weighting::unweighted;
  return o;
}

class Runner {
 public:
  Runner(const ExperimentSpec& spec, const Setup& setup, unsigned jobs) : spec_(spec), setup_(setup), jobs_(jobs) {
    result_.name = spec.name;
    result_.kind = spec.kind;
  }

  // success_even: y is the probability of an even report, else of an odd one.
  DecayCurve sweep(const std::string& label, const std::function<NativeCircuit(double)>& build, bool success_even,
                   bool noisy_drives = false, bool log = false) {
    DecayCurve curve;
    curve.label = label;
    const std::uint64_t curve_index = curve_counter_++;
    for (std::size_t i = 0; i < spec_.sweep.size(); ++i) {
      const double x = spec_.sweep[i];
      const NativeCircuit circuit = build(x);
      if (result_.circuit_listing.empty()) {
        for (const auto& instr : circuit.instructions()) result_.circuit_listing.push_back(to_string(instr));
      }
      ExecutionSettings s;
      s.shots = spec_.shots;
      s.master_seed = spec_.master_seed;
      s.stream_id = spec_.stream_id;
      s.curve = curve_index;
      s.point = i;
      s.estimator = spec_.options.estimator;
      s.jobs = jobs_;
      s.noisy_drives = noisy_drives;
      s.record_shots = log;
      const PointResult r = execute(circuit, setup_, s);
      const double odd = r.odd_fraction();
      const double y = clamp_probability(success_even ? 1.0 - odd : odd);
      curve.points.push_back({x, y, binomial_error(y, r.shots), r.shots});
      if (log) {
        for (const auto& rec : r.log) {
          result_.shot_log.push_back({i, x, rec.flips, rec.reported, rec.reported == Parity::even});
        }
      }
    }
    result_.curves.push_back(curve);
    return curve;
  }

  // Runs a fit, keeping the curves if it fails.
  std::optional<FitResult> try_fit(const std::function<FitResult()>& fit) {
    try {
      FitResult f = fit();
      result_.fits.push_back(f);
      return f;
    } catch (const FitError& e) {
      if (!result_.fit_error) result_.fit_error = e.what();
      return std::nullopt;
    }
  }

  ExperimentResult& result() { return result_; }

 private:
  const ExperimentSpec& spec_;
  const Setup& setup_;
  unsigned jobs_;
  std::uint64_t curve_counter_ = 0;
  ExperimentResult result_;
};

NativeCircuit finish_read(NativeCircuit native, const DeviceModel& device, std::size_t qubit) {
  return insert_readout_reset(native, device, {qubit});
}

void run_single_qubit(Runner& run, const ExperimentSpec& spec, const Setup& setup) {
  const auto& dev = setup.device;
  const std::size_t q = spec.options.qubit;
  require_qubit(dev, q, "qubit");
  switch (spec.kind) {
    case ExperimentKind::rabi: {
      const double rate = dev.rabi_rates_hz.at(q);
      run.sweep(
          "", [&](double t) { return lower(LogicalCircuit(dev.n_qubits()).x(q, 2.0 * kPi * rate * t).measure(q), dev); },
          false, true);
      break;
    }
    case ExperimentKind::ramsey: {
      const auto curve = run.sweep(
          "",
          [&](double t) {
            return lower(LogicalCircuit(dev.n_qubits()).x(q).idle({q}, t).x(q).measure(q), dev);
          },
          false);
      if (!spec.options.fit) break;
      if (auto f = run.try_fit([&] { return fit_decay(to_microseconds(curve), DecayModel::gaussian, spec.options.initial_guess, unweighted()); })) {
        run.result().metrics.push_back({"t2_star_us", f->param("tau")});
      }
      break;
    }
    case ExperimentKind::hahn: {
      const auto curve = run.sweep(
          "",
          [&](double t) {
            return lower(
                LogicalCircuit(dev.n_qubits()).x(q).idle({q}, t / 2.0).x(q, kPi).idle({q}, t / 2.0).x(q).measure(q),
                dev);
          },
          false);
      if (!spec.options.fit) break;
      if (auto f = run.try_fit([&] { return fit_decay(to_microseconds(curve), DecayModel::exponential, spec.options.initial_guess, unweighted()); })) {
        run.result().metrics.push_back({"t2_hahn_us", f->param("tau")});
      }
      break;
    }
    default:
      break;
  }
}

void run_cphase(Runner& run, const ExperimentSpec& spec, const Setup& setup) {
  const auto& dev = setup.device;
  const auto& o = spec.options;
  require_qubit(dev, o.control, "control");
  require_qubit(dev, o.target, "target");
  const Edge edge{o.control, o.target};
  const auto gate = make_cphase(dev, edge, wrap_phase(o.cphase));
  std::vector<DecayCurve> curves;
  for (bool on : {false, true}) {
    curves.push_back(run.sweep(
        on ? "control_on" : "control_off",
        [&](double psi) {
          LogicalCircuit lc(dev.n_qubits());
          if (on) lc.x(o.control, kPi);
          lc.y(o.target);
          NativeCircuit native = lower(lc, dev);
          native.cphase(gate);
          native.rotate(make_rotation(dev, o.target, psi + kPi / 2.0, kPi / 2.0));
          return finish_read(std::move(native), dev, o.target);
        },
        false));
  }
  std::vector<double> phases;
  for (const auto& c : curves) {
    auto f = run.try_fit([&] {
      FitResult fit = fit_decay(c, DecayModel::sinusoid, std::nullopt, unweighted());
      double mean_err = 0.0;
      for (const auto& p : c.points) mean_err += p.y_err;
      mean_err /= static_cast<double>(c.points.size());
      if (2.0 * std::abs(fit.param("A")) < 5.0 * mean_err) {
        throw FitError("fringe contrast of " + c.label + " is below 5 mean standard errors");
      }
      return fit;
    });
    if (!f) return;
    phases.push_back(f->param("phi0"));
  }
  double delta = wrap_phase(phases[0] - phases[1]);
  if (delta < -kPi + 1e-9) delta = kPi;  // roundoff across the branch cut
  run.result().metrics.push_back({"phase_difference_rad", delta});
  run.result().metrics.push_back({"phase_difference_pi", delta / kPi});
}

void run_swap_demo(Runner& run, const Setup& setup) {
  const auto& dev = setup.device;
  require_four_qubits(dev);
  for (std::size_t read : {kQ2, kQ3}) {
    run.sweep(
        read == kQ2 ? "q2" : "q3",
        [&](double theta) {
          NativeCircuit native = lower(LogicalCircuit(dev.n_qubits()).x(kQ3, theta), dev);
          native.reset(calibrate_resonant_swap(dev, Edge{kQ3, kQ2}), kQ3, kQ2);
          return finish_read(std::move(native), dev, read);
        },
        false);
  }
}

void run_toffoli_test(Runner& run, const ExperimentSpec& spec, const Setup& setup) {
  const auto& dev = setup.device;
  require_four_qubits(dev);
  const std::size_t swept = spec.options.swept_control;
  if (swept != kQ1 && swept != kQ3) throw Error("swept_control must be Q1 or Q3");
  const std::size_t other = swept == kQ1 ? kQ3 : kQ1;
  for (bool prep : {false, true}) {
    run.sweep(
        prep ? "prep" : "no_prep",
        [&](double theta) {
          LogicalCircuit lc(dev.n_qubits());
          if (prep) lc.x(other, kPi);
          lc.x(swept, theta).toffoli(kQ1, kQ3, kQ4).measure(kQ4);
          return lower(lc, dev);
        },
        false);
  }
}

void run_two_qubit(Runner& run, const ExperimentSpec& spec, const Setup& setup) {
  const auto& dev = setup.device;
  const auto& o = spec.options;
  require_four_qubits(dev);
  if (o.ancilla != kQ1 && o.ancilla != kQ3) throw Error("ancilla must be Q1 or Q3");
  const auto curve = run.sweep(
      o.echo ? "echo" : "no_echo",
      [&](double t) { return two_qubit_code_circuit(dev, o.input, o.ancilla, t, o.echo); }, true);
  if (!o.fit) return;
  const DecayModel model = o.echo ? DecayModel::exponential : DecayModel::gaussian;
  if (auto f = run.try_fit([&] { return fit_decay(to_microseconds(curve), model, o.initial_guess, unweighted()); })) {
    run.result().metrics.push_back({"tau_us", f->param("tau")});
  }
}

void run_phase_sweep(Runner& run, const ExperimentSpec& spec, const Setup& setup) {
  const auto& dev = setup.device;
  const auto& o = spec.options;
  require_four_qubits(dev);
  auto subsets = o.subsets;
  if (subsets.empty()) subsets = {{}, {kQ1}, {kQ1, kQ3}, {kQ4, kQ1, kQ3}};
  for (const auto& subset : subsets) {
    for (auto q : subset) {
      if (q != kQ1 && q != kQ3 && q != kQ4) throw Error("error subsets may only contain Q1, Q3 and Q4");
    }
    run.sweep(
        subset_label(subset),
        [&](double phi) {
          ErrorInjection inj;
          inj.mode = ErrorInjection::Mode::deterministic_phase;
          inj.phase = phi;
          inj.targets = subset;
          return three_qubit_code_circuit(dev, o.input, inj, o.three_qubit_echo, o.echo_axis);
        },
        true);
  }
}

void run_random(Runner& run, const ExperimentSpec& spec, const Setup& setup) {
  const auto& dev = setup.device;
  const auto& o = spec.options;
  require_four_qubits(dev);
  for (double p : spec.sweep) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("flip probabilities must lie in [0, 1]");
  }
  const auto curve = run.sweep(
      "gamma",
      [&](double p) {
        ErrorInjection inj;
        inj.mode = ErrorInjection::Mode::bernoulli_flip;
        inj.probability = p;
        inj.targets = {kQ4, kQ1, kQ3};
        return three_qubit_code_circuit(dev, o.input, inj, o.three_qubit_echo, o.echo_axis);
      },
      true, false, o.record_shots);
  if (!o.fit) return;
  FitOptions fo;
  fo.weighting = o.weighting;
  std::optional<GammaModelParams> guess;
  if (o.initial_guess) {
    if (o.initial_guess->size() != 3) throw Error("gamma initial_guess needs (a, b, epsilon)");
    guess = GammaModelParams{(*o.initial_guess)[0], (*o.initial_guess)[1], (*o.initial_guess)[2]};
  }
  if (auto f = run.try_fit([&] { return fit_gamma_model(curve, guess, fo); })) {
    for (std::size_t i = 0; i < f->names.size(); ++i) {
      run.result().metrics.push_back({f->names[i], f->params[i]});
      run.result().metrics.push_back({f->names[i] + "_stderr", f->std_errors[i]});
    }
  }
}

void run_logical(Runner& run, const ExperimentSpec& spec, const Setup& setup) {
  const auto& dev = setup.device;
  const auto& o = spec.options;
  if (o.circuit.empty()) throw Error("logical_circuit needs a non-empty circuit");
  bool measured = false;
  for (const auto& step : o.circuit) measured = measured || step.instruction.op == LogicalOp::measure;
  if (!measured) throw Error("logical_circuit needs at least one measure");
  const auto curve = run.sweep(
      "",
      [&](double x) {
        LogicalCircuit lc(dev.n_qubits());
        for (const auto& step : o.circuit) {
          LogicalInstruction in = step.instruction;
          if (step.sweep_angle) {
            in.angle = x;
            in.injection.phase = x;
          }
          if (step.sweep_probability) in.injection.probability = x;
          if (step.sweep_duration) in.duration = x;
          lc.push(std::move(in));
        }
        return lower(lc, dev);
      },
      false);
  if (o.fit && o.fit_model) {
    run.try_fit([&] { return fit_decay(curve, *o.fit_model, o.initial_guess, unweighted()); });
  }
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::rabi:
      return "rabi";
    case ExperimentKind::ramsey:
      return "ramsey";
    case ExperimentKind::hahn:
      return "hahn";
    case ExperimentKind::cphase_calibration:
      return "cphase_calibration";
    case ExperimentKind::swap_demo:
      return "swap_demo";
    case ExperimentKind::toffoli_test:
      return "toffoli_test";
    case ExperimentKind::two_qubit_code:
      return "two_qubit_code";
    case ExperimentKind::three_qubit_phase_sweep:
      return "three_qubit_phase_sweep";
    case ExperimentKind::three_qubit_random:
      return "three_qubit_random";
    case ExperimentKind::logical_circuit:
      return "logical_circuit";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const auto& info : kRegistry) {
    if (name == to_string(info.kind)) return info.kind;
  }
  throw Error("unknown experiment kind '" + name + "'");
}

const std::vector<KindInfo>& experiment_registry() { return kRegistry; }

const KindInfo& kind_info(ExperimentKind kind) {
  for (const auto& info : kRegistry) {
    if (info.kind == kind) return info;
  }
  throw Error("unregistered experiment kind");
}

const DecayCurve& ExperimentResult::curve(const std::string& label) const {
  for (const auto& c : curves) {
    if (c.label == label) return c;
  }
  throw Error("experiment " + name + " has no curve '" + label + "'");
}

double ExperimentResult::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  throw Error("experiment " + name + " has no metric '" + key + "'");
}

RotationGate projection_rotation(const DeviceModel& device, const NativeCircuit& prefix, std::size_t qubit) {
  const StateVector state = simulate_noiseless(prefix, device);
  const BlochAngles b = bloch_angles(state, qubit);
  if (b.purity < 1.0 - 1e-6) throw CompositionError("projection target " + qubit_name(qubit) + " is entangled");
  return make_rotation(device, qubit, b.phi + kPi / 2.0, -b.theta);
}

NativeCircuit three_qubit_code_circuit(const DeviceModel& device, PrepareState input, const ErrorInjection& injection,
                                       bool echo, double echo_axis) {
  require_four_qubits(device);
  auto build = [&](bool with_error) {
    LogicalCircuit lc(device.n_qubits());
    lc.prepare(kQ4, input);
    lc.h(kQ1).h(kQ3).cz(kQ4, kQ1).cz(kQ4, kQ3).h(kQ4);
    if (echo) {
      for (auto q : {kQ4, kQ1, kQ3}) lc.rotation(q, echo_axis, kPi);
    }
    if (with_error) lc.error(injection);
    lc.h(kQ4).cz(kQ4, kQ1).cz(kQ4, kQ3).h(kQ1).h(kQ3);
    lc.toffoli(kQ1, kQ3, kQ4);
    return lower(lc, device);
  };
  const RotationGate projection = projection_rotation(device, build(false), kQ4);
  NativeCircuit native = build(true);
  if (std::abs(projection.angle) > 1e-12) native.rotate(projection);
  return insert_readout_reset(native, device, {kQ4});
}

NativeCircuit two_qubit_code_circuit(const DeviceModel& device, PrepareState input, std::size_t ancilla, double wait,
                                     bool echo) {
  require_four_qubits(device);
  if (ancilla == kQ4 || ancilla >= device.n_qubits()) throw IndexError("invalid ancilla");
  if (wait < 0.0) throw TimeError("wait must be non-negative");
  LogicalCircuit lc(device.n_qubits());
  lc.prepare(kQ4, input);
  lc.h(ancilla).cz(kQ4, ancilla).h(kQ4);
  lc.idle({kQ4, ancilla}, wait / 2.0);
  if (echo) lc.y(ancilla, kPi);
  lc.idle({kQ4, ancilla}, wait / 2.0);
  lc.h(kQ4).cz(kQ4, ancilla).h(ancilla).cnot(ancilla, kQ4);
  NativeCircuit native = lower(lc, device);
  const RotationGate projection = projection_rotation(device, native, kQ4);
  if (std::abs(projection.angle) > 1e-12) native.rotate(projection);
  return insert_readout_reset(native, device, {kQ4});
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Setup& setup, unsigned jobs) {
  if (spec.sweep.empty()) throw Error("experiment " + spec.name + " has an empty sweep");
  if (spec.shots == 0) throw Error("experiment " + spec.name + " needs at least one shot");
  Runner run(spec, setup, jobs);
  switch (spec.kind) {
    case ExperimentKind::rabi:
    case ExperimentKind::ramsey:
    case ExperimentKind::hahn:
      run_single_qubit(run, spec, setup);
      break;
    case ExperimentKind::cphase_calibration:
      run_cphase(run, spec, setup);
      break;
    case ExperimentKind::swap_demo:
      run_swap_demo(run, setup);
      break;
    case ExperimentKind::toffoli_test:
      run_toffoli_test(run, spec, setup);
      break;
    case ExperimentKind::two_qubit_code:
      run_two_qubit(run, spec, setup);
      break;
    case ExperimentKind::three_qubit_phase_sweep:
      run_phase_sweep(run, spec, setup);
      break;
    case ExperimentKind::three_qubit_random:
      run_random(run, spec, setup);
      break;
    case ExperimentKind::logical_circuit:
      run_logical(run, spec, setup);
      break;
  }
  return std::move(run.result());
}

}  // namespace phaseflip
