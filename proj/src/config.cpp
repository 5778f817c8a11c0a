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

#include "phaseflip/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "phaseflip/errors.hpp"

namespace phaseflip {

namespace {

constexpr double kMicro = 1e-6;
constexpr double kMega = 1e6;

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw ConfigError(child(path, key), "unknown key");
  }
}

void check_keys(const Json& obj, const std::string& path, const std::vector<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(child(path, key), "unknown key");
    }
  }
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path, "expected a finite number");
  return d;
}

double positive(const Json& v, const std::string& path) {
  const double d = number(v, path);
  if (!(d > 0.0)) throw ConfigError(path, "expected a positive number");
  return d;
}

bool boolean(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

std::uint64_t count(const Json& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) throw ConfigError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

const Json& array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

std::size_t qubit(const Json& v, const std::string& path, std::size_t n_qubits) {
  const std::string name = text(v, path);
  std::size_t q = 0;
  try {
    q = parse_qubit(name);
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
  if (q >= n_qubits) throw ConfigError(path, name + " is not on the device");
  return q;
}

std::vector<double> number_list(const Json& v, const std::string& path) {
  std::vector<double> out;
  const Json& a = array(v, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number(a[i], index(path, i)));
  return out;
}

Edge edge(const Json& v, const std::string& path, std::size_t n_qubits) {
  const Json& a = array(v, path);
  if (a.size() != 2) throw ConfigError(path, "expected two qubit names");
  const Edge e{qubit(a[0], index(path, 0), n_qubits), qubit(a[1], index(path, 1), n_qubits)};
  if (e.a == e.b) throw ConfigError(path, "edge joins a qubit to itself");
  return e;
}

template <typename F>
auto wrap_error(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

DeviceModel parse_device(const Json& d, const std::string& path) {
  check_keys(d, path,
             {"frequencies_mhz", "rabi_rates_mhz", "edges", "readout_pairs", "external_field_t", "exchange_mhz",
              "tukey_alpha", "resonance_tolerance_khz"});
  DeviceModel dev;
  for (double f : number_list(d.at("frequencies_mhz"), child(path, "frequencies_mhz"))) {
    if (!(f > 0.0)) throw ConfigError(child(path, "frequencies_mhz"), "frequencies must be positive");
    dev.qubit_frequencies_hz.push_back(f * kMega);
  }
  const std::size_t n = dev.qubit_frequencies_hz.size();
  if (n == 0 || n > kMaxQubits) throw ConfigError(child(path, "frequencies_mhz"), "need 1..12 qubits");
  for (double r : number_list(d.at("rabi_rates_mhz"), child(path, "rabi_rates_mhz"))) {
    if (!(r > 0.0)) throw ConfigError(child(path, "rabi_rates_mhz"), "Rabi rates must be positive");
    dev.rabi_rates_hz.push_back(r * kMega);
  }
  if (dev.rabi_rates_hz.size() != n) throw ConfigError(child(path, "rabi_rates_mhz"), "one rate per qubit required");
  const std::string ep = child(path, "edges");
  const Json& edges = array(d.at("edges"), ep);
  for (std::size_t i = 0; i < edges.size(); ++i) dev.edges.push_back(edge(edges[i], index(ep, i), n));
  const std::string rp = child(path, "readout_pairs");
  const Json& pairs = array(d.at("readout_pairs"), rp);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string pp = index(rp, i);
    check_keys(pairs[i], pp, {"qubits", "sensor"});
    if (!pairs[i].contains("qubits")) throw ConfigError(pp, "missing qubits");
    ReadoutPair r{edge(pairs[i].at("qubits"), child(pp, "qubits"), n), ""};
    if (pairs[i].contains("sensor")) r.sensor = text(pairs[i].at("sensor"), child(pp, "sensor"));
    dev.readout_pairs.push_back(r);
  }
  dev.external_field_t = number(d.at("external_field_t"), child(path, "external_field_t"));
  dev.exchange_hz = positive(d.at("exchange_mhz"), child(path, "exchange_mhz")) * kMega;
  dev.tukey_alpha = number(d.at("tukey_alpha"), child(path, "tukey_alpha"));
  if (dev.tukey_alpha < 0.0 || dev.tukey_alpha > 1.0) throw ConfigError(child(path, "tukey_alpha"), "must lie in [0, 1]");
  dev.resonance_tolerance_hz = positive(d.at("resonance_tolerance_khz"), child(path, "resonance_tolerance_khz")) * 1e3;
  wrap_error(path, [&] {
    dev.validate();
    return 0;
  });
  return dev;
}

NoiseParams parse_noise(const Json& j, const std::string& path, const DeviceModel& dev) {
  check_keys(j, path, {"enabled", "qubits", "residual_exchange", "dephase_during_gates"});
  const std::size_t n = dev.n_qubits();
  NoiseParams noise = NoiseParams::noiseless(n);
  const bool enabled = boolean(j.at("enabled"), child(path, "enabled"));
  noise.dephase_during_gates = boolean(j.at("dephase_during_gates"), child(path, "dephase_during_gates"));
  const std::string qp = child(path, "qubits");
  if (!j.at("qubits").is_object()) throw ConfigError(qp, "expected an object keyed by qubit name");
  for (const auto& [name, value] : j.at("qubits").items()) {
    const std::string p = child(qp, name);
    const std::size_t q = qubit(Json(name), p, n);
    if (value.is_null()) continue;
    check_keys(value, p, {"t2_star_us", "t2_hahn_us"});
    if (!value.contains("t2_star_us") || !value.contains("t2_hahn_us")) {
      throw ConfigError(p, "needs t2_star_us and t2_hahn_us");
    }
    const double t2s = positive(value.at("t2_star_us"), child(p, "t2_star_us")) * kMicro;
    const double t2h = positive(value.at("t2_hahn_us"), child(p, "t2_hahn_us")) * kMicro;
    const QubitNoise qn = wrap_error(p, [&] { return calibrate_noise(t2s, t2h); });
    if (enabled) noise.qubits[q] = qn;
  }
  const std::string rp = child(path, "residual_exchange");
  const Json& res = array(j.at("residual_exchange"), rp);
  for (std::size_t i = 0; i < res.size(); ++i) {
    const std::string p = index(rp, i);
    check_keys(res[i], p, {"edge", "rate_rad_per_us"});
    if (!res[i].contains("edge") || !res[i].contains("rate_rad_per_us")) {
      throw ConfigError(p, "needs edge and rate_rad_per_us");
    }
    const Edge e = edge(res[i].at("edge"), child(p, "edge"), n);
    if (!dev.has_edge(e)) throw ConfigError(child(p, "edge"), "not a device edge");
    const double rate = number(res[i].at("rate_rad_per_us"), child(p, "rate_rad_per_us")) * kMega;
    if (enabled) noise.residual_exchange.push_back({e, rate});
  }
  return noise;
}

ReadoutModel parse_readout(const Json& j, const std::string& path, const DeviceModel& dev) {
  check_keys(j, path, {"enabled", "pairs"});
  ReadoutModel model = ReadoutModel::ideal(dev);
  const bool enabled = boolean(j.at("enabled"), child(path, "enabled"));
  const std::string pp = child(path, "pairs");
  if (!j.at("pairs").is_object()) throw ConfigError(pp, "expected an object keyed by pair name (\"Q1Q2\")");
  for (const auto& [name, value] : j.at("pairs").items()) {
    const std::string p = child(pp, name);
    ReadoutPairModel* target = nullptr;
    for (auto& m : model.pairs) {
      const std::string ab = qubit_name(m.pair.a) + qubit_name(m.pair.b);
      const std::string ba = qubit_name(m.pair.b) + qubit_name(m.pair.a);
      if (name == ab || name == ba) target = &m;
    }
    if (!target) throw ConfigError(p, "not a readout pair of the device");
    check_keys(value, p, {"f_even", "f_odd"});
    double fe = value.contains("f_even") ? number(value.at("f_even"), child(p, "f_even")) : 1.0;
    double fo = value.contains("f_odd") ? number(value.at("f_odd"), child(p, "f_odd")) : 1.0;
    if (fe < 0.5 || fe > 1.0) throw ConfigError(child(p, "f_even"), "must lie in [0.5, 1]");
    if (fo < 0.5 || fo > 1.0) throw ConfigError(child(p, "f_odd"), "must lie in [0.5, 1]");
    if (enabled) {
      target->f_even = fe;
      target->f_odd = fo;
    }
  }
  return model;
}

ResetModel parse_reset(const Json& j, const std::string& path) {
  check_keys(j, path, {"reset_retain_probability"});
  const double r = number(j.at("reset_retain_probability"), child(path, "reset_retain_probability"));
  if (r < 0.0 || r > 1.0) throw ConfigError(child(path, "reset_retain_probability"), "must lie in [0, 1]");
  return ResetModel{r};
}

SweepUnit parse_unit(const Json& v, const std::string& path) {
  const std::string s = text(v, path);
  if (s == "us") return SweepUnit::microseconds;
  if (s == "pi") return SweepUnit::pi_radians;
  if (s == "none") return SweepUnit::none;
  throw ConfigError(path, "sweep_unit must be \"us\", \"pi\" or \"none\"");
}

double unit_scale(SweepUnit unit) {
  switch (unit) {
    case SweepUnit::microseconds:
      return kMicro;
    case SweepUnit::pi_radians:
      return kPi;
    default:
      return 1.0;
  }
}

std::vector<double> parse_sweep(const Json& j, const std::string& path) {
  check_keys(j, path, {"values", "start", "stop", "points"});
  std::vector<double> xs;
  if (j.contains("values")) {
    if (j.contains("start") || j.contains("stop") || j.contains("points")) {
      throw ConfigError(path, "use either values or start/stop/points");
    }
    xs = number_list(j.at("values"), child(path, "values"));
  } else {
    if (!j.contains("start") || !j.contains("stop") || !j.contains("points")) {
      throw ConfigError(path, "needs values or start, stop and points");
    }
    const double a = number(j.at("start"), child(path, "start"));
    const double b = number(j.at("stop"), child(path, "stop"));
    const std::uint64_t n = count(j.at("points"), child(path, "points"));
    if (n == 0) throw ConfigError(child(path, "points"), "must be at least 1");
    for (std::uint64_t i = 0; i < n; ++i) {
      xs.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  }
  if (xs.empty()) throw ConfigError(path, "sweep is empty");
  return xs;
}

LogicalStep parse_step(const Json& j, const std::string& path, std::size_t n) {
  check_keys(j, path, {"op", "qubits", "angle", "axis", "state", "duration_us", "phase", "probability"});
  if (!j.contains("op")) throw ConfigError(path, "missing op");
  LogicalStep step;
  auto& in = step.instruction;
  in.op = wrap_error(child(path, "op"), [&] { return parse_logical_op(text(j.at("op"), child(path, "op"))); });
  std::vector<std::size_t> qs;
  if (j.contains("qubits")) {
    const Json& a = array(j.at("qubits"), child(path, "qubits"));
    for (std::size_t i = 0; i < a.size(); ++i) qs.push_back(qubit(a[i], index(child(path, "qubits"), i), n));
  }
  auto swept = [&](const char* key, bool& flag, double scale) -> double {
    const Json& v = j.at(key);
    if (v.is_string() && v.get<std::string>() == "x") {
      flag = true;
      return 0.0;
    }
    return number(v, child(path, key)) * scale;
  };
  if (j.contains("angle")) in.angle = swept("angle", step.sweep_angle, kPi);
  if (j.contains("axis")) in.axis = number(j.at("axis"), child(path, "axis")) * kPi;
  if (j.contains("state")) {
    in.state = wrap_error(child(path, "state"), [&] { return parse_prepare_state(text(j.at("state"), child(path, "state"))); });
  }
  if (j.contains("duration_us")) in.duration = swept("duration_us", step.sweep_duration, kMicro);
  if (in.op == LogicalOp::error) {
    in.injection.targets = qs;
    if (j.contains("probability")) {
      in.injection.mode = ErrorInjection::Mode::bernoulli_flip;
      in.injection.probability = swept("probability", step.sweep_probability, 1.0);
    } else {
      in.injection.mode = ErrorInjection::Mode::deterministic_phase;
      if (j.contains("phase")) in.injection.phase = swept("phase", step.sweep_angle, kPi);
    }
  } else {
    in.qubits = qs;
    if (j.contains("phase") || j.contains("probability")) {
      throw ConfigError(path, "phase/probability only apply to error steps");
    }
  }
  return step;
}

ExperimentSpec parse_experiment(const Json& j, const std::string& path, std::size_t position, std::uint64_t seed,
                                std::size_t n) {
  check_keys(j, path, {"name", "kind", "sweep", "shots_per_point", "stream_id", "options"});
  for (const char* key : {"name", "kind", "sweep"}) {
    if (!j.contains(key)) throw ConfigError(child(path, key), "required");
  }
  ExperimentSpec spec;
  spec.name = text(j.at("name"), child(path, "name"));
  if (spec.name.empty() || !std::all_of(spec.name.begin(), spec.name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
      })) {
    throw ConfigError(child(path, "name"), "names may use letters, digits, '_' and '-'");
  }
  spec.kind = wrap_error(child(path, "kind"), [&] { return parse_experiment_kind(text(j.at("kind"), child(path, "kind"))); });
  spec.master_seed = seed;
  spec.stream_id = j.contains("stream_id") ? count(j.at("stream_id"), child(path, "stream_id")) : position;
  if (j.contains("shots_per_point")) {
    spec.shots = count(j.at("shots_per_point"), child(path, "shots_per_point"));
    if (spec.shots == 0) throw ConfigError(child(path, "shots_per_point"), "must be at least 1");
  }

  const KindInfo& info = kind_info(spec.kind);
  SweepUnit unit = info.sweep_unit;
  auto& o = spec.options;
  const std::string op = child(path, "options");
  const Json opts = j.contains("options") ? j.at("options") : Json::object();
  check_keys(opts, op, info.options);
  if (spec.kind == ExperimentKind::rabi) o.fit = false;
  for (const auto& [key, v] : opts.items()) {
    const std::string p = child(op, key);
    if (key == "qubit") {
      o.qubit = qubit(v, p, n);
    } else if (key == "control") {
      o.control = qubit(v, p, n);
    } else if (key == "target") {
      o.target = qubit(v, p, n);
    } else if (key == "phase") {
      o.cphase = number(v, p) * kPi;
    } else if (key == "ancilla") {
      o.ancilla = qubit(v, p, n);
    } else if (key == "swept_control") {
      o.swept_control = qubit(v, p, n);
    } else if (key == "echo") {
      o.echo = o.three_qubit_echo = boolean(v, p);
    } else if (key == "echo_axis") {
      o.echo_axis = number(v, p) * kPi;
    } else if (key == "input") {
      o.input = wrap_error(p, [&] { return parse_prepare_state(text(v, p)); });
    } else if (key == "subsets") {
      o.subsets.clear();
      const Json& a = array(v, p);
      for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<std::size_t> subset;
        const Json& s = array(a[i], index(p, i));
        for (std::size_t k = 0; k < s.size(); ++k) subset.push_back(qubit(s[k], index(index(p, i), k), n));
        o.subsets.push_back(subset);
      }
    } else if (key == "estimator") {
      const std::string s = text(v, p);
      if (s == "sampled") {
        o.estimator = Estimator::sampled;
      } else if (s == "exact") {
        o.estimator = Estimator::exact;
      } else {
        throw ConfigError(p, "estimator must be \"sampled\" or \"exact\"");
      }
    } else if (key == "fit") {
      o.fit = boolean(v, p);
    } else if (key == "weighting") {
      const std::string s = text(v, p);
      if (s == "binomial") {
        o.weighting = Weighting::binomial;
      } else if (s == "unweighted") {
        o.weighting = Weighting::unweighted;
      } else {
        throw ConfigError(p, "weighting must be \"binomial\" or \"unweighted\"");
      }
    } else if (key == "initial_guess") {
      o.initial_guess = number_list(v, p);
    } else if (key == "record_shots") {
      o.record_shots = boolean(v, p);
    } else if (key == "sweep_unit") {
      unit = parse_unit(v, p);
    } else if (key == "fit_model") {
      o.fit_model = wrap_error(p, [&] { return parse_decay_model(text(v, p)); });
    }
  }
  if (opts.contains("circuit")) {
    const std::string cp = child(op, "circuit");
    const Json& a = array(opts.at("circuit"), cp);
    for (std::size_t i = 0; i < a.size(); ++i) o.circuit.push_back(parse_step(a[i], index(cp, i), n));
    // Validate the structure once with the sweep placeholders.
    wrap_error(cp, [&] {
      LogicalCircuit lc(n);
      for (const auto& step : o.circuit) lc.push(step.instruction);
      return 0;
    });
  }

  const double scale = unit_scale(unit);
  for (double x : parse_sweep(j.at("sweep"), child(path, "sweep"))) spec.sweep.push_back(x * scale);
  if (unit == SweepUnit::probability) {
    for (double x : spec.sweep) {
      if (x < 0.0 || x > 1.0) throw ConfigError(child(path, "sweep"), "probabilities must lie in [0, 1]");
    }
  }
  if (unit == SweepUnit::microseconds) {
    for (double x : spec.sweep) {
      if (x < 0.0) throw ConfigError(child(path, "sweep"), "times must be non-negative");
    }
  }
  return spec;
}

std::vector<std::string> split_path(const std::string& dotted) {
  std::vector<std::string> parts;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  return parts;
}

}  // namespace

Json default_config() {
  return Json::parse(R"({
    "master_seed": 1234,
    "output_dir": "out",
    "device": {
      "frequencies_mhz": [1393, 2192, 2101, 2412],
      "rabi_rates_mhz": [5, 5, 5, 5],
      "edges": [["Q1", "Q2"], ["Q2", "Q3"], ["Q3", "Q4"], ["Q1", "Q4"]],
      "readout_pairs": [
        {"qubits": ["Q1", "Q2"], "sensor": "S1"},
        {"qubits": ["Q3", "Q4"], "sensor": "S2"}
      ],
      "external_field_t": 0.65,
      "exchange_mhz": 10,
      "tukey_alpha": 0.5,
      "resonance_tolerance_khz": 1
    },
    "noise": {
      "enabled": true,
      "qubits": {
        "Q1": {"t2_star_us": 0.28, "t2_hahn_us": 2.72},
        "Q4": {"t2_star_us": 0.23, "t2_hahn_us": 3.26}
      },
      "residual_exchange": [],
      "dephase_during_gates": false
    },
    "readout": {
      "enabled": true,
      "pairs": {
        "Q1Q2": {"f_even": 0.95, "f_odd": 0.85},
        "Q3Q4": {"f_even": 0.95, "f_odd": 0.85}
      }
    },
    "reset": {"reset_retain_probability": 0.1},
    "experiments": []
  })");
}

Json merge_config(Json base, const Json& overlay) {
  if (!base.is_object() || !overlay.is_object()) return overlay;
  for (const auto& [key, value] : overlay.items()) {
    if (base.contains(key) && base[key].is_object() && value.is_object()) {
      base[key] = merge_config(base[key], value);
    } else {
      base[key] = value;
    }
  }
  return base;
}

void apply_override(Json& document, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set " + assignment, "expected key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(raw);
  } catch (const nlohmann::json::exception&) {
    value = raw;
  }
  Json* node = &document;
  std::string path = "$";
  const auto parts = split_path(key);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& part = parts[i];
    if (part.empty()) throw ConfigError("--set " + assignment, "empty path component");
    const bool last = i + 1 == parts.size();
    if (node->is_array()) {
      std::size_t k = 0;
      try {
        std::size_t used = 0;
        k = std::stoul(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw ConfigError(path, "array index expected, got '" + part + "'");
      }
      if (k >= node->size()) throw ConfigError(index(path, k), "index out of range");
      path = index(path, k);
      node = &(*node)[k];
    } else {
      if (node->is_null()) *node = Json::object();
      if (!node->is_object()) throw ConfigError(path, "cannot descend into a scalar");
      path = child(path, part);
      node = &(*node)[part];
    }
    if (last) *node = value;
  }
}

RunConfig build_config(const Json& user, const std::vector<std::string>& overrides) {
  if (!user.is_object()) throw ConfigError("$", "config must be a JSON object");
  Json doc = merge_config(default_config(), user);
  for (const auto& o : overrides) apply_override(doc, o);
  check_keys(doc, "$", {"master_seed", "output_dir", "device", "noise", "readout", "reset", "experiments"});

  RunConfig cfg;
  cfg.master_seed = count(doc.at("master_seed"), "$.master_seed");
  cfg.output_dir = text(doc.at("output_dir"), "$.output_dir");
  cfg.setup.device = parse_device(doc.at("device"), "$.device");
  cfg.setup.noise = parse_noise(doc.at("noise"), "$.noise", cfg.setup.device);
  cfg.setup.readout = parse_readout(doc.at("readout"), "$.readout", cfg.setup.device);
  cfg.setup.reset = parse_reset(doc.at("reset"), "$.reset");

  const Json& exps = array(doc.at("experiments"), "$.experiments");
  std::set<std::string> names;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const std::string p = index("$.experiments", i);
    auto spec = parse_experiment(exps[i], p, i, cfg.master_seed, cfg.setup.device.n_qubits());
    if (!names.insert(spec.name).second) throw ConfigError(child(p, "name"), "duplicate experiment name");
    cfg.experiments.push_back(std::move(spec));
  }
  cfg.resolved = std::move(doc);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("$", "cannot read " + path.string());
  Json user;
  try {
    user = Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return build_config(user, overrides);
}

}  // namespace phaseflip
