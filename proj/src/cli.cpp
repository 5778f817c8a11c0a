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

#include "phaseflip/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include "phaseflip/config.hpp"
#include "phaseflip/curve_io.hpp"
#include "phaseflip/errors.hpp"

#ifndef PHASEFLIP_VERSION_STRING
#define PHASEFLIP_VERSION_STRING "0.0.0"
#endif

namespace phaseflip {

namespace fs = std::filesystem;

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json versions() {
  Json v;
  v["phaseflip"] = PHASEFLIP_VERSION_STRING;
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
               std::to_string(EIGEN_MINOR_VERSION);
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                       "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  v["openssl"] = OPENSSL_VERSION_TEXT;
  v["compiler"] = __VERSION__;
  return v;
}

std::string shots_csv(const ExperimentResult& r) {
  std::string out = "point,x,flips,reported,success\n";
  for (const auto& e : r.shot_log) {
    std::string flips;
    for (bool f : e.flips) flips += f ? '1' : '0';
    out += std::to_string(e.point) + "," + format_number(e.x) + "," + (flips.empty() ? "-" : flips) + "," +
           to_string(e.reported) + "," + (e.success ? "1" : "0") + "\n";
  }
  return out;
}

// Writes an experiment's files; returns their names.
std::vector<std::string> write_outputs(const ExperimentResult& r, const ExperimentSpec& spec, const fs::path& dir) {
  std::vector<std::string> files;
  for (const auto& c : r.curves) {
    const std::string name =
        r.curves.size() == 1 || c.label.empty() ? r.name + "_curve.csv" : r.name + "_" + c.label + "_curve.csv";
    write_curve_csv(dir / name, c);
    files.push_back(name);
  }
  if (!r.fits.empty()) {
    Json j;
    if (r.fits.size() == 1) {
      j = fit_to_json(r.fits.front());
    } else {
      j["fits"] = Json::array();
      for (std::size_t i = 0; i < r.fits.size(); ++i) {
        Json f = fit_to_json(r.fits[i]);
        if (i < r.curves.size()) f["curve"] = r.curves[i].label;
        j["fits"].push_back(f);
      }
    }
    const std::string name = r.name + "_fit.json";
    write_text_file(dir / name, j.dump(2) + "\n");
    files.push_back(name);
  }
  if (spec.options.record_shots && !r.shot_log.empty()) {
    const std::string name = r.name + "_shots.csv";
    write_text_file(dir / name, shots_csv(r));
    files.push_back(name);
  }
  return files;
}

Json summary(const ExperimentResult& r, const ExperimentSpec& spec) {
  Json s;
  s["sweep_points"] = spec.sweep.size();
  s["shots_per_point"] = spec.shots;
  s["estimator"] = to_string(spec.options.estimator);
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  s["metrics"] = metrics;
  s["native_circuit"] = r.circuit_listing;
  return s;
}

void error_record(std::ostream& err, int code, const std::string& kind, const std::string& message,
                  const std::string& path = "", const std::string& experiment = "") {
  Json j;
  j["status"] = "error";
  j["code"] = code;
  j["kind"] = kind;
  if (!path.empty()) j["path"] = path;
  if (!experiment.empty()) j["experiment"] = experiment;
  j["message"] = message;
  err << j.dump() << "\n";
}

}  // namespace

std::string version_string() { return std::string("phaseflip ") + PHASEFLIP_VERSION_STRING; }

int run_command(const RunOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_config(options.config_path, options.overrides);
  } catch (const ConfigError& e) {
    error_record(err, kExitConfig, "config", e.what(), e.path());
    return kExitConfig;
  }
  if (options.jobs == 0) {
    error_record(err, kExitConfig, "config", "--jobs must be at least 1", "--jobs");
    return kExitConfig;
  }
  const fs::path dir = options.output_dir ? fs::path(*options.output_dir) : fs::path(cfg.output_dir);

  Json manifest;
  manifest["config_hash"] = sha256_hex(cfg.resolved.dump());
  manifest["seed"] = cfg.master_seed;
  manifest["versions"] = versions();
  manifest["started_at"] = utc_now();
  manifest["config_path"] = options.config_path;
  manifest["config"] = cfg.resolved;
  manifest["experiments"] = Json::array();
  auto write_manifest = [&] { write_text_file(dir / "manifest.json", manifest.dump(2) + "\n"); };

  std::string current;
  try {
    fs::create_directories(dir);
    for (const auto& spec : cfg.experiments) {
      current = spec.name;
      const auto t0 = std::chrono::steady_clock::now();
      const ExperimentResult r = run_experiment(spec, cfg.setup, options.jobs);
      const auto files = write_outputs(r, spec, dir);
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      Json entry;
      entry["name"] = spec.name;
      entry["kind"] = to_string(spec.kind);
      entry["outputs"] = files;
      entry["wall_ms"] = ms.count();
      entry["summary"] = summary(r, spec);
      manifest["experiments"].push_back(entry);
      out << spec.name << " (" << to_string(spec.kind) << "): " << r.curves.size() << " curve(s), " << ms.count()
          << " ms\n";
      for (const auto& [k, v] : r.metrics) out << "  " << k << " = " << format_number(v) << "\n";
      if (r.fit_error) throw FitError(*r.fit_error);
    }
    write_manifest();
  } catch (const std::exception& e) {
    const std::string kind = dynamic_cast<const FitError*>(&e) ? "fit" : "runtime";
    Json rec;
    rec["status"] = "error";
    rec["code"] = kExitRuntime;
    rec["kind"] = kind;
    rec["experiment"] = current;
    rec["message"] = e.what();
    try {
      fs::create_directories(dir);
      write_text_file(dir / "error.json", rec.dump(2) + "\n");
      write_manifest();
    } catch (const std::exception&) {
    }
    error_record(err, kExitRuntime, kind, e.what(), "", current);
    return kExitRuntime;
  }
  return kExitOk;
}

void list_experiments(std::ostream& out) {
  for (const auto& info : experiment_registry()) {
    out << std::left << std::setw(26) << to_string(info.kind) << info.summary << "\n";
    out << std::setw(26) << "" << "options:";
    for (const auto& o : info.options) out << " " << o;
    out << "\n";
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-flip code simulator for spin-qubit devices"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  RunOptions run_opts;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run the experiments described by a config file");
  run->add_option("config", run_opts.config_path, "JSON config file")->required();
  run->add_option("--set", run_opts.overrides, "Override a config value, e.g. --set master_seed=7");
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run->add_option("--jobs", run_opts.jobs, "Worker threads per sweep point")->check(CLI::PositiveNumber);
  auto* list = app.add_subcommand("list-experiments", "List experiment kinds and their options");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (list->parsed()) {
    list_experiments(out);
    return kExitOk;
  }
  if (run->parsed()) {
    if (!out_dir.empty()) run_opts.output_dir = out_dir;
    return run_command(run_opts, out, err);
  }
  return kExitConfig;
}

}  // namespace phaseflip
