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

#include "phaseflip/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "phaseflip/errors.hpp"

namespace phaseflip {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string format_curve_csv(const DecayCurve& curve) {
  std::string out = "x,y,y_err,shots\n";
  for (const auto& p : curve.points) {
    out += format_number(p.x) + "," + format_number(p.y) + "," + format_number(p.y_err) + "," +
           std::to_string(p.shots) + "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw Error("failed writing " + path.string());
}

void write_curve_csv(const std::filesystem::path& path, const DecayCurve& curve) {
  write_text_file(path, format_curve_csv(curve));
}

DecayCurve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path.string());
  std::string line;
  if (!std::getline(f, line) || line != "x,y,y_err,shots") throw Error(path.string() + ": bad header");
  DecayCurve curve;
  curve.label = path.stem().string();
  std::size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream in(line);
    CurvePoint p;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(in >> p.x >> c1 >> p.y >> c2 >> p.y_err >> c3 >> p.shots) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw Error(path.string() + ": malformed row " + std::to_string(row));
    }
    curve.points.push_back(p);
  }
  return curve;
}

nlohmann::ordered_json fit_to_json(const FitResult& fit) {
  nlohmann::ordered_json j;
  j["model"] = fit.model;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json errs = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    params[fit.names[i]] = fit.params[i];
    errs[fit.names[i]] = fit.std_errors[i];
  }
  j["params"] = params;
  j["stderr"] = errs;
  j["rss"] = fit.rss;
  j["converged"] = fit.converged;
  j["n_points"] = fit.n_points;
  return j;
}

}  // namespace phaseflip
