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

#include <filesystem>
#include <string>

#include <json.hpp>

#include "phaseflip/analysis.hpp"

namespace phaseflip {

// printf "%.10g".
std::string format_number(double value);

// Header "x,y,y_err,shots", one row per point.
std::string format_curve_csv(const DecayCurve& curve);
void write_curve_csv(const std::filesystem::path& path, const DecayCurve& curve);
// Throws Error on a malformed file.
DecayCurve read_curve_csv(const std::filesystem::path& path);

// {model, params: {name: value}, stderr: {name: value}, rss, converged, n_points}
nlohmann::ordered_json fit_to_json(const FitResult& fit);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace phaseflip
