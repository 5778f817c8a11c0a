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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "phaseflip/executor.hpp"
#include "phaseflip/experiments.hpp"

namespace phaseflip {

using Json = nlohmann::ordered_json;

// Validated run description. Config units: microseconds, MHz, angles in
// units of pi; everything here is SI.
struct RunConfig {
  Json resolved;  // defaults + file + overrides, as validated
  Setup setup;
  std::vector<ExperimentSpec> experiments;
  std::string output_dir;
  std::uint64_t master_seed = 0;
};

// Default device, Q1/Q4 coherence times, readout 0.95/0.85, reset r = 0.1.
Json default_config();

// Recursive object merge; non-object values in overlay replace base.
Json merge_config(Json base, const Json& overlay);

// "a.b.0.c=value"; value parsed as JSON, otherwise taken as a string.
// Throws ConfigError for a malformed assignment.
void apply_override(Json& document, const std::string& assignment);

// Throws ConfigError naming the offending path ("$.device.edges[2]").
RunConfig build_config(const Json& user, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

}  // namespace phaseflip
