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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace phaseflip {

// "phaseflip <semver>[-g<describe>]".
std::string version_string();

// Exit codes of the run command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct RunOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::string> output_dir;
  unsigned jobs = 1;
};

// Loads, validates and runs a config. Writes per-experiment CSV/JSON files and
// manifest.json into the output directory. Schema errors return 2 before any
// file is written; runtime or fit errors return 3 and keep what was written,
// plus error.json. Error records go to err as one JSON line.
int run_command(const RunOptions& options, std::ostream& out, std::ostream& err);

void list_experiments(std::ostream& out);

// Argument parsing front end shared by the executable and the tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phaseflip
