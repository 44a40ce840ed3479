// Copyright 2026 The sfinfo Authors
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
#include <string>
#include <vector>

#include "sfinfo/harness.hpp"

namespace sfinfo {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 1;
inline constexpr int kExitRuntimeError = 2;

// Resolved settings of `simulate`: the JSON config file merged with flags.
struct CliConfig {
  std::vector<int> sims = {1};
  SimulationConfig simulation;
  std::string out_dir = "results";
  int jobs = 1;

  friend bool operator==(const CliConfig&, const CliConfig&) = default;
};

// Parses "1".."4" or "all". Throws ConfigError naming the valid range.
std::vector<int> parse_sim_selector(const std::string& text);

// Applies a JSON config document on top of `base`. Unknown keys and
// ill-typed values throw ConfigError.
CliConfig apply_config_json(const std::string& json_text, CliConfig base = {});

// Entry point; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace sfinfo
