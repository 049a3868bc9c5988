// Copyright 2026 The fgrain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The fgrain command-line tool. Built only on the C API in fgrain/fgrain.h.

#ifndef FGRAIN_TOOLS_CLI_HPP_
#define FGRAIN_TOOLS_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fgrain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Fully resolved invocation. Echoed as the first line of every output file
// as {"config": {...}}.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> inputs;  // role -> path
  std::string metric;
  std::string variant = "noun";
  double w = 2.5;
  bool clamp_negative = true;
  std::optional<double> rate;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<std::size_t> batch_size;
  std::optional<std::size_t> k;
  std::optional<std::size_t> bins;
  std::optional<int> epochs;
  std::optional<std::size_t> hold_out_every;
  std::string dataset;
  std::string model_tag = "default";
  std::string embed_url;
  std::string output;
  std::size_t jobs = 0;  // 0 = all available cores

  bool operator==(const RunConfig&) const = default;
};

// {"config":{...}} without a trailing newline.
std::string config_header(const RunConfig& config);
// Inverse of config_header; accepts a "# " prefix. Throws std::runtime_error.
RunConfig parse_config_header(std::string_view line);

// Runs the tool; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fgrain::cli

#endif  // FGRAIN_TOOLS_CLI_HPP_
