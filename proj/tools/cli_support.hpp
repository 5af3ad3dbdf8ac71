// Copyright 2026 The WPA Authors.
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

#ifndef WPA_TOOLS_CLI_SUPPORT_HPP_
#define WPA_TOOLS_CLI_SUPPORT_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wpa/valuation.hpp"
#include "wpa/winprob.hpp"

namespace wpa::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitModel = 3,
  kExitIo = 4,
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

// Maps an in-flight exception to an exit code; call from a catch block.
int exit_code_for_current_exception(std::string* message);

// Adds one predicate to `filter`. Accepted forms:
//   pistol
//   maps=de_dust2+de_mirage
//   alive=T:1v2        (T has 1 alive, CT has 2)
//   winprob=0:0.05     (acting team's pre-event win probability)
// Throws CliError(kExitUsage) on malformed input.
void apply_filter_expression(const std::string& expr, ScenarioFilter& filter);

// "lo:hi" with 0 <= lo <= hi <= 1.
std::pair<double, double> parse_probability_range(const std::string& text);

// Files are kept as given; directories are searched recursively for *.json.
// Result is sorted and deduplicated.
std::vector<std::string> collect_json_files(const std::vector<std::string>& inputs);

// Overrides read from a --config JSON file. Unknown keys are rejected.
struct ConfigOverrides {
  ClassicConfig classic;
  GbtConfig gbt;
  LogisticConfig logistic;
};
ConfigOverrides load_config(const std::string& path);

// Fixed-format number for deterministic text output.
std::string fmt(double v);

// Keeps states with from <= match_date < until (ISO dates compare as strings).
std::vector<GameState> select_dates(std::vector<GameState> states, const std::string& from,
                                    const std::string& until);

std::string ratings_csv(const std::vector<PlayerValuation>& ratings);
std::string ratings_json(const std::vector<PlayerValuation>& ratings);

}  // namespace wpa::cli

#endif  // WPA_TOOLS_CLI_SUPPORT_HPP_
