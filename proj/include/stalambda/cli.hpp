// Copyright 2026 The stalambda Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace stalambda::cli {

inline constexpr const char* kToolName = "stalambda";
inline constexpr const char* kToolVersion = "1.0.0";
/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "STALAMBDA_OUTPUT_DIR";

/// Fully resolved run parameters. Times are in units of T and rates in
/// units of 1/T, so (t0, tc) = (0.15, 0.2) means 0.15 T and 0.2 T.
struct RunConfig {
  std::string command;

  std::string protocol = "sta-fit";  // sta | sta-fit | stirap
  int m = 1;
  double kappa = 0.0;  // 0: 1/(2m)
  double duration = 1.0;
  double omega0 = 45.0;
  double t0 = 0.15;
  double tc = 0.20;

  int steps = 10000;
  int stride = 10;
  /// Gaussian components per pulse and per unit winding.
  int components = 2;

  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma_phi1 = 0.0;
  double gamma_phi2 = 0.0;

  std::string quantity = "timing-error";
  double range = 0.1;
  int points = 0;  // 0: command default
  double omega_min = 1.0;
  double omega_max = 80.0;
  double max_ratio = 0.01;
  int grid = 21;

  int max_m = 7;
  int jobs = 1;

  std::string output_dir = ".";
  std::string format = "csv";  // csv | json
};

nlohmann::json to_json(const RunConfig& config);
/// Overlays the keys present in `doc` onto `base`. Accepts either a flat
/// config object or a manifest (whose "config" member is used).
RunConfig overlay(RunConfig base, const nlohmann::json& doc);

/// Throws ConfigError on the first invalid parameter.
void validate(const RunConfig& config);

const std::vector<std::string>& commands();

/// Executes a validated config and returns the list of files written
/// (manifest.json last). Throws stalambda::Error.
std::vector<std::string> run(const RunConfig& config, std::ostream& log);

/// Full command-line entry: parse, resolve, validate, run. Returns the
/// process exit status (0 ok, 2 ConfigError, 3 ComputationError).
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);

}  // namespace stalambda::cli
