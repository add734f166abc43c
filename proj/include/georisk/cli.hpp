// Copyright 2026 The Georisk Authors
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

#ifndef GEORISK_CLI_HPP_
#define GEORISK_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "georisk/optimize.hpp"

namespace georisk {

// Knobs of one pipeline run; recorded verbatim in the JSON reports.
struct RunConfig {
  std::string input;
  std::string geometry;
  Target target = Target::both;
  double grid_step = 0.05;
  double alpha0 = 1.0 / 3.0;
  double beta0 = 1.0 / 3.0;
  FitOptions fit;
  std::string out_dir;
  std::uint64_t seed = 7;

  // Throws InvalidHyperparameter for non-positive numeric settings.
  void validate() const;
  std::string to_json() const;
};

// Runs `georisk <subcommand> ...`. Exit codes: 0 success, 1 user or data
// error, 2 internal error. Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace georisk

#endif  // GEORISK_CLI_HPP_
