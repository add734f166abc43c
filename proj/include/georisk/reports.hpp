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

#ifndef GEORISK_REPORTS_HPP_
#define GEORISK_REPORTS_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "georisk/optimize.hpp"

namespace georisk {

// alpha,beta,gamma,objective,feasible; one line per grid cell, alpha-major.
// Cells with gamma < 0 have an empty objective.
void write_grid_csv(std::ostream& out, const GridResult& grid);

// Argmin, row/column minima and notes as a JSON document.
std::string grid_summary_json(const GridResult& grid,
                              const std::vector<std::string>& targets);

// FitResult as JSON. The trace keeps every `trace_every`-th iteration plus
// the final one.
std::string fit_result_json(const FitResult& fit, std::size_t trace_every = 1);

std::string ols_result_json(const OlsResult& ols);

}  // namespace georisk

#endif  // GEORISK_REPORTS_HPP_
