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

#ifndef GEORISK_WEIGHTS_HPP_
#define GEORISK_WEIGHTS_HPP_

#include <string>

namespace georisk {

// Point on the 2-simplex: mixing weights for the vaccination, density and
// income scores.
struct WeightVector {
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;

  // gamma is derived as 1 - alpha - beta.
  static WeightVector from_alpha_beta(double alpha, double beta) {
    return {alpha, beta, 1.0 - alpha - beta};
  }

  bool on_simplex(double tol = 1e-12) const;
  // Strictly inside: every weight > 0.
  bool in_open_simplex() const;

  // Throws InvalidWeights unless on_simplex().
  void validate() const;

  std::string to_string(int decimals = 2) const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

}  // namespace georisk

#endif  // GEORISK_WEIGHTS_HPP_
