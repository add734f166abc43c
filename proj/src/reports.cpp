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

#include "georisk/reports.hpp"

#include <cmath>
#include <ostream>

#include "georisk/csv.hpp"
#include "json.hpp"

namespace georisk {

using nlohmann::ordered_json;

namespace {

ordered_json weights_json(const WeightVector& w) {
  return {{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}};
}

ordered_json number_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

}  // namespace

void write_grid_csv(std::ostream& out, const GridResult& grid) {
  out << "alpha,beta,gamma,objective,feasible\n";
  const std::size_t n = grid.divisions;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      const double gamma = (static_cast<double>(n) - static_cast<double>(i) -
                            static_cast<double>(j)) /
                           static_cast<double>(n);
      const double v = grid.value(i, j);
      out << csv::format_fixed(grid.alpha_at(i), 6) << ','
          << csv::format_fixed(grid.beta_at(j), 6) << ','
          << csv::format_fixed(gamma, 6) << ','
          << (std::isnan(v) ? std::string() : csv::format_fixed(v, 9)) << ','
          << (grid.is_feasible(i, j) ? 1 : 0) << '\n';
    }
  }
}

std::string grid_summary_json(const GridResult& grid,
                              const std::vector<std::string>& targets) {
  ordered_json j;
  j["step"] = grid.step;
  j["loss"] = grid.loss == Loss::l1 ? "mae" : "mse";
  j["targets"] = targets;
  j["argmin"] = weights_json(grid.argmin);
  j["objective"] = grid.min_objective;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < grid.row_minima.size(); ++i) {
    if (!grid.row_minima[i]) continue;
    const std::size_t col = *grid.row_minima[i];
    rows.push_back({{"alpha", grid.alpha_at(i)},
                    {"beta", grid.beta_at(col)},
                    {"objective", grid.value(i, col)}});
  }
  ordered_json cols = ordered_json::array();
  for (std::size_t jj = 0; jj < grid.col_minima.size(); ++jj) {
    if (!grid.col_minima[jj]) continue;
    const std::size_t row = *grid.col_minima[jj];
    cols.push_back({{"alpha", grid.alpha_at(row)},
                    {"beta", grid.beta_at(jj)},
                    {"objective", grid.value(row, jj)}});
  }
  j["row_minima"] = std::move(rows);
  j["col_minima"] = std::move(cols);
  ordered_json notes = ordered_json::array();
  if (grid.argmin_on_feasibility_edge()) {
    notes.push_back(
        "argmin lies on the gamma = step edge of the feasible grid (gamma > 0 is "
        "enforced); the unconstrained optimum may have gamma = 0");
  }
  j["notes"] = std::move(notes);
  return j.dump(2);
}

std::string fit_result_json(const FitResult& fit, std::size_t trace_every) {
  if (trace_every == 0) trace_every = 1;
  ordered_json j;
  j["weights"] = weights_json(fit.weights);
  j["stop_reason"] = stop_reason_name(fit.stop_reason);
  j["iterations"] = fit.iterations;
  j["train_mae"] = fit.train_mae;
  j["test_mae"] = number_or_null(fit.test_mae);
  ordered_json trace = ordered_json::array();
  for (std::size_t k = 0; k < fit.trace.size(); ++k) {
    const bool last = k + 1 == fit.trace.size();
    const TracePoint& p = fit.trace[k];
    if (p.iteration % trace_every != 0 && !last) continue;
    trace.push_back({p.iteration, p.alpha, p.beta, p.train_mae});
  }
  j["trace_columns"] = {"iteration", "alpha", "beta", "train_mae"};
  j["trace"] = std::move(trace);
  return j.dump(2);
}

std::string ols_result_json(const OlsResult& ols) {
  ordered_json j;
  j["intercept"] = ols.intercept;
  j["coef_vacc"] = ols.coef_vacc;
  j["coef_dens"] = ols.coef_dens;
  j["coef_income"] = ols.coef_income;
  j["coefficient_sum"] = ols.coef_vacc + ols.coef_dens + ols.coef_income;
  j["train_mae"] = ols.train_mae;
  j["test_mae"] = number_or_null(ols.test_mae);
  return j.dump(2);
}

}  // namespace georisk
