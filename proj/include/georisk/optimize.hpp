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

#ifndef GEORISK_OPTIMIZE_HPP_
#define GEORISK_OPTIMIZE_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "georisk/ingest.hpp"
#include "georisk/scoring.hpp"
#include "georisk/weights.hpp"

namespace georisk {

// One region in score space: the three single-variable scores and the
// outcome score being predicted.
struct ScoreRow {
  double vacc = 1.0;    // gs1
  double dens = 1.0;    // gs2
  double ses = 1.0;     // gs3
  double target = 1.0;  // outcome score

  double predict(const WeightVector& w) const {
    return w.alpha * vacc + w.beta * dens + w.gamma * ses;
  }
  double residual(const WeightVector& w) const { return target - predict(w); }
};

// Rows of `table` (all, or those at `indices`) against `target_column`.
std::vector<ScoreRow> make_rows(const ScoreTable& table, std::string_view target_column);
std::vector<ScoreRow> make_rows(const ScoreTable& table, std::string_view target_column,
                                std::span<const std::size_t> indices);

enum class Target { positive, death, both };

std::optional<Target> parse_target(std::string_view name);
std::string_view target_name(Target target);
// Outcome score columns selected by `target`.
std::vector<std::string> target_columns(Target target);

// (1/n) sum |predicted_i - truth_i|; LengthMismatch on unequal or empty input.
double mean_abs_error(std::span<const double> predicted, std::span<const double> truth);
// max |predicted_i - truth_i|; same preconditions.
double max_abs_error(std::span<const double> predicted, std::span<const double> truth);

// alpha*gs1 + beta*gs2 + gamma*gs3 per region.
std::vector<double> mix_scores(const ScoreTable& table, const WeightVector& w);

// Total L1 distance R(alpha, beta) = sum_i |residual_i|.
double l1_objective(std::span<const ScoreRow> rows, const WeightVector& w);
// R / k.
double mean_abs_error(std::span<const ScoreRow> rows, const WeightVector& w);

// Per-row subgradient of |residual| with respect to (alpha, beta), gamma
// being 1 - alpha - beta: (ses - vacc, ses - dens) for a positive residual,
// the negation for a negative one, and (0, 0) at an exact fit.
std::pair<double, double> residual_subgradient(const ScoreRow& row,
                                               const WeightVector& w);

enum class Loss { l1, l2 };

// Objective over the (alpha, beta) grid. Cells are indexed by
// (i, j) = (alpha / step, beta / step); cells with gamma < 0 hold NaN and
// cells with gamma < step are infeasible.
struct GridResult {
  double step = 0.05;
  std::size_t divisions = 20;  // 1 / step
  Loss loss = Loss::l1;
  std::vector<double> objective;  // (divisions+1)^2, row-major in alpha
  std::vector<bool> feasible;
  WeightVector argmin;
  double min_objective = std::numeric_limits<double>::infinity();
  std::size_t argmin_i = 0;
  std::size_t argmin_j = 0;
  // Per alpha row, the beta index of the row minimum (nullopt if the row has
  // no feasible cell); per beta column, the alpha index of the column minimum.
  std::vector<std::optional<std::size_t>> row_minima;
  std::vector<std::optional<std::size_t>> col_minima;

  double alpha_at(std::size_t i) const { return static_cast<double>(i) / divisions; }
  double beta_at(std::size_t j) const { return static_cast<double>(j) / divisions; }
  double value(std::size_t i, std::size_t j) const {
    return objective[i * (divisions + 1) + j];
  }
  bool is_feasible(std::size_t i, std::size_t j) const {
    return feasible[i * (divisions + 1) + j];
  }
  // True when the argmin sits on the gamma = step edge, i.e. the unclamped
  // optimum may have gamma = 0.
  bool argmin_on_feasibility_edge() const {
    return argmin_i + argmin_j + 1 == divisions;
  }
};

// Evaluates every (alpha, beta) in {0, step, ..., 1}^2. The objective is the
// mean absolute error against one target column, or the average of the MAEs
// when several are given (mean squared error for Loss::l2). Ties go to the
// lexicographically smallest (alpha, beta). InvalidStep unless 1/step is a
// positive integer.
GridResult grid_search(const ScoreTable& table, const std::vector<std::string>& targets,
                       double step, Loss loss = Loss::l1);

enum class StopReason { converged, boundary, max_iters };

std::string_view stop_reason_name(StopReason reason);

struct FitOptions {
  double step_size = 5e-5;  // Δt, applied to the gradient of the MAE
  double tol = 1e-6;        // on max(|Δalpha|, |Δbeta|)
  std::size_t max_iters = 100000;
};

struct TracePoint {
  std::size_t iteration = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double train_mae = 0.0;
};

struct FitResult {
  WeightVector weights;
  std::vector<TracePoint> trace;  // iteration 0 is the start
  StopReason stop_reason = StopReason::max_iters;
  std::size_t iterations = 0;
  double train_mae = 0.0;
  double test_mae = std::numeric_limits<double>::quiet_NaN();
};

// Fixed-step subgradient descent on the training MAE:
//   alpha_n = alpha_{n-1} - dR/dalpha * Δt,  beta_n likewise.
// Stops when both weights move less than tol, when a step would leave the
// simplex (the step is shortened to land on the boundary), or after
// max_iters. `test` rows, when given, fill test_mae.
FitResult fit_subgradient(std::span<const ScoreRow> train, const WeightVector& start,
                          const FitOptions& options = {},
                          std::span<const ScoreRow> test = {});

struct OlsResult {
  double intercept = 0.0;
  double coef_vacc = 0.0;
  double coef_dens = 0.0;
  double coef_income = 0.0;
  double train_mae = 0.0;
  double test_mae = std::numeric_limits<double>::quiet_NaN();

  double predict(const ScoreRow& row) const {
    return intercept + coef_vacc * row.vacc + coef_dens * row.dens +
           coef_income * row.ses;
  }
};

// Unconstrained least squares of target on (1, gs1, gs2, gs3). Needs at
// least 5 rows and a full-rank design (RankDeficient otherwise).
OlsResult fit_ols(std::span<const ScoreRow> train, std::span<const ScoreRow> test = {});

// max_j |X_j . r| / (|X_j| |y|) over the design columns X_j, where r is the
// residual of `fit` on `rows`. Zero at an exact least-squares solution.
double ols_orthogonality(std::span<const ScoreRow> rows, const OlsResult& fit);

struct Split {
  std::vector<std::size_t> train;  // even positions in canonical order
  std::vector<std::size_t> test;   // odd positions
};

// TooFewRegions below 4 regions.
Split alternating_split(std::size_t n_regions);
Split alternating_split(const Dataset& dataset);

}  // namespace georisk

#endif  // GEORISK_OPTIMIZE_HPP_
