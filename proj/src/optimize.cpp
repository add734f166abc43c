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

#include <algorithm>
#include <cmath>

#include "georisk/csv.hpp"
#include "georisk/errors.hpp"
#include "georisk/optimize.hpp"

namespace georisk {

std::vector<ScoreRow> make_rows(const ScoreTable& table, std::string_view target_column) {
  std::vector<std::size_t> all(table.rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return make_rows(table, target_column, all);
}

std::vector<ScoreRow> make_rows(const ScoreTable& table, std::string_view target_column,
                                std::span<const std::size_t> indices) {
  const auto& gs1 = table.column("gs1");
  const auto& gs2 = table.column("gs2");
  const auto& gs3 = table.column("gs3");
  const auto& target = table.column(target_column);
  std::vector<ScoreRow> rows;
  rows.reserve(indices.size());
  for (std::size_t i : indices) {
    rows.push_back({gs1.at(i), gs2.at(i), gs3.at(i), target.at(i)});
  }
  return rows;
}

std::optional<Target> parse_target(std::string_view name) {
  if (name == "positive") return Target::positive;
  if (name == "death") return Target::death;
  if (name == "both") return Target::both;
  return std::nullopt;
}

std::string_view target_name(Target target) {
  switch (target) {
    case Target::positive:
      return "positive";
    case Target::death:
      return "death";
    case Target::both:
      return "both";
  }
  return "";
}

std::vector<std::string> target_columns(Target target) {
  switch (target) {
    case Target::positive:
      return {kPositiveScore};
    case Target::death:
      return {kDeathScore};
    case Target::both:
      return {kPositiveScore, kDeathScore};
  }
  return {};
}

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size()) {
    throw LengthMismatch("error metrics need equal nonzero lengths, got " +
                         std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}

// Objectives within rounding noise of the incumbent count as ties, which the
// scan order resolves towards the smallest (alpha, beta).
bool improves(double candidate, double incumbent) {
  if (!std::isfinite(incumbent)) return true;
  return candidate < incumbent - 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

double mean_abs_error(std::span<const double> predicted, std::span<const double> truth) {
  check_lengths(predicted, truth);
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    sum += std::abs(predicted[i] - truth[i]);
  }
  return sum / static_cast<double>(predicted.size());
}

double max_abs_error(std::span<const double> predicted, std::span<const double> truth) {
  check_lengths(predicted, truth);
  double worst = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    worst = std::max(worst, std::abs(predicted[i] - truth[i]));
  }
  return worst;
}

std::vector<double> mix_scores(const ScoreTable& table, const WeightVector& w) {
  w.validate();
  const auto& gs1 = table.column("gs1");
  const auto& gs2 = table.column("gs2");
  const auto& gs3 = table.column("gs3");
  std::vector<double> out(table.rows());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ScoreRow{gs1[i], gs2[i], gs3[i], 0.0}.predict(w);
  }
  return out;
}

double l1_objective(std::span<const ScoreRow> rows, const WeightVector& w) {
  double total = 0.0;
  for (const ScoreRow& row : rows) total += std::abs(row.residual(w));
  return total;
}

double mean_abs_error(std::span<const ScoreRow> rows, const WeightVector& w) {
  if (rows.empty()) throw LengthMismatch("no rows to evaluate");
  return l1_objective(rows, w) / static_cast<double>(rows.size());
}

std::pair<double, double> residual_subgradient(const ScoreRow& row,
                                               const WeightVector& w) {
  const double r = row.residual(w);
  if (r > 0.0) return {row.ses - row.vacc, row.ses - row.dens};
  if (r < 0.0) return {row.vacc - row.ses, row.dens - row.ses};
  return {0.0, 0.0};
}

GridResult grid_search(const ScoreTable& table, const std::vector<std::string>& targets,
                       double step, Loss loss) {
  if (!std::isfinite(step) || step <= 0.0 || step > 1.0) {
    throw InvalidStep("grid step " + csv::format_roundtrip(step) +
                      " must lie in (0, 1]");
  }
  const double inverse = 1.0 / step;
  const double rounded = std::round(inverse);
  if (std::abs(inverse - rounded) > 1e-9 * rounded) {
    throw InvalidStep("grid step " + csv::format_roundtrip(step) +
                      " does not divide 1 exactly");
  }
  if (targets.empty()) throw MissingColumn("grid search needs at least one target");

  GridResult result;
  result.step = step;
  result.loss = loss;
  const std::size_t n = static_cast<std::size_t>(rounded);
  result.divisions = n;
  const std::size_t side = n + 1;
  result.objective.assign(side * side, std::numeric_limits<double>::quiet_NaN());
  result.feasible.assign(side * side, false);
  result.row_minima.assign(side, std::nullopt);
  result.col_minima.assign(side, std::nullopt);

  std::vector<std::vector<ScoreRow>> per_target;
  for (const auto& t : targets) per_target.push_back(make_rows(table, t));
  if (per_target.front().empty()) throw TooFewValues("grid search on an empty table");

  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; i + j <= n; ++j) {
      const WeightVector w{static_cast<double>(i) / nd, static_cast<double>(j) / nd,
                           static_cast<double>(n - i - j) / nd};
      double sum = 0.0;
      for (const auto& rows : per_target) {
        double acc = 0.0;
        for (const ScoreRow& row : rows) {
          const double r = row.residual(w);
          acc += loss == Loss::l1 ? std::abs(r) : r * r;
        }
        sum += acc / static_cast<double>(rows.size());
      }
      const std::size_t cell = i * side + j;
      result.objective[cell] = sum / static_cast<double>(per_target.size());
      result.feasible[cell] = i + j + 1 <= n;
    }
  }

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (!result.is_feasible(i, j)) continue;
      const double v = result.value(i, j);
      if (improves(v, result.min_objective)) {
        result.min_objective = v;
        result.argmin_i = i;
        result.argmin_j = j;
      }
      auto& rm = result.row_minima[i];
      if (!rm || improves(v, result.value(i, *rm))) rm = j;
      auto& cm = result.col_minima[j];
      if (!cm || improves(v, result.value(*cm, j))) cm = i;
    }
  }
  if (!std::isfinite(result.min_objective)) {
    throw InvalidStep("grid step " + csv::format_roundtrip(step) +
                      " leaves no cell with gamma > 0");
  }
  result.argmin = {static_cast<double>(result.argmin_i) / nd,
                   static_cast<double>(result.argmin_j) / nd,
                   static_cast<double>(n - result.argmin_i - result.argmin_j) / nd};
  return result;
}

std::string_view stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::converged:
      return "converged";
    case StopReason::boundary:
      return "boundary";
    case StopReason::max_iters:
      return "max_iters";
  }
  return "";
}

FitResult fit_subgradient(std::span<const ScoreRow> train, const WeightVector& start,
                          const FitOptions& options, std::span<const ScoreRow> test) {
  if (!start.in_open_simplex()) {
    throw InvalidStart("start (" + start.to_string(6) +
                       ") must lie strictly inside the simplex");
  }
  if (!(options.step_size > 0.0) || !std::isfinite(options.step_size)) {
    throw InvalidHyperparameter("step size must be positive");
  }
  if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
    throw InvalidHyperparameter("tolerance must be positive");
  }
  if (options.max_iters == 0) throw InvalidHyperparameter("max_iters must be positive");
  if (train.empty()) throw TooFewRegions("no training rows");

  const double k = static_cast<double>(train.size());
  FitResult result;
  WeightVector w = start;
  result.trace.push_back({0, w.alpha, w.beta, mean_abs_error(train, w)});

  for (std::size_t iter = 1; iter <= options.max_iters; ++iter) {
    double ga = 0.0;
    double gb = 0.0;
    for (const ScoreRow& row : train) {
      const auto [da, db] = residual_subgradient(row, w);
      ga += da;
      gb += db;
    }
    ga /= k;
    gb /= k;
    if (!std::isfinite(ga) || !std::isfinite(gb)) {
      throw NonFiniteGradient("gradient is not finite at iteration " +
                              std::to_string(iter));
    }

    const double step_a = -ga * options.step_size;
    const double step_b = -gb * options.step_size;
    WeightVector next = WeightVector::from_alpha_beta(w.alpha + step_a, w.beta + step_b);
    const bool outside = next.alpha < 0.0 || next.beta < 0.0 || next.gamma < 0.0 ||
                         next.alpha > 1.0 || next.beta > 1.0 || next.gamma > 1.0;
    if (outside) {
      // Shorten the step to the first boundary it crosses.
      const double step_g = -(step_a + step_b);
      double t = 1.0;
      if (step_a < 0.0) t = std::min(t, w.alpha / -step_a);
      if (step_b < 0.0) t = std::min(t, w.beta / -step_b);
      if (step_g < 0.0) t = std::min(t, w.gamma / -step_g);
      double a = std::clamp(w.alpha + t * step_a, 0.0, 1.0);
      double b = std::clamp(w.beta + t * step_b, 0.0, 1.0);
      if (a + b > 1.0) b = 1.0 - a;
      next = {a, b, std::max(0.0, 1.0 - a - b)};
      w = next;
      result.trace.push_back({iter, w.alpha, w.beta, mean_abs_error(train, w)});
      result.stop_reason = StopReason::boundary;
      result.iterations = iter;
      break;
    }

    const double change = std::max(std::abs(next.alpha - w.alpha),
                                   std::abs(next.beta - w.beta));
    w = next;
    result.trace.push_back({iter, w.alpha, w.beta, mean_abs_error(train, w)});
    result.iterations = iter;
    if (change < options.tol) {
      result.stop_reason = StopReason::converged;
      break;
    }
  }

  result.weights = w;
  result.train_mae = result.trace.back().train_mae;
  if (!test.empty()) result.test_mae = mean_abs_error(test, w);
  return result;
}

Split alternating_split(std::size_t n_regions) {
  if (n_regions < 4) {
    throw TooFewRegions("train/test split needs at least 4 regions, got " +
                        std::to_string(n_regions));
  }
  Split split;
  for (std::size_t i = 0; i < n_regions; ++i) {
    (i % 2 == 0 ? split.train : split.test).push_back(i);
  }
  return split;
}

Split alternating_split(const Dataset& dataset) {
  return alternating_split(dataset.size());
}

}  // namespace georisk
