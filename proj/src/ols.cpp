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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "georisk/errors.hpp"
#include "georisk/optimize.hpp"

namespace georisk {

namespace {

Eigen::MatrixXd design_matrix(std::span<const ScoreRow> rows) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = 1.0;
    x(r, 1) = rows[i].vacc;
    x(r, 2) = rows[i].dens;
    x(r, 3) = rows[i].ses;
  }
  return x;
}

Eigen::VectorXd target_vector(std::span<const ScoreRow> rows) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = rows[i].target;
  }
  return y;
}

double ols_mae(std::span<const ScoreRow> rows, const OlsResult& fit) {
  double sum = 0.0;
  for (const ScoreRow& row : rows) sum += std::abs(row.target - fit.predict(row));
  return sum / static_cast<double>(rows.size());
}

}  // namespace

OlsResult fit_ols(std::span<const ScoreRow> train, std::span<const ScoreRow> test) {
  if (train.size() < 5) {
    throw RankDeficient("least squares needs at least 5 rows, got " +
                        std::to_string(train.size()));
  }
  const Eigen::MatrixXd x = design_matrix(train);
  const Eigen::VectorXd y = target_vector(train);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4) {
    throw RankDeficient("design matrix (intercept, gs1, gs2, gs3) has rank " +
                        std::to_string(qr.rank()) + " < 4");
  }
  const Eigen::VectorXd beta = qr.solve(y);

  OlsResult fit;
  fit.intercept = beta(0);
  fit.coef_vacc = beta(1);
  fit.coef_dens = beta(2);
  fit.coef_income = beta(3);
  fit.train_mae = ols_mae(train, fit);
  if (!test.empty()) fit.test_mae = ols_mae(test, fit);
  return fit;
}

double ols_orthogonality(std::span<const ScoreRow> rows, const OlsResult& fit) {
  const Eigen::MatrixXd x = design_matrix(rows);
  const Eigen::VectorXd y = target_vector(rows);
  Eigen::Vector4d beta(fit.intercept, fit.coef_vacc, fit.coef_dens, fit.coef_income);
  const Eigen::VectorXd r = y - x * beta;
  const double y_norm = std::max(y.norm(), 1e-300);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double scale = std::max(x.col(j).norm(), 1e-300) * y_norm;
    worst = std::max(worst, std::abs(x.col(j).dot(r)) / scale);
  }
  return worst;
}

}  // namespace georisk
