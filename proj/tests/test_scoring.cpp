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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "georisk/errors.hpp"
#include "georisk/scoring.hpp"
#include "oracles.hpp"

using namespace georisk;
using doctest::Approx;

namespace {

RegionRecord record(std::string id, double vacc, double dens, std::optional<double> income,
                    double pos, double death) {
  RegionRecord r;
  r.region_id = std::move(id);
  r.vacc_rate = vacc;
  r.pop_density = dens;
  r.median_income = income;
  r.positive_rate = pos;
  r.death_rate = death;
  return r;
}

Dataset random_dataset(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Coarse values so ties occur.
  std::uniform_int_distribution<int> coarse(0, 9);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    d.records.push_back(record(std::to_string(10000 + i), coarse(rng) / 10.0,
                               1000.0 * (1 + coarse(rng)), 1e4 * (1.0 + unit(rng)),
                               unit(rng), 500.0 * unit(rng)));
  }
  return d;
}

}  // namespace

TEST_CASE("percentile ranks: worked examples") {
  const std::vector<double> v{10, 20, 30};
  CHECK(percentile_ranks(v, RiskDirection::direct) == std::vector<double>{0, 0.5, 1});
  CHECK(percentile_ranks(v, RiskDirection::inverted) == std::vector<double>{1, 0.5, 0});

  const std::vector<double> tied{5, 5, 9};
  const auto oracle_values = oracle::enumerated_percentiles(tied);
  CHECK(oracle_values[0] == Approx(0.25));
  CHECK(oracle_values[1] == Approx(0.25));
  CHECK(oracle_values[2] == Approx(1.0));
  const auto got = percentile_ranks(tied, RiskDirection::direct);
  for (std::size_t i = 0; i < 3; ++i) CHECK(got[i] == Approx(oracle_values[i]).epsilon(1e-15));
}

TEST_CASE("percentile ranks: missing values take the minimum") {
  const std::vector<double> v{3, 100, 1, 2};
  const std::vector<bool> missing{false, true, false, false};
  const auto p = percentile_ranks(v, RiskDirection::inverted, missing);
  CHECK(p == std::vector<double>{0.0, 0.0, 1.0, 0.5});
}

TEST_CASE("percentile ranks: errors") {
  CHECK_THROWS_AS(percentile_ranks(std::vector<double>{1.0}, RiskDirection::direct),
                  TooFewValues);
  CHECK_THROWS_AS(percentile_ranks(std::vector<double>{}, RiskDirection::direct),
                  TooFewValues);
  CHECK_THROWS_AS(percentile_ranks(std::vector<double>{1, 2}, RiskDirection::direct,
                                   std::vector<bool>{true, false}),
                  TooFewValues);
  CHECK_THROWS_AS(percentile_ranks(std::vector<double>{1, 2}, RiskDirection::direct,
                                   std::vector<bool>{true}),
                  LengthMismatch);
}

TEST_CASE("property: percentile ranks match the enumeration oracle") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> len(2, 7);
  std::uniform_int_distribution<int> val(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(rng)));
    for (double& x : v) x = val(rng);
    const bool inverted = trial % 2 == 1;
    std::vector<double> risk = v;
    if (inverted) {
      for (double& x : risk) x = -x;
    }
    const auto expected = oracle::enumerated_percentiles(risk);
    const auto got = percentile_ranks(
        v, inverted ? RiskDirection::inverted : RiskDirection::direct);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(got[i] == Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("exp_score") {
  CHECK(exp_score(0.9) == Approx(7.943).epsilon(0.05 / 7.943));
  CHECK(std::abs(exp_score(0.9) - 7.9) <= 0.05);
  CHECK(std::abs(exp_score(0.4) - 2.5) <= 0.05);
  CHECK(std::abs(exp_score(0.5) - 3.2) <= 0.05);
  CHECK(exp_score(0.0) == 1.0);
  CHECK(exp_score(1.0) == 10.0);
  CHECK_THROWS_AS(exp_score(-0.01), OutOfRange);
  CHECK_THROWS_AS(exp_score(1.01), OutOfRange);
  CHECK_THROWS_AS(exp_score(std::nan("")), OutOfRange);
}

TEST_CASE("exp_mean_score") {
  const double third = 1.0 / 3.0;
  CHECK(exp_mean_score(std::vector<double>{1, 1, 1}, std::vector<double>{third, third, third}) ==
        Approx(10.0).epsilon(1e-15));
  CHECK(exp_mean_score(std::vector<double>{0, 0, 0}, std::vector<double>{0.2, 0.5, 0.3}) ==
        Approx(1.0).epsilon(1e-15));
  // (10^0.9 + 10^0.4) / 2
  const double expected = (std::pow(10.0, 0.9) + std::pow(10.0, 0.4)) / 2.0;
  CHECK(expected == Approx(5.228).epsilon(0.01 / 5.228));
  CHECK(exp_mean_score(std::vector<double>{0.9, 0.4}, std::vector<double>{0.5, 0.5}) ==
        Approx(expected).epsilon(1e-15));

  SUBCASE("degenerate mixture equals the single score") {
    for (double p : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      CHECK(exp_mean_score(std::vector<double>{p, 0.3, 0.9}, std::vector<double>{1, 0, 0}) ==
            exp_score(p));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(exp_mean_score(std::vector<double>{0.5}, std::vector<double>{0.5, 0.5}),
                    LengthMismatch);
    CHECK_THROWS_AS(exp_mean_score(std::vector<double>{}, std::vector<double>{}),
                    LengthMismatch);
    CHECK_THROWS_AS(exp_mean_score(std::vector<double>{0.5, 0.5}, std::vector<double>{0.6, 0.6}),
                    InvalidWeights);
    CHECK_THROWS_AS(exp_mean_score(std::vector<double>{0.5, 0.5}, std::vector<double>{1.5, -0.5}),
                    InvalidWeights);
    CHECK_THROWS_AS(exp_mean_score(std::vector<double>{1.5}, std::vector<double>{1.0}),
                    OutOfRange);
  }
}

TEST_CASE("geo scores") {
  SUBCASE("strictly increasing vaccination inverts to [10, 10^0.5, 1]") {
    Dataset d;
    d.records = {record("10001", 0.2, 100, 5e4, 0.1, 1),
                 record("10002", 0.5, 300, 4e4, 0.2, 2),
                 record("10003", 0.8, 200, 6e4, 0.3, 3)};
    const ScoreTable t = geo_scores(d);
    const auto& gs1 = t.column("gs1");
    CHECK(gs1[0] == 10.0);
    CHECK(gs1[1] == Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK(gs1[2] == 1.0);
    // density is direct: 100 < 200 < 300
    CHECK(t.column("gs2") == std::vector<double>{1.0, 10.0, std::pow(10.0, 0.5)});
    // income inverted: 6e4 lowest risk
    CHECK(t.column("gs3")[2] == 1.0);
    CHECK(t.column("gs3")[1] == 10.0);
    CHECK(t.warnings.empty());
  }
  SUBCASE("missing income scores 1 and is reported") {
    Dataset d;
    d.records = {record("10311", 0.2, 100, std::nullopt, 0.1, 1),
                 record("10312", 0.5, 300, 9e4, 0.2, 2),
                 record("10313", 0.8, 200, 2e4, 0.3, 3)};
    const ScoreTable t = geo_scores(d);
    CHECK(t.column("gs3") == std::vector<double>{1.0, 1.0, 10.0});
    REQUIRE(t.warnings.size() == 1);
    CHECK(t.warnings[0].find("10311") != std::string::npos);
  }
  SUBCASE("composition identities, bounds and monotonicity on random data") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const Dataset d = random_dataset(rng, 2 + trial);
      const ScoreTable t = geo_scores(d);
      const auto& g1 = t.column("gs1");
      const auto& g2 = t.column("gs2");
      const auto& g3 = t.column("gs3");
      for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(std::abs(t.column("gs4")[i] - (g1[i] + g2[i]) / 2) <= 1e-12);
        CHECK(std::abs(t.column("gs5")[i] - (g1[i] + g3[i]) / 2) <= 1e-12);
        CHECK(std::abs(t.column("gs6")[i] - (g2[i] + g3[i]) / 2) <= 1e-12);
        CHECK(std::abs(t.column("gs7")[i] - (g1[i] + g2[i] + g3[i]) / 3) <= 1e-12);
        for (const char* name : kGeoScoreNames) {
          CHECK(t.column(name)[i] >= 1.0);
          CHECK(t.column(name)[i] <= 10.0);
        }
        for (std::size_t j = 0; j < d.size(); ++j) {
          const auto& a = d.records[i];
          const auto& b = d.records[j];
          if (a.vacc_rate < b.vacc_rate) CHECK(g1[i] > g1[j]);
          if (a.vacc_rate == b.vacc_rate) CHECK(g1[i] == g1[j]);
          if (a.pop_density < b.pop_density) CHECK(g2[i] < g2[j]);
        }
      }
    }
  }
  SUBCASE("scale invariance is exact") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> factor(1e-3, 1e3);
    for (int trial = 0; trial < 20; ++trial) {
      Dataset d = random_dataset(rng, 30);
      const ScoreTable before = all_scores(d);
      const double fv = factor(rng), fd = factor(rng), fi = factor(rng);
      for (auto& r : d.records) {
        r.vacc_rate *= fv;
        r.pop_density *= fd;
        *r.median_income *= fi;
      }
      const ScoreTable after = all_scores(d);
      for (const auto& name : before.column_names()) {
        CHECK(before.column(name) == after.column(name));
      }
    }
  }
}

TEST_CASE("outcome scores") {
  Dataset d;
  d.records = {record("10001", 0.2, 100, 5e4, 0.30, 50),
               record("10002", 0.5, 300, 4e4, 0.10, 50),
               record("10003", 0.8, 200, 6e4, 0.20, 50)};
  const ScoreTable t = outcome_scores(d);
  CHECK(t.column(kPositiveScore)[0] == 10.0);
  const auto expected_tied = std::pow(10.0, oracle::enumerated_percentiles({50, 50, 50})[0]);
  for (double s : t.column(kDeathScore)) CHECK(s == Approx(expected_tied).epsilon(1e-15));
  CHECK(expected_tied == Approx(std::sqrt(10.0)));

  Dataset two;
  two.records = {record("10001", 0.2, 100, 5e4, 0.30, 5),
                 record("10002", 0.5, 300, 4e4, 0.10, 6)};
  const auto pos = outcome_scores(two).column(kPositiveScore);
  CHECK(pos == std::vector<double>{10.0, 1.0});

  Dataset one;
  one.records = {record("10001", 0.2, 100, 5e4, 0.30, 5)};
  CHECK_THROWS_AS(outcome_scores(one), TooFewValues);
}

TEST_CASE("score table CSV") {
  Dataset d;
  d.records = {record("10001", 0.2, 100, 5e4, 0.30, 50),
               record("10002", 0.5, 300, 4e4, 0.10, 40),
               record("10003", 0.8, 200, 6e4, 0.20, 60)};
  const ScoreTable t = all_scores(d);
  CHECK(t.column_names() == std::vector<std::string>{"gs1", "gs2", "gs3", "gs4", "gs5",
                                                     "gs6", "gs7", "pos_score",
                                                     "death_score"});
  std::ostringstream out;
  write_score_table(out, t);
  const std::string text = out.str();
  CHECK(text.rfind("region_id,gs1,gs2,gs3,gs4,gs5,gs6,gs7,pos_score,death_score\n"
                   "10001,10.000000,1.000000,",
                   0) == 0);
  std::istringstream in(text);
  const ScoreTable back = read_score_table(in);
  CHECK(back.region_ids() == t.region_ids());
  for (const auto& name : t.column_names()) {
    for (std::size_t i = 0; i < t.rows(); ++i) {
      CHECK(back.column(name)[i] == Approx(t.column(name)[i]).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(t.column("gs9"), MissingColumn);
}

TEST_CASE("score config") {
  ScoreConfig c{{Variable::vaccination, Variable::income}, {0.5, 0.5}};
  CHECK(c.to_json() == R"({"variables":["vaccination","income"],"weights":[0.5,0.5]})");
  CHECK(ScoreConfig::from_json(c.to_json()) == c);
  CHECK_THROWS_AS(ScoreConfig::from_json(R"({"variables":[],"weights":[]})"), InvalidWeights);
  CHECK_THROWS_AS(
      ScoreConfig::from_json(R"({"variables":["density"],"weights":[0.9]})"), InvalidWeights);
  CHECK_THROWS_AS(ScoreConfig::from_json(
                      R"({"variables":["density","density"],"weights":[0.5,0.5]})"),
                  InvalidWeights);
  CHECK_THROWS_AS(ScoreConfig::from_json(R"({"variables":["wealth"],"weights":[1]})"),
                  InvalidWeights);

  Dataset d;
  d.records = {record("10001", 0.2, 100, 5e4, 0.30, 50),
               record("10002", 0.5, 300, 4e4, 0.10, 40),
               record("10003", 0.8, 200, 6e4, 0.20, 60)};
  const auto gs5 = geo_scores(d).column("gs5");
  const auto configured = score_with_config(d, c);
  for (std::size_t i = 0; i < 3; ++i) CHECK(configured[i] == Approx(gs5[i]).epsilon(1e-15));
}
