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

#ifndef GEORISK_SCORING_HPP_
#define GEORISK_SCORING_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "georisk/ingest.hpp"

namespace georisk {

// Whether a larger raw value means more risk (direct) or less (inverted).
enum class RiskDirection { direct, inverted };

enum class Variable { vaccination, density, income };

RiskDirection direction_of(Variable variable);
std::string_view variable_name(Variable variable);
std::optional<Variable> parse_variable(std::string_view name);

// Risk-adjusted percentile ranks in [0,1].
//
// Non-missing values are sorted by risk (ascending for direct, descending
// for inverted) and the item at 0-based rank r of n receives r/(n-1). A run
// of tied values receives the mean of the percentiles it occupies. Entries
// flagged in `missing` receive 0, the minimum-risk percentile, and do not
// count towards n. Throws TooFewValues when fewer than two values remain.
std::vector<double> percentile_ranks(std::span<const double> values,
                                     RiskDirection direction,
                                     const std::vector<bool>& missing = {});

// 10^percentile; throws OutOfRange outside [0,1].
double exp_score(double percentile);

// sum_j w_j * 10^{p_j}. Weights must be nonnegative and sum to 1 within
// 1e-12 (InvalidWeights); lengths must match and be nonzero (LengthMismatch).
double exp_mean_score(std::span<const double> percentiles,
                      std::span<const double> weights);

// Per-region score columns, in insertion order.
class ScoreTable {
 public:
  ScoreTable() = default;
  explicit ScoreTable(std::vector<std::string> region_ids)
      : region_ids_(std::move(region_ids)) {}

  const std::vector<std::string>& region_ids() const { return region_ids_; }
  std::size_t rows() const { return region_ids_.size(); }

  // Throws LengthMismatch if the column length differs from rows(), and
  // replaces an existing column of the same name.
  void add_column(const std::string& name, std::vector<double> values);
  bool has_column(std::string_view name) const;
  // Throws MissingColumn.
  const std::vector<double>& column(std::string_view name) const;
  std::vector<std::string> column_names() const;

  // Appends every column of `other`; region ids must match exactly.
  void merge(const ScoreTable& other);
  // Rows at `indices`, in that order.
  ScoreTable select_rows(std::span<const std::size_t> indices) const;

  std::vector<std::string> warnings;

 private:
  std::vector<std::string> region_ids_;
  std::vector<std::pair<std::string, std::vector<double>>> columns_;
};

// Names of the seven fixed geographic scores and the two outcome scores.
inline constexpr const char* kGeoScoreNames[7] = {"gs1", "gs2", "gs3", "gs4",
                                                  "gs5", "gs6", "gs7"};
inline constexpr const char* kPositiveScore = "pos_score";
inline constexpr const char* kDeathScore = "death_score";

// gs1 = 10^v, gs2 = 10^d, gs3 = 10^s and their equal-weight means gs4..gs7,
// where v, d, s are the direction-adjusted percentiles of vaccination
// (inverted), density (direct) and income (inverted). Regions with missing
// income take percentile 0 and the table carries a warning.
ScoreTable geo_scores(const Dataset& dataset);

// pos_score and death_score: 10^(direct percentile) of positive_rate and
// death_rate, or the dataset's score-space outcomes when it carries them.
ScoreTable outcome_scores(const Dataset& dataset);

// geo_scores followed by outcome_scores.
ScoreTable all_scores(const Dataset& dataset);

// Region ids, then one column per score with 6 decimals.
void write_score_table(std::ostream& out, const ScoreTable& table);
void write_score_table(const std::filesystem::path& path, const ScoreTable& table);
ScoreTable read_score_table(std::istream& in);
ScoreTable read_score_table(const std::filesystem::path& path);

// A weighted score over a subset of the geographic variables.
struct ScoreConfig {
  std::vector<Variable> variables;
  std::vector<double> weights;

  // Nonempty, no repeated variable, weights on the simplex within 1e-12.
  void validate() const;

  std::string to_json() const;
  static ScoreConfig from_json(std::string_view text);

  friend bool operator==(const ScoreConfig&, const ScoreConfig&) = default;
};

// Per-region exp_mean_score of the configured variables.
std::vector<double> score_with_config(const Dataset& dataset,
                                      const ScoreConfig& config);

}  // namespace georisk

#endif  // GEORISK_SCORING_HPP_
