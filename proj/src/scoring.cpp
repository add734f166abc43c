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

#include "georisk/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "georisk/csv.hpp"
#include "georisk/errors.hpp"
#include "json.hpp"

namespace georisk {

RiskDirection direction_of(Variable variable) {
  switch (variable) {
    case Variable::vaccination:
    case Variable::income:
      return RiskDirection::inverted;
    case Variable::density:
      return RiskDirection::direct;
  }
  return RiskDirection::direct;
}

std::string_view variable_name(Variable variable) {
  switch (variable) {
    case Variable::vaccination:
      return "vaccination";
    case Variable::density:
      return "density";
    case Variable::income:
      return "income";
  }
  return "";
}

std::optional<Variable> parse_variable(std::string_view name) {
  for (Variable v : {Variable::vaccination, Variable::density, Variable::income}) {
    if (variable_name(v) == name) return v;
  }
  return std::nullopt;
}

std::vector<double> percentile_ranks(std::span<const double> values,
                                     RiskDirection direction,
                                     const std::vector<bool>& missing) {
  if (!missing.empty() && missing.size() != values.size()) {
    throw LengthMismatch("missing mask has " + std::to_string(missing.size()) +
                         " entries for " + std::to_string(values.size()) +
                         " values");
  }
  std::vector<std::size_t> order;
  order.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (missing.empty() || !missing[i]) {
      if (!std::isfinite(values[i])) {
        throw OutOfRange("non-finite value at position " + std::to_string(i));
      }
      order.push_back(i);
    }
  }
  const std::size_t n = order.size();
  if (n < 2) {
    throw TooFewValues("percentile ranks need at least 2 non-missing values, got " +
                       std::to_string(n));
  }

  // Ascending in risk.
  if (direction == RiskDirection::direct) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  }

  std::vector<double> out(values.size(), 0.0);
  const double denom = static_cast<double>(n - 1);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    // Mean of ranks start..end-1.
    const double mean_rank = static_cast<double>(start + end - 1) / 2.0;
    const double p = mean_rank / denom;
    for (std::size_t k = start; k < end; ++k) out[order[k]] = p;
    start = end;
  }
  return out;
}

double exp_score(double percentile) {
  if (!(percentile >= 0.0 && percentile <= 1.0)) {
    throw OutOfRange("percentile " + csv::format_roundtrip(percentile) +
                     " is outside [0,1]");
  }
  return std::pow(10.0, percentile);
}

double exp_mean_score(std::span<const double> percentiles,
                      std::span<const double> weights) {
  if (percentiles.empty() || percentiles.size() != weights.size()) {
    throw LengthMismatch(std::to_string(percentiles.size()) + " percentiles, " +
                         std::to_string(weights.size()) + " weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidWeights("weight " + csv::format_roundtrip(w) + " is negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidWeights("weights sum to " + csv::format_roundtrip(total) +
                         ", expected 1");
  }
  double score = 0.0;
  for (std::size_t j = 0; j < percentiles.size(); ++j) {
    score += weights[j] * exp_score(percentiles[j]);
  }
  return score;
}

void ScoreTable::add_column(const std::string& name, std::vector<double> values) {
  if (values.size() != region_ids_.size()) {
    throw LengthMismatch("column " + name + " has " + std::to_string(values.size()) +
                         " rows, table has " + std::to_string(region_ids_.size()));
  }
  for (auto& [existing, data] : columns_) {
    if (existing == name) {
      data = std::move(values);
      return;
    }
  }
  columns_.emplace_back(name, std::move(values));
}

bool ScoreTable::has_column(std::string_view name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const auto& c) { return c.first == name; });
}

const std::vector<double>& ScoreTable::column(std::string_view name) const {
  for (const auto& [existing, data] : columns_) {
    if (existing == name) return data;
  }
  std::string available;
  for (const auto& c : columns_) available += (available.empty() ? "" : ", ") + c.first;
  throw MissingColumn("no score column '" + std::string(name) +
                      "'; available: " + available);
}

std::vector<std::string> ScoreTable::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const auto& c : columns_) names.push_back(c.first);
  return names;
}

void ScoreTable::merge(const ScoreTable& other) {
  if (other.region_ids_ != region_ids_) {
    throw LengthMismatch("cannot merge score tables over different regions");
  }
  for (const auto& [name, data] : other.columns_) add_column(name, data);
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

ScoreTable ScoreTable::select_rows(std::span<const std::size_t> indices) const {
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  for (std::size_t i : indices) ids.push_back(region_ids_.at(i));
  ScoreTable out(std::move(ids));
  for (const auto& [name, data] : columns_) {
    std::vector<double> sub;
    sub.reserve(indices.size());
    for (std::size_t i : indices) sub.push_back(data[i]);
    out.add_column(name, std::move(sub));
  }
  out.warnings = warnings;
  return out;
}

namespace {

std::vector<std::string> ids_of(const Dataset& dataset) {
  std::vector<std::string> ids;
  ids.reserve(dataset.size());
  for (const auto& r : dataset.records) ids.push_back(r.region_id);
  return ids;
}

template <typename Getter>
std::vector<double> column_of(const Dataset& dataset, Getter get) {
  std::vector<double> out;
  out.reserve(dataset.size());
  for (const auto& r : dataset.records) out.push_back(get(r));
  return out;
}

std::vector<double> exp_column(const std::vector<double>& percentiles) {
  std::vector<double> out;
  out.reserve(percentiles.size());
  for (double p : percentiles) out.push_back(exp_score(p));
  return out;
}

// Percentiles of one geographic variable, honouring the missing-income policy.
std::vector<double> variable_percentiles(const Dataset& dataset, Variable variable) {
  switch (variable) {
    case Variable::vaccination:
      return percentile_ranks(
          column_of(dataset, [](const RegionRecord& r) { return r.vacc_rate; }),
          direction_of(variable));
    case Variable::density:
      return percentile_ranks(
          column_of(dataset, [](const RegionRecord& r) { return r.pop_density; }),
          direction_of(variable));
    case Variable::income: {
      std::vector<bool> missing;
      missing.reserve(dataset.size());
      for (const auto& r : dataset.records) missing.push_back(!r.median_income);
      return percentile_ranks(column_of(dataset,
                                        [](const RegionRecord& r) {
                                          return r.median_income.value_or(0.0);
                                        }),
                              direction_of(variable), missing);
    }
  }
  return {};
}

std::vector<std::string> missing_income_warnings(const Dataset& dataset) {
  std::vector<std::string> out;
  for (const auto& r : dataset.records) {
    if (!r.median_income) {
      out.push_back("region " + r.region_id +
                    " has no median_income; its income percentile is set to 0 "
                    "(score 1)");
    }
  }
  return out;
}

}  // namespace

ScoreTable geo_scores(const Dataset& dataset) {
  if (dataset.size() < 2) {
    throw TooFewValues("scoring needs at least 2 regions, got " +
                       std::to_string(dataset.size()));
  }
  const auto v = variable_percentiles(dataset, Variable::vaccination);
  const auto d = variable_percentiles(dataset, Variable::density);
  const auto s = variable_percentiles(dataset, Variable::income);

  ScoreTable table(ids_of(dataset));
  table.add_column("gs1", exp_column(v));
  table.add_column("gs2", exp_column(d));
  table.add_column("gs3", exp_column(s));

  const auto mean_of = [&](std::initializer_list<const std::vector<double>*> cols) {
    const std::size_t k = cols.size();
    const std::vector<double> weights(k, 1.0 / static_cast<double>(k));
    std::vector<double> out(dataset.size());
    std::vector<double> p(k);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      std::size_t j = 0;
      for (const auto* col : cols) p[j++] = (*col)[i];
      out[i] = exp_mean_score(p, weights);
    }
    return out;
  };
  table.add_column("gs4", mean_of({&v, &d}));
  table.add_column("gs5", mean_of({&v, &s}));
  table.add_column("gs6", mean_of({&d, &s}));
  table.add_column("gs7", mean_of({&v, &d, &s}));
  table.warnings = missing_income_warnings(dataset);
  return table;
}

ScoreTable outcome_scores(const Dataset& dataset) {
  if (dataset.size() < 2) {
    throw TooFewValues("scoring needs at least 2 regions, got " +
                       std::to_string(dataset.size()));
  }
  ScoreTable table(ids_of(dataset));
  if (dataset.has_outcome_scores()) {
    table.add_column(kPositiveScore, column_of(dataset, [](const RegionRecord& r) {
                       return *r.positive_score;
                     }));
    table.add_column(kDeathScore, column_of(dataset, [](const RegionRecord& r) {
                       return *r.death_score;
                     }));
    return table;
  }
  table.add_column(kPositiveScore,
                   exp_column(percentile_ranks(
                       column_of(dataset,
                                 [](const RegionRecord& r) { return r.positive_rate; }),
                       RiskDirection::direct)));
  table.add_column(kDeathScore,
                   exp_column(percentile_ranks(
                       column_of(dataset,
                                 [](const RegionRecord& r) { return r.death_rate; }),
                       RiskDirection::direct)));
  return table;
}

ScoreTable all_scores(const Dataset& dataset) {
  ScoreTable table = geo_scores(dataset);
  table.merge(outcome_scores(dataset));
  return table;
}

void write_score_table(std::ostream& out, const ScoreTable& table) {
  const auto names = table.column_names();
  out << "region_id";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  std::vector<const std::vector<double>*> cols;
  for (const auto& n : names) cols.push_back(&table.column(n));
  for (std::size_t i = 0; i < table.rows(); ++i) {
    out << table.region_ids()[i];
    for (const auto* c : cols) out << ',' << csv::format_fixed((*c)[i], 6);
    out << '\n';
  }
}

void write_score_table(const std::filesystem::path& path, const ScoreTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_score_table(out, table);
  if (!out) throw IoError("write failed for " + path.string());
}

ScoreTable read_score_table(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!csv::read_line(in, line)) throw MalformedRow(1, "missing header row");
  auto header = csv::split_line(line);
  for (auto& h : header) h = std::string(csv::trim(h));
  if (header.empty() || header[0] != "region_id") {
    throw MalformedRow(1, "first column must be region_id");
  }
  std::vector<std::string> ids;
  std::vector<std::vector<double>> cols(header.size() - 1);
  while (csv::read_line(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() != header.size()) {
      throw MalformedRow(line_no, "expected " + std::to_string(header.size()) +
                                      " fields, found " + std::to_string(f.size()));
    }
    ids.emplace_back(csv::trim(f[0]));
    for (std::size_t c = 1; c < f.size(); ++c) {
      if (csv::trim(f[c]).empty()) {
        cols[c - 1].push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      const auto v = csv::parse_double(f[c]);
      if (!v) throw MalformedRow(line_no, header[c] + " is not a number");
      cols[c - 1].push_back(*v);
    }
  }
  ScoreTable table(std::move(ids));
  for (std::size_t c = 1; c < header.size(); ++c) {
    table.add_column(header[c], std::move(cols[c - 1]));
  }
  return table;
}

ScoreTable read_score_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_score_table(in);
}

void ScoreConfig::validate() const {
  if (variables.empty()) throw InvalidWeights("score config has no variables");
  if (variables.size() != weights.size()) {
    throw LengthMismatch(std::to_string(variables.size()) + " variables, " +
                         std::to_string(weights.size()) + " weights");
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = i + 1; j < variables.size(); ++j) {
      if (variables[i] == variables[j]) {
        throw InvalidWeights("variable " + std::string(variable_name(variables[i])) +
                             " listed twice");
      }
    }
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidWeights("negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidWeights("weights sum to " + csv::format_roundtrip(total));
  }
}

std::string ScoreConfig::to_json() const {
  nlohmann::json j;
  j["variables"] = nlohmann::json::array();
  for (Variable v : variables) j["variables"].push_back(variable_name(v));
  j["weights"] = weights;
  return j.dump();
}

ScoreConfig ScoreConfig::from_json(std::string_view text) {
  ScoreConfig config;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& name : j.at("variables")) {
      const auto v = parse_variable(name.get<std::string>());
      if (!v) throw InvalidWeights("unknown variable " + name.get<std::string>());
      config.variables.push_back(*v);
    }
    config.weights = j.at("weights").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidWeights(std::string("malformed score config: ") + e.what());
  }
  config.validate();
  return config;
}

std::vector<double> score_with_config(const Dataset& dataset,
                                      const ScoreConfig& config) {
  config.validate();
  std::vector<std::vector<double>> cols;
  for (Variable v : config.variables) cols.push_back(variable_percentiles(dataset, v));
  std::vector<double> out(dataset.size());
  std::vector<double> p(cols.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) p[j] = cols[j][i];
    out[i] = exp_mean_score(p, config.weights);
  }
  return out;
}

}  // namespace georisk
