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

#include "georisk/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "georisk/csv.hpp"
#include "georisk/errors.hpp"

namespace georisk {

bool WeightVector::on_simplex(double tol) const {
  for (double w : {alpha, beta, gamma}) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) return false;
  }
  return std::abs(alpha + beta + gamma - 1.0) <= tol;
}

bool WeightVector::in_open_simplex() const {
  return on_simplex() && alpha > 0.0 && beta > 0.0 && gamma > 0.0;
}

void WeightVector::validate() const {
  if (!on_simplex()) {
    throw InvalidWeights("(" + to_string(6) +
                         ") is not on the simplex (weights in [0,1], sum 1)");
  }
}

std::string WeightVector::to_string(int decimals) const {
  return "alpha=" + csv::format_fixed(alpha, decimals) +
         " beta=" + csv::format_fixed(beta, decimals) +
         " gamma=" + csv::format_fixed(gamma, decimals);
}

const std::vector<std::string>& canonical_columns() {
  static const std::vector<std::string> kColumns = {
      "region_id", "vacc_rate", "pop_density", "median_income",
      "positive_rate", "death_rate"};
  return kColumns;
}

const std::vector<std::string>& outcome_score_columns() {
  static const std::vector<std::string> kColumns = {"positive_score",
                                                    "death_score"};
  return kColumns;
}

bool Dataset::has_missing_income() const {
  return std::any_of(records.begin(), records.end(),
                     [](const RegionRecord& r) { return !r.median_income; });
}

bool Dataset::has_outcome_scores() const {
  return !records.empty() &&
         std::all_of(records.begin(), records.end(), [](const RegionRecord& r) {
           return r.positive_score && r.death_score;
         });
}

namespace {

std::string_view strip_leading_zeros(std::string_view id) {
  while (id.size() > 1 && id.front() == '0') id.remove_prefix(1);
  return id;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

bool region_id_less(const std::string& a, const std::string& b) {
  const std::string_view na = strip_leading_zeros(a);
  const std::string_view nb = strip_leading_zeros(b);
  if (na.size() != nb.size()) return na.size() < nb.size();
  if (na != nb) return na < nb;
  return a < b;
}

void canonicalize(Dataset& dataset) {
  std::stable_sort(dataset.records.begin(), dataset.records.end(),
                   [](const RegionRecord& x, const RegionRecord& y) {
                     return region_id_less(x.region_id, y.region_id);
                   });
  for (std::size_t i = 1; i < dataset.records.size(); ++i) {
    if (dataset.records[i].region_id == dataset.records[i - 1].region_id) {
      throw DuplicateRegion(dataset.records[i].region_id);
    }
  }
}

void validate_record(const RegionRecord& r) {
  if (r.region_id.empty()) throw RangeViolation("region_id", 0.0);
  const auto check = [&](const char* field, double v, double lo, double hi) {
    if (!std::isfinite(v) || v < lo || v > hi) {
      throw RangeViolation(field, v, r.region_id);
    }
  };
  const double inf = std::numeric_limits<double>::infinity();
  check("vacc_rate", r.vacc_rate, 0.0, 1.0);
  check("pop_density", r.pop_density, 0.0, inf);
  if (r.median_income) {
    check("median_income", *r.median_income, 0.0, inf);
    if (*r.median_income <= 0.0) {
      throw RangeViolation("median_income", *r.median_income, r.region_id);
    }
  }
  check("positive_rate", r.positive_rate, 0.0, 1.0);
  check("death_rate", r.death_rate, 0.0, inf);
  if (r.positive_score) check("positive_score", *r.positive_score, 1.0, 10.0);
  if (r.death_score) check("death_score", *r.death_score, 1.0, 10.0);
}

Dataset read_dataset(std::istream& in, const std::vector<std::string>& schema) {
  Dataset dataset;
  std::string line;
  std::size_t line_no = 0;

  // Skip a UTF-8 byte order mark and blank leading lines.
  bool have_header = false;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!csv::trim(line).empty()) {
      have_header = true;
      break;
    }
  }
  if (!have_header) {
    if (line_no == 0) return dataset;
    throw MalformedRow(line_no, "missing header row");
  }

  std::vector<std::string> header = csv::split_line(line);
  for (auto& h : header) h = std::string(csv::trim(h));
  const std::size_t base = schema.size();
  const bool extended =
      header.size() == base + outcome_score_columns().size() &&
      std::equal(outcome_score_columns().begin(), outcome_score_columns().end(),
                 header.begin() + static_cast<std::ptrdiff_t>(base));
  if (!(header.size() == base || extended) ||
      !std::equal(schema.begin(), schema.end(), header.begin())) {
    std::string expected;
    for (const auto& c : schema) expected += (expected.empty() ? "" : ",") + c;
    throw MalformedRow(line_no, "header does not match expected columns '" +
                                    expected + "'");
  }
  if (schema != canonical_columns()) {
    throw MalformedRow(line_no, "unsupported schema; only the canonical columns "
                                "can be mapped onto region records");
  }

  std::unordered_set<std::string> seen;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const std::vector<std::string> f = csv::split_line(line);
    if (f.size() != header.size()) {
      throw MalformedRow(line_no, "expected " + std::to_string(header.size()) +
                                      " fields, found " + std::to_string(f.size()));
    }
    RegionRecord r;
    r.region_id = std::string(csv::trim(f[0]));
    if (!all_digits(r.region_id)) {
      throw MalformedRow(line_no, "region_id '" + r.region_id +
                                      "' must be a nonempty string of digits");
    }
    const auto number = [&](std::size_t col) {
      const auto v = csv::parse_double(f[col]);
      if (!v) {
        throw MalformedRow(line_no, header[col] + " '" + f[col] +
                                        "' is missing or not a finite number");
      }
      return *v;
    };
    r.vacc_rate = number(1);
    r.pop_density = number(2);
    if (!csv::trim(f[3]).empty()) r.median_income = number(3);
    r.positive_rate = number(4);
    r.death_rate = number(5);
    if (extended) {
      if (!csv::trim(f[6]).empty()) r.positive_score = number(6);
      if (!csv::trim(f[7]).empty()) r.death_score = number(7);
    }
    validate_record(r);
    if (!seen.insert(r.region_id).second) throw DuplicateRegion(r.region_id);
    dataset.records.push_back(std::move(r));
  }
  canonicalize(dataset);
  return dataset;
}

Dataset load_dataset(const std::filesystem::path& path,
                     const std::vector<std::string>& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Dataset dataset = read_dataset(in, schema);
  dataset.provenance = "loaded from " + path.string();
  return dataset;
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  const bool extended = std::any_of(
      dataset.records.begin(), dataset.records.end(),
      [](const RegionRecord& r) { return r.positive_score || r.death_score; });
  std::vector<std::string> header = canonical_columns();
  if (extended) {
    header.insert(header.end(), outcome_score_columns().begin(),
                  outcome_score_columns().end());
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  const auto opt = [](const std::optional<double>& v) {
    return v ? csv::format_roundtrip(*v) : std::string();
  };
  for (const RegionRecord& r : dataset.records) {
    out << r.region_id << ',' << csv::format_roundtrip(r.vacc_rate) << ','
        << csv::format_roundtrip(r.pop_density) << ',' << opt(r.median_income)
        << ',' << csv::format_roundtrip(r.positive_rate) << ','
        << csv::format_roundtrip(r.death_rate);
    if (extended) out << ',' << opt(r.positive_score) << ',' << opt(r.death_score);
    out << '\n';
  }
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_dataset(out, dataset);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace georisk
