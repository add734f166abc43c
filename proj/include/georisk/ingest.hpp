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

#ifndef GEORISK_INGEST_HPP_
#define GEORISK_INGEST_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "georisk/weights.hpp"

namespace georisk {

// One geographic region's raw covariates and outcomes.
struct RegionRecord {
  std::string region_id;             // ZCTA code, digits only
  double vacc_rate = 0.0;            // fully vaccinated share, [0,1]
  double pop_density = 0.0;          // persons per square mile
  std::optional<double> median_income;  // USD/year; may be missing
  double positive_rate = 0.0;        // cumulative test positivity, [0,1]
  double death_rate = 0.0;           // deaths per 100,000

  // Outcome scores already expressed in score space [1,10]. Only synthetic
  // datasets carry these; when every record has them, outcome scoring uses
  // them instead of ranking the raw rates.
  std::optional<double> positive_score;
  std::optional<double> death_score;

  friend bool operator==(const RegionRecord&, const RegionRecord&) = default;
};

struct Dataset {
  std::vector<RegionRecord> records;  // canonical order
  std::string provenance;

  std::size_t size() const { return records.size(); }
  bool has_missing_income() const;
  bool has_outcome_scores() const;

  // Equality covers the records only; provenance is a free-text note.
  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.records == b.records;
  }
};

// Exact header of the canonical CSV.
const std::vector<std::string>& canonical_columns();
// Optional trailing columns carrying score-space outcomes.
const std::vector<std::string>& outcome_score_columns();

// Numeric ordering of digit-only region ids ("00123" sorts with 123; equal
// numeric values fall back to string order).
bool region_id_less(const std::string& a, const std::string& b);

// Sorts into canonical order and rejects duplicate ids.
void canonicalize(Dataset& dataset);

// Throws RangeViolation / MalformedRow for a record that breaks the schema.
void validate_record(const RegionRecord& record);

// Parses CSV text. The header must equal `schema`, optionally followed by the
// outcome score columns. An input with no bytes at all yields an empty
// dataset; callers that score it then fail with TooFewValues.
Dataset read_dataset(std::istream& in,
                     const std::vector<std::string>& schema = canonical_columns());

Dataset load_dataset(const std::filesystem::path& path,
                     const std::vector<std::string>& schema = canonical_columns());

void write_dataset(std::ostream& out, const Dataset& dataset);
void write_dataset(const std::filesystem::path& path, const Dataset& dataset);

// Synthetic data whose outcome scores are the `true_weights` mixture of the
// three predictor scores plus N(0, noise_sd) noise, clamped to [1,10].
// Deterministic in `seed`.
Dataset generate_synthetic(std::size_t n_regions, const WeightVector& true_weights,
                           double noise_sd, std::uint64_t seed);

enum class PublicSource { nyc };

std::optional<PublicSource> parse_public_source(const std::string& name);

struct FetchOptions {
  // Replaces the source's default base URL; used to point at mirrors.
  std::string base_url;
  long timeout_seconds = 60;
};

// Downloads the per-ZCTA files of `source` verbatim into out_dir and writes a
// manifest.json (url, timestamp, sha256). On failure nothing is left behind.
std::vector<std::filesystem::path> fetch_public_data(
    PublicSource source, const std::filesystem::path& out_dir,
    const FetchOptions& options = {});

}  // namespace georisk

#endif  // GEORISK_INGEST_HPP_
