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

#ifndef GEORISK_RENDER_HPP_
#define GEORISK_RENDER_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "georisk/scoring.hpp"

namespace georisk {

struct LonLat {
  double lon = 0.0;
  double lat = 0.0;
  friend bool operator==(const LonLat&, const LonLat&) = default;
};

// Closed ring: first point equals last, at least 4 points.
using Ring = std::vector<LonLat>;
// Outer ring followed by any holes.
using Polygon = std::vector<Ring>;

struct RegionGeometry {
  std::string region_id;
  std::vector<Polygon> polygons;

  // Throws InvalidGeometry for open or short rings.
  void validate() const;
};

// Pads digit-only ids shorter than five characters with leading zeros
// ("1001" -> "01001"); everything else is returned unchanged.
std::string normalize_region_id(std::string_view id);

// Reads a GeoJSON FeatureCollection of Polygon/MultiPolygon features. The
// region id comes from `id_property`, falling back to ZCTA5CE10 and MODZCTA.
std::vector<RegionGeometry> read_geometries(std::istream& in,
                                            const std::string& id_property = "modzcta");
std::vector<RegionGeometry> load_geometries(const std::filesystem::path& path,
                                            const std::string& id_property = "modzcta");

struct Feature {
  std::string region_id;
  std::vector<Polygon> polygons;
  std::vector<double> scores;  // aligned with FeatureSet::score_columns
};

struct FeatureSet {
  std::vector<std::string> score_columns;
  std::vector<Feature> features;  // in score-table order
  std::vector<std::string> unmatched_scores;      // score rows without geometry
  std::vector<std::string> unmatched_geometries;  // geometries without scores
};

// Matches score rows to geometries on normalized region id. Mismatches on
// either side are listed, never dropped.
FeatureSet join_geometries(const ScoreTable& scores,
                           const std::vector<RegionGeometry>& geometries);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  // "#RRGGBB" (case-insensitive); throws std::invalid_argument.
  static Rgb parse(std::string_view hex);
  std::string hex() const;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct ChoroplethSpec {
  std::string score_column;
  Rgb color_low = Rgb::parse("#2C7BB6");
  Rgb color_high = Rgb::parse("#D7191C");
  Rgb missing_color = Rgb::parse("#CCCCCC");
  // Fixed so maps of different scores share one scale.
  static constexpr double kDomainLow = 1.0;
  static constexpr double kDomainHigh = 10.0;
};

// Linear RGB interpolation over [1,10]; scores outside are clamped, NaN maps
// to missing_color.
Rgb fill_color(double score, const ChoroplethSpec& spec);

// Choropleth SVG, one <path> per feature, equirectangular projection scaled
// to 1000 px wide. Output is byte-deterministic.
void render_svg(std::ostream& out, const FeatureSet& features,
                const ChoroplethSpec& spec);
std::filesystem::path render_svg(const FeatureSet& features, const ChoroplethSpec& spec,
                                 const std::filesystem::path& out);

// FeatureCollection with region_id and one property per score column.
void write_geojson(std::ostream& out, const FeatureSet& features);
std::filesystem::path write_geojson(const FeatureSet& features,
                                    const std::filesystem::path& out);

}  // namespace georisk

#endif  // GEORISK_RENDER_HPP_
