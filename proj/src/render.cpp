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
#include <fstream>
#include <limits>
#include <stdexcept>

#include "georisk/csv.hpp"
#include "georisk/errors.hpp"
#include "georisk/render.hpp"
#include "json.hpp"

namespace georisk {

namespace {

constexpr double kSvgWidth = 1000.0;
constexpr double kPi = 3.14159265358979323846;

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::size_t column_index(const FeatureSet& features, const std::string& column) {
  const auto& cols = features.score_columns;
  const auto it = std::find(cols.begin(), cols.end(), column);
  if (it == cols.end()) {
    std::string available;
    for (const auto& c : cols) available += (available.empty() ? "" : ", ") + c;
    throw MissingColumn("no score column '" + column + "'; available: " + available);
  }
  return static_cast<std::size_t>(it - cols.begin());
}

// Equirectangular projection of the features' bounding box onto a
// kSvgWidth-wide canvas, north up.
struct Projection {
  double min_lon = 0.0, max_lat = 0.0;
  double x_scale = 1.0, y_scale = 1.0;
  double height = 1.0;

  explicit Projection(const FeatureSet& set) {
    double min_lat = std::numeric_limits<double>::infinity();
    double max_lon = -std::numeric_limits<double>::infinity();
    min_lon = std::numeric_limits<double>::infinity();
    max_lat = -std::numeric_limits<double>::infinity();
    for (const auto& f : set.features) {
      for (const auto& polygon : f.polygons) {
        for (const auto& ring : polygon) {
          for (const auto& p : ring) {
            min_lon = std::min(min_lon, p.lon);
            max_lon = std::max(max_lon, p.lon);
            min_lat = std::min(min_lat, p.lat);
            max_lat = std::max(max_lat, p.lat);
          }
        }
      }
    }
    if (!std::isfinite(min_lon)) {
      min_lon = max_lon = min_lat = max_lat = 0.0;
    }
    const double k = std::cos((min_lat + max_lat) / 2.0 * kPi / 180.0);
    const double span_x = (max_lon - min_lon) * k;
    const double span_y = max_lat - min_lat;
    const double px_per_unit = span_x > 0.0 ? kSvgWidth / span_x : 1.0;
    x_scale = k * px_per_unit;
    y_scale = px_per_unit;
    height = std::max(1.0, std::ceil(span_y * px_per_unit));
  }

  double x(const LonLat& p) const { return (p.lon - min_lon) * x_scale; }
  double y(const LonLat& p) const { return (max_lat - p.lat) * y_scale; }
};

std::string path_data(const Feature& f, const Projection& proj) {
  std::string d;
  for (const auto& polygon : f.polygons) {
    for (const auto& ring : polygon) {
      // The closing point repeats the first; 'Z' closes the subpath.
      for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        d += (i == 0 ? (d.empty() ? "M" : " M") : " L");
        d += csv::format_fixed(proj.x(ring[i]), 2) + "," +
             csv::format_fixed(proj.y(ring[i]), 2);
      }
      d += " Z";
    }
  }
  return d;
}

void ensure_parent(const std::filesystem::path& out) {
  if (out.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out.parent_path(), ec);
  }
}

}  // namespace

Rgb Rgb::parse(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') {
    throw std::invalid_argument("colour must look like #RRGGBB: " + std::string(hex));
  }
  std::uint8_t channels[3];
  for (int c = 0; c < 3; ++c) {
    const int hi = hex_digit(hex[1 + 2 * c]);
    const int lo = hex_digit(hex[2 + 2 * c]);
    if (hi < 0 || lo < 0) {
      throw std::invalid_argument("colour must look like #RRGGBB: " + std::string(hex));
    }
    channels[c] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return {channels[0], channels[1], channels[2]};
}

std::string Rgb::hex() const {
  static const char* kHex = "0123456789ABCDEF";
  std::string out = "#";
  for (std::uint8_t c : {r, g, b}) {
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 0xF]);
  }
  return out;
}

Rgb fill_color(double score, const ChoroplethSpec& spec) {
  if (std::isnan(score)) return spec.missing_color;
  const double t = std::clamp(
      (score - ChoroplethSpec::kDomainLow) /
          (ChoroplethSpec::kDomainHigh - ChoroplethSpec::kDomainLow),
      0.0, 1.0);
  const auto lerp = [t](std::uint8_t lo, std::uint8_t hi) {
    const double v = lo + (static_cast<double>(hi) - lo) * t;
    return static_cast<std::uint8_t>(std::lround(v));
  };
  return {lerp(spec.color_low.r, spec.color_high.r),
          lerp(spec.color_low.g, spec.color_high.g),
          lerp(spec.color_low.b, spec.color_high.b)};
}

void render_svg(std::ostream& out, const FeatureSet& features,
                const ChoroplethSpec& spec) {
  if (features.features.empty()) {
    throw InvalidGeometry("no regions with both a score and a geometry to render");
  }
  const std::size_t col = column_index(features, spec.score_column);
  const Projection proj(features);
  const std::string height = csv::format_fixed(proj.height, 0);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"" << height
      << "\" viewBox=\"0 0 1000 " << height << "\">\n"
      << "  <title>" << xml_escape(spec.score_column) << "</title>\n"
      << "  <defs>\n"
      << "    <linearGradient id=\"ramp\" x1=\"0\" x2=\"1\" y1=\"0\" y2=\"0\">\n"
      << "      <stop offset=\"0\" stop-color=\"" << spec.color_low.hex() << "\"/>\n"
      << "      <stop offset=\"1\" stop-color=\"" << spec.color_high.hex() << "\"/>\n"
      << "    </linearGradient>\n"
      << "  </defs>\n"
      << "  <g id=\"regions\" stroke=\"#FFFFFF\" stroke-width=\"0.5\" "
         "fill-rule=\"evenodd\">\n";
  for (const Feature& f : features.features) {
    const double score = f.scores[col];
    const std::string label =
        std::isnan(score) ? "missing" : csv::format_fixed(score, 6);
    out << "    <path id=\"r" << xml_escape(f.region_id) << "\" fill=\""
        << fill_color(score, spec).hex() << "\" d=\"" << path_data(f, proj)
        << "\"><title>" << xml_escape(f.region_id) << ": " << label
        << "</title></path>\n";
  }
  out << "  </g>\n"
      << "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "    <rect x=\"10\" y=\"10\" width=\"200\" height=\"12\" fill=\"url(#ramp)\"/>\n"
      << "    <text x=\"10\" y=\"36\">1</text>\n"
      << "    <text x=\"210\" y=\"36\" text-anchor=\"end\">10</text>\n"
      << "  </g>\n"
      << "</svg>\n";
}

std::filesystem::path render_svg(const FeatureSet& features, const ChoroplethSpec& spec,
                                 const std::filesystem::path& out) {
  ensure_parent(out);
  std::ofstream file(out, std::ios::binary);
  if (!file) throw IoError("cannot write " + out.string());
  render_svg(file, features, spec);
  if (!file) throw IoError("write failed for " + out.string());
  return out;
}

void write_geojson(std::ostream& out, const FeatureSet& features) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = ordered_json::array();
  for (const Feature& f : features.features) {
    ordered_json props;
    props["region_id"] = f.region_id;
    for (std::size_t c = 0; c < features.score_columns.size(); ++c) {
      const double v = f.scores[c];
      props[features.score_columns[c]] =
          std::isnan(v) ? ordered_json(nullptr) : ordered_json(v);
    }
    ordered_json polygons = ordered_json::array();
    for (const auto& polygon : f.polygons) {
      ordered_json rings = ordered_json::array();
      for (const auto& ring : polygon) {
        ordered_json points = ordered_json::array();
        for (const auto& p : ring) points.push_back({p.lon, p.lat});
        rings.push_back(std::move(points));
      }
      polygons.push_back(std::move(rings));
    }
    ordered_json geometry;
    if (polygons.size() == 1) {
      geometry["type"] = "Polygon";
      geometry["coordinates"] = polygons[0];
    } else {
      geometry["type"] = "MultiPolygon";
      geometry["coordinates"] = std::move(polygons);
    }
    ordered_json feature;
    feature["type"] = "Feature";
    feature["properties"] = std::move(props);
    feature["geometry"] = std::move(geometry);
    doc["features"].push_back(std::move(feature));
  }
  out << doc.dump() << '\n';
}

std::filesystem::path write_geojson(const FeatureSet& features,
                                    const std::filesystem::path& out) {
  ensure_parent(out);
  std::ofstream file(out, std::ios::binary);
  if (!file) throw IoError("cannot write " + out.string());
  write_geojson(file, features);
  if (!file) throw IoError("write failed for " + out.string());
  return out;
}

}  // namespace georisk
