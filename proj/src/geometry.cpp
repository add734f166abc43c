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
#include <map>
#include <stdexcept>

#include "georisk/csv.hpp"
#include "georisk/errors.hpp"
#include "georisk/render.hpp"
#include "json.hpp"

namespace georisk {

using nlohmann::json;

void RegionGeometry::validate() const {
  for (const Polygon& polygon : polygons) {
    for (const Ring& ring : polygon) {
      if (ring.size() < 4) {
        throw InvalidGeometry("region " + region_id + " has a ring with " +
                              std::to_string(ring.size()) + " points (need >= 4)");
      }
      if (!(ring.front() == ring.back())) {
        throw InvalidGeometry("region " + region_id + " has an unclosed ring");
      }
    }
  }
}

std::string normalize_region_id(std::string_view id) {
  id = csv::trim(id);
  const bool digits = !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
  std::string out(id);
  if (digits && out.size() < 5) out.insert(0, 5 - out.size(), '0');
  return out;
}

namespace {

Ring parse_ring(const json& coords, const std::string& id) {
  Ring ring;
  for (const auto& point : coords) {
    if (!point.is_array() || point.size() < 2) {
      throw InvalidGeometry("region " + id + " has a malformed coordinate");
    }
    ring.push_back({point[0].get<double>(), point[1].get<double>()});
  }
  return ring;
}

Polygon parse_polygon(const json& coords, const std::string& id) {
  Polygon polygon;
  for (const auto& ring : coords) polygon.push_back(parse_ring(ring, id));
  return polygon;
}

std::optional<std::string> id_from(const json& properties, const std::string& key) {
  if (!properties.is_object() || !properties.contains(key)) return std::nullopt;
  const json& v = properties.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d) return std::to_string(static_cast<long long>(d));
    return csv::format_roundtrip(d);
  }
  return std::nullopt;
}

}  // namespace

std::vector<RegionGeometry> read_geometries(std::istream& in,
                                            const std::string& id_property) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidGeometry(std::string("not valid JSON: ") + e.what());
  }
  if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features")) {
    throw InvalidGeometry("expected a GeoJSON FeatureCollection");
  }

  std::vector<RegionGeometry> out;
  std::map<std::string, std::size_t> index;
  std::size_t position = 0;
  for (const auto& feature : doc.at("features")) {
    ++position;
    const json properties = feature.value("properties", json::object());
    std::optional<std::string> id;
    for (const std::string& key : {id_property, std::string("ZCTA5CE10"),
                                   std::string("MODZCTA")}) {
      if ((id = id_from(properties, key))) break;
    }
    if (!id) {
      throw InvalidGeometry("feature " + std::to_string(position) + " has no '" +
                            id_property + "' property");
    }
    const std::string region = normalize_region_id(*id);
    if (!feature.contains("geometry") || feature.at("geometry").is_null()) {
      throw InvalidGeometry("region " + region + " has no geometry");
    }
    const json& geometry = feature.at("geometry");
    const std::string type = geometry.value("type", "");
    std::vector<Polygon> polygons;
    try {
      if (type == "Polygon") {
        polygons.push_back(parse_polygon(geometry.at("coordinates"), region));
      } else if (type == "MultiPolygon") {
        for (const auto& p : geometry.at("coordinates")) {
          polygons.push_back(parse_polygon(p, region));
        }
      } else {
        throw InvalidGeometry("region " + region + " has unsupported geometry type '" +
                              type + "'");
      }
    } catch (const json::exception& e) {
      throw InvalidGeometry("region " + region + ": " + e.what());
    }

    auto [it, inserted] = index.emplace(region, out.size());
    if (inserted) {
      out.push_back({region, std::move(polygons)});
    } else {
      auto& existing = out[it->second].polygons;
      existing.insert(existing.end(), polygons.begin(), polygons.end());
    }
    out[it->second].validate();
  }
  return out;
}

std::vector<RegionGeometry> load_geometries(const std::filesystem::path& path,
                                            const std::string& id_property) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_geometries(in, id_property);
}

FeatureSet join_geometries(const ScoreTable& scores,
                           const std::vector<RegionGeometry>& geometries) {
  FeatureSet set;
  set.score_columns = scores.column_names();
  std::vector<const std::vector<double>*> cols;
  for (const auto& name : set.score_columns) cols.push_back(&scores.column(name));

  std::map<std::string, const RegionGeometry*> by_id;
  for (const auto& g : geometries) by_id.emplace(normalize_region_id(g.region_id), &g);

  std::map<std::string, bool> used;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    const std::string id = normalize_region_id(scores.region_ids()[i]);
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      set.unmatched_scores.push_back(id);
      continue;
    }
    used[id] = true;
    Feature f;
    f.region_id = id;
    f.polygons = it->second->polygons;
    for (const auto* c : cols) f.scores.push_back((*c)[i]);
    set.features.push_back(std::move(f));
  }
  for (const auto& g : geometries) {
    const std::string id = normalize_region_id(g.region_id);
    if (!used.count(id)) set.unmatched_geometries.push_back(id);
  }
  return set;
}

}  // namespace georisk
