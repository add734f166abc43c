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

#include "georisk/errors.hpp"

#include <sstream>

namespace georisk {

Error::Error(std::string_view kind, const std::string& detail)
    : std::runtime_error(std::string(kind) + ": " + detail), kind_(kind) {}

MalformedRow::MalformedRow(std::size_t line, const std::string& reason)
    : Error("MalformedRow", "line " + std::to_string(line) + ": " + reason),
      line_(line) {}

DuplicateRegion::DuplicateRegion(const std::string& region_id)
    : Error("DuplicateRegion", "region " + region_id + " appears more than once"),
      region_id_(region_id) {}

namespace {

std::string describe_range(const std::string& field, double value,
                           const std::string& region_id) {
  std::ostringstream os;
  os << field << " = " << value << " is outside its valid range";
  if (!region_id.empty()) os << " (region " << region_id << ")";
  return os.str();
}

}  // namespace

RangeViolation::RangeViolation(const std::string& field, double value,
                               const std::string& region_id)
    : Error("RangeViolation", describe_range(field, value, region_id)),
      field_(field),
      value_(value) {}

}  // namespace georisk
