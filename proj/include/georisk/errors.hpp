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

#ifndef GEORISK_ERRORS_HPP_
#define GEORISK_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace georisk {

// Base class for every user- or data-level failure. The CLI maps these to
// exit code 1; anything else escaping a command is an internal error.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& detail);

  // Short machine-readable name such as "DuplicateRegion".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define GEORISK_DECLARE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& detail) : Error(#Name, detail) {} \
  }

// ingest
class MalformedRow : public Error {
 public:
  MalformedRow(std::size_t line, const std::string& reason);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateRegion : public Error {
 public:
  explicit DuplicateRegion(const std::string& region_id);
  const std::string& region_id() const noexcept { return region_id_; }

 private:
  std::string region_id_;
};

class RangeViolation : public Error {
 public:
  RangeViolation(const std::string& field, double value,
                 const std::string& region_id = {});
  const std::string& field() const noexcept { return field_; }
  double value() const noexcept { return value_; }

 private:
  std::string field_;
  double value_;
};

GEORISK_DECLARE_ERROR(SchemaMismatch);
GEORISK_DECLARE_ERROR(NetworkError);
GEORISK_DECLARE_ERROR(SourceSchemaChanged);
GEORISK_DECLARE_ERROR(IoError);

// scoring
GEORISK_DECLARE_ERROR(TooFewValues);
GEORISK_DECLARE_ERROR(OutOfRange);
GEORISK_DECLARE_ERROR(InvalidWeights);
GEORISK_DECLARE_ERROR(LengthMismatch);
GEORISK_DECLARE_ERROR(MissingColumn);

// optimize
GEORISK_DECLARE_ERROR(InvalidStep);
GEORISK_DECLARE_ERROR(InvalidStart);
GEORISK_DECLARE_ERROR(InvalidHyperparameter);
GEORISK_DECLARE_ERROR(NonFiniteGradient);
GEORISK_DECLARE_ERROR(RankDeficient);
GEORISK_DECLARE_ERROR(TooFewRegions);

// render
GEORISK_DECLARE_ERROR(InvalidGeometry);

#undef GEORISK_DECLARE_ERROR

}  // namespace georisk

#endif  // GEORISK_ERRORS_HPP_
