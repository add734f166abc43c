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

#ifndef GEORISK_CSV_HPP_
#define GEORISK_CSV_HPP_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace georisk::csv {

// Splits one record. Double-quoted fields may contain commas; "" inside a
// quoted field is a literal quote. A trailing '\r' is stripped.
std::vector<std::string> split_line(std::string_view line);

// Reads the next line, returning false at end of input.
bool read_line(std::istream& in, std::string& line);

// Strict decimal parse: the whole (trimmed) field must be consumed and the
// result finite.
std::optional<double> parse_double(std::string_view field);

// Shortest representation that parses back to the identical double.
std::string format_roundtrip(double value);

// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

std::string_view trim(std::string_view s);

}  // namespace georisk::csv

#endif  // GEORISK_CSV_HPP_
