// Copyright 2026 The phrasefix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal RFC 4180 reader/writer: comma separated, double-quoted fields may
// contain commas, quotes ("") and newlines.

#ifndef PHRASEFIX_SRC_CSV_H_
#define PHRASEFIX_SRC_CSV_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phrasefix::csv {

using Record = std::vector<std::string>;

// Next record, or nullopt at end of input. Accepts LF and CRLF line ends.
// Throws ParseError on an unterminated quoted field.
std::optional<Record> read_record(std::istream& in);

std::string quote(std::string_view field);
void write_record(std::ostream& out, std::span<const std::string> fields);

// Parses a whole-string integer; nullopt on trailing junk or overflow.
std::optional<long long> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

}  // namespace phrasefix::csv

#endif  // PHRASEFIX_SRC_CSV_H_
