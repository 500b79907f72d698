// Copyright 2026 The Hostility Detection Authors
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

#ifndef HOSTILITY_DSV_H_
#define HOSTILITY_DSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace hostility {

// One record of a delimiter-separated file. `line` is the 1-based line on
// which the record starts (quoted fields may span lines).
struct DsvRecord {
  size_t line = 0;
  std::vector<std::string> fields;
};

// Parses RFC 4180 style content: fields may be double-quoted, quotes inside
// quoted fields are doubled, CRLF and LF both end a record. A leading UTF-8
// BOM is dropped. Blank lines are skipped.
std::vector<DsvRecord> ParseDsv(std::string_view content, char delimiter);

// Tab if the first line contains a tab, comma otherwise.
char DetectDelimiter(std::string_view content);

// Parses a user-facing delimiter spelling: "tab", "\t", "comma", ",", or
// any single character.
char ParseDelimiterName(std::string_view name);

std::string QuoteField(std::string_view field, char delimiter);
std::string JoinRecord(const std::vector<std::string>& fields, char delimiter);

}  // namespace hostility

#endif  // HOSTILITY_DSV_H_
