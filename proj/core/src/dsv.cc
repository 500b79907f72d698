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

#include "hostility/dsv.h"

#include "hostility/error.h"

namespace hostility {

std::vector<DsvRecord> ParseDsv(std::string_view content, char delimiter) {
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

  std::vector<DsvRecord> records;
  DsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool record_has_content = false;
  size_t line = 1;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    bool blank = current.fields.size() == 1 && current.fields[0].empty() &&
                 !record_has_content;
    if (!blank) records.push_back(std::move(current));
    current = DsvRecord();
    record_has_content = false;
  };

  for (size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
      record_has_content = true;
    } else if (c == delimiter) {
      record_has_content = true;
      end_field();
    } else if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') {
      // Handled by the following '\n'.
    } else if (c == '\n') {
      end_record();
      ++line;
      current.line = line;
    } else {
      record_has_content = true;
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw DataError("unterminated quoted field starting in record at line " +
                    std::to_string(current.line));
  }
  if (record_has_content || !field.empty()) end_record();
  return records;
}

char DetectDelimiter(std::string_view content) {
  size_t eol = content.find('\n');
  std::string_view header = content.substr(0, eol);
  return header.find('\t') != std::string_view::npos ? '\t' : ',';
}

char ParseDelimiterName(std::string_view name) {
  if (name == "tab" || name == "\\t" || name == "\t") return '\t';
  if (name == "comma") return ',';
  if (name.size() == 1) return name[0];
  throw ConfigError("unrecognized delimiter: '" + std::string(name) + "'");
}

std::string QuoteField(std::string_view field, char delimiter) {
  bool needs_quotes = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) !=
                      std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string JoinRecord(const std::vector<std::string>& fields, char delimiter) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(delimiter);
    out += QuoteField(fields[i], delimiter);
  }
  return out;
}

}  // namespace hostility
