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

#ifndef HOSTILITY_RESOURCES_H_
#define HOSTILITY_RESOURCES_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hostility/corpus.h"

namespace hostility {

// Contents of a data file compiled into the library (see core/data/).
// Throws std::out_of_range for unknown names.
std::string_view BundledFile(std::string_view name);

// Text of a resource: the file at `path` if non-empty, else the bundled
// default named `bundled_name`.
std::string ResourceText(const std::filesystem::path& path,
                         std::string_view bundled_name);

// Code point ranges treated as emoji. Components (ZWJ, variation selectors,
// skin-tone modifiers, keycap, tag characters) are part of the table so they
// get removed, but they never start an emoji on their own when counting.
class EmojiTable {
 public:
  // One "START-END" or "START" hex range per line; '#' starts a comment.
  static EmojiTable Parse(std::string_view content, std::string_view source);
  static EmojiTable Load(const std::filesystem::path& path);
  static const EmojiTable& Default();

  bool Contains(char32_t cp) const;
  static bool IsComponent(char32_t cp);
  static bool IsRegionalIndicator(char32_t cp) {
    return cp >= 0x1F1E6 && cp <= 0x1F1FF;
  }

  const std::vector<std::pair<char32_t, char32_t>>& ranges() const {
    return ranges_;
  }

 private:
  std::vector<std::pair<char32_t, char32_t>> ranges_;  // sorted, disjoint
};

// Lowercase contraction -> expansion, keys use ASCII apostrophes.
class ContractionTable {
 public:
  // "key<TAB>expansion" per line; '#' comment lines and blank lines skipped.
  static ContractionTable Parse(std::string_view content,
                                std::string_view source);
  static ContractionTable Load(const std::filesystem::path& path);
  static const ContractionTable& Default();

  const std::string* Find(const std::string& normalized_key) const;
  size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::string> table_;
};

class StopwordList {
 public:
  // One token per line; '#' comment lines and blank lines skipped.
  static StopwordList Parse(std::string_view content);
  // Throws DataError if the file is missing.
  static StopwordList Load(const std::filesystem::path& path);
  static const StopwordList& Default(Language language);

  bool contains(const std::string& token) const {
    return words_.count(token) > 0;
  }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

}  // namespace hostility

#endif  // HOSTILITY_RESOURCES_H_
