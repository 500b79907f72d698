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

#include "hostility/resources.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "hostility/error.h"
#include "hostility/hash.h"
#include "strings.h"

namespace hostility {
namespace detail {
extern const std::pair<std::string_view, std::string_view> kBundledFiles[];
extern const int kBundledFileCount;
}  // namespace detail

using internal::Lines;
using internal::Trim;

std::string_view BundledFile(std::string_view name) {
  for (int i = 0; i < detail::kBundledFileCount; ++i) {
    if (detail::kBundledFiles[i].first == name) {
      return detail::kBundledFiles[i].second;
    }
  }
  throw std::out_of_range("no bundled resource named " + std::string(name));
}

std::string ResourceText(const std::filesystem::path& path,
                         std::string_view bundled_name) {
  if (path.empty()) return std::string(BundledFile(bundled_name));
  return ReadFile(path);
}

namespace {

char32_t ParseHexCodePoint(std::string_view s, const std::string& where) {
  s = Trim(s);
  if (s.size() > 2 && (s.substr(0, 2) == "U+" || s.substr(0, 2) == "u+" ||
                       s.substr(0, 2) == "0x")) {
    s.remove_prefix(2);
  }
  unsigned long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() ||
      value > 0x10FFFF) {
    throw DataError(where + ": bad code point '" + std::string(s) + "'");
  }
  return static_cast<char32_t>(value);
}

}  // namespace

EmojiTable EmojiTable::Parse(std::string_view content,
                             std::string_view source) {
  EmojiTable table;
  std::vector<std::string_view> lines = Lines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(i + 1);
    size_t dash = line.find('-');
    char32_t lo, hi;
    if (dash == std::string_view::npos) {
      lo = hi = ParseHexCodePoint(line, where);
    } else {
      lo = ParseHexCodePoint(line.substr(0, dash), where);
      hi = ParseHexCodePoint(line.substr(dash + 1), where);
    }
    if (hi < lo) throw DataError(where + ": range end before start");
    table.ranges_.emplace_back(lo, hi);
  }
  if (table.ranges_.empty()) {
    throw DataError(std::string(source) + ": emoji table has no ranges");
  }
  std::sort(table.ranges_.begin(), table.ranges_.end());
  std::vector<std::pair<char32_t, char32_t>> merged;
  for (const auto& r : table.ranges_) {
    if (!merged.empty() && r.first <= merged.back().second + 1) {
      merged.back().second = std::max(merged.back().second, r.second);
    } else {
      merged.push_back(r);
    }
  }
  table.ranges_ = std::move(merged);
  return table;
}

EmojiTable EmojiTable::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

const EmojiTable& EmojiTable::Default() {
  static const EmojiTable table =
      Parse(BundledFile("emoji_ranges.txt"), "emoji_ranges.txt");
  return table;
}

bool EmojiTable::Contains(char32_t cp) const {
  auto it = std::upper_bound(
      ranges_.begin(), ranges_.end(), cp,
      [](char32_t v, const std::pair<char32_t, char32_t>& r) {
        return v < r.first;
      });
  if (it == ranges_.begin()) return false;
  --it;
  return cp <= it->second;
}

bool EmojiTable::IsComponent(char32_t cp) {
  return cp == 0x200D || (cp >= 0xFE00 && cp <= 0xFE0F) || cp == 0x20E3 ||
         (cp >= 0x1F3FB && cp <= 0x1F3FF) || (cp >= 0xE0020 && cp <= 0xE007F);
}

ContractionTable ContractionTable::Parse(std::string_view content,
                                         std::string_view source) {
  ContractionTable table;
  std::vector<std::string_view> lines = Lines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError(std::string(source) + ":" + std::to_string(i + 1) +
                      ": expected key<TAB>expansion");
    }
    std::string key = internal::AsciiLower(Trim(line.substr(0, tab)));
    // Normalize typographic apostrophes in keys too.
    std::string normalized;
    for (size_t k = 0; k < key.size(); ++k) {
      if (key.compare(k, 3, "\xE2\x80\x99") == 0 ||
          key.compare(k, 3, "\xE2\x80\x98") == 0) {
        normalized.push_back('\'');
        k += 2;
      } else {
        normalized.push_back(key[k]);
      }
    }
    table.table_[normalized] = std::string(Trim(line.substr(tab + 1)));
  }
  return table;
}

ContractionTable ContractionTable::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

const ContractionTable& ContractionTable::Default() {
  static const ContractionTable table =
      Parse(BundledFile("contractions_en.tsv"), "contractions_en.tsv");
  return table;
}

const std::string* ContractionTable::Find(
    const std::string& normalized_key) const {
  auto it = table_.find(normalized_key);
  return it == table_.end() ? nullptr : &it->second;
}

StopwordList StopwordList::Parse(std::string_view content) {
  StopwordList list;
  for (std::string_view line : Lines(content)) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    list.words_.emplace(line);
  }
  return list;
}

StopwordList StopwordList::Load(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw DataError("stopword list not found: " + path.string());
  }
  return Parse(ReadFile(path));
}

const StopwordList& StopwordList::Default(Language language) {
  static const StopwordList hindi = Parse(BundledFile("stopwords_hi.txt"));
  static const StopwordList english = Parse(BundledFile("stopwords_en.txt"));
  return language == Language::kHindi ? hindi : english;
}

}  // namespace hostility
