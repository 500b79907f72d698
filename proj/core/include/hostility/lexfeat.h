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

#ifndef HOSTILITY_LEXFEAT_H_
#define HOSTILITY_LEXFEAT_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hostility/corpus.h"
#include "hostility/preprocess.h"
#include "hostility/resources.h"
#include "hostility/text_scan.h"

namespace hostility {

// Profanity lexicon used by the abusive-word counter.
class Lexicon {
 public:
  // One term per line, '#'-prefixed lines ignored, duplicates collapsed.
  // Throws DataError on an empty lexicon or a term containing whitespace.
  static Lexicon Parse(std::string_view content, std::string source);
  static Lexicon Load(const std::filesystem::path& path);
  // Bundled Hindi lexicon (84 terms).
  static const Lexicon& Default();

  bool contains(const std::string& token) const {
    return terms_.count(token) > 0;
  }
  size_t size() const { return terms_.size(); }
  // Sorted copy of the terms.
  std::vector<std::string> SortedTerms() const;
  // Fingerprint of the term set, independent of file order and comments.
  std::string Checksum() const;
  const std::string& source() const { return source_; }

 private:
  std::unordered_set<std::string> terms_;
  std::string source_;
};

// Counts lexicon hits with multiplicity. With `substring_match` every
// occurrence of a term inside a token counts; otherwise tokens must equal a
// term exactly.
int CountAbusive(std::span<const std::string> tokens, const Lexicon& lexicon,
                 bool substring_match = false);

// Mention/URL/hashtag/emoji counts of raw (uncleaned) text.
EntityCounts CountEntities(std::string_view raw_text,
                           const EmojiTable& emoji = EmojiTable::Default());

enum class ProfileLevel { kCoarse, kFine };

struct ClassProfile {
  std::string label;
  size_t posts = 0;
  double mentions = 0;
  double urls = 0;
  double hashtags = 0;
  double emojis = 0;
};

// Mean entity counts per class. Coarse level has one row per coarse label
// present; fine level has non-hostile plus each fine label present. Rows
// follow enum order.
std::vector<ClassProfile> ProfileCounts(
    const Corpus& corpus, ProfileLevel level = ProfileLevel::kCoarse,
    const EmojiTable& emoji = EmojiTable::Default());

inline constexpr int kMetaDim = 6;

// Vector order: abusive (m1), emojis (m3), hashtags, mentions, urls (m2),
// char_length.
inline constexpr std::array<std::string_view, kMetaDim> kMetaFieldNames = {
    "abusive", "emojis", "hashtags", "mentions", "urls", "char_length"};

struct MetaFeatures {
  int abusive = 0;
  EntityCounts entity;
  int char_length = 0;   // code points of the cleaned text
  int token_length = 0;  // reported, not vectorized

  std::array<double, kMetaDim> ToArray() const;
  friend bool operator==(const MetaFeatures&, const MetaFeatures&) = default;
};

MetaFeatures MetaVector(const CleanDoc& doc, const Lexicon& lexicon,
                        bool substring_match = false);

// Which metadata families feed the model. Disabled families are zeroed in
// the scaled block; the block length never changes.
struct MetaFamilies {
  bool m1 = true;      // abusive count
  bool m2 = true;      // mention/URL/hashtag counts
  bool m3 = true;      // emoji count
  bool length = true;  // character length

  bool any() const { return m1 || m2 || m3 || length; }
  std::string Tag() const;  // e.g. "m1+m3", "none"
  friend bool operator==(const MetaFamilies&, const MetaFamilies&) = default;
};

// Per-feature min-max scaling fitted on the training split. Constant
// features map to 0.
class MetaScaler {
 public:
  MetaScaler();
  static MetaScaler Fit(std::span<const MetaFeatures> train);

  std::array<double, kMetaDim> Apply(const MetaFeatures& features,
                                     const MetaFamilies& families) const;

  const std::array<double, kMetaDim>& min() const { return min_; }
  const std::array<double, kMetaDim>& max() const { return max_; }
  static MetaScaler FromBounds(const std::array<double, kMetaDim>& min,
                               const std::array<double, kMetaDim>& max);

 private:
  std::array<double, kMetaDim> min_;
  std::array<double, kMetaDim> max_;
};

}  // namespace hostility

#endif  // HOSTILITY_LEXFEAT_H_
