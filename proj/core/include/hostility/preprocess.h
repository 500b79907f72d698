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

#ifndef HOSTILITY_PREPROCESS_H_
#define HOSTILITY_PREPROCESS_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hostility/corpus.h"
#include "hostility/resources.h"
#include "hostility/text_scan.h"

namespace hostility {

struct CleanDoc {
  std::vector<std::string> tokens;
  EntityCounts pre_strip;

  // Tokens joined by single spaces.
  std::string Text() const;
};

// Replaces whole-token contractions (case-insensitive, ' and ’ treated
// alike) with their expansions. Non-matching text is copied unchanged.
std::string ExpandContractions(std::string_view text,
                               const ContractionTable& table);

// Removes URLs, mentions, whole hashtags, emoji, zero-width and other
// format characters, punctuation and symbols, and standalone numbers
// (ASCII digits; Devanagari digits too for Hindi). Whitespace runs collapse
// to one space and the result is trimmed.
std::string StripNoise(std::string_view text, Language language,
                       const EmojiTable& emoji);

// Deletes every code point in the emoji table. Whitespace is untouched.
std::string RemoveEmojis(std::string_view text, const EmojiTable& emoji);

// Splits on Unicode whitespace. English tokens are lowercased.
std::vector<std::string> Tokenize(std::string_view text, Language language);

std::vector<std::string> RemoveStopwords(std::vector<std::string> tokens,
                                         const StopwordList& stopwords);

// Resource paths; an empty path selects the bundled default.
struct PreprocessPaths {
  std::filesystem::path contractions;
  std::filesystem::path stopwords;
  std::filesystem::path emoji_ranges;
};

// The composed cleaning pipeline for one language:
// contractions (English) -> noise strip -> emoji removal -> tokenize ->
// stopwords. Entity counts are taken from the raw text first.
class Preprocessor {
 public:
  // Throws DataError if a configured resource file is missing or malformed.
  static Preprocessor Create(Language language,
                             const PreprocessPaths& paths = {});

  Preprocessor(Language language, ContractionTable contractions,
               StopwordList stopwords, EmojiTable emoji);

  CleanDoc Clean(std::string_view raw_text) const;
  CleanDoc Clean(const LabeledPost& post) const { return Clean(post.text); }

  Language language() const { return language_; }
  const EmojiTable& emoji() const { return emoji_; }
  const StopwordList& stopwords() const { return stopwords_; }
  const ContractionTable& contractions() const { return contractions_; }

 private:
  Language language_;
  ContractionTable contractions_;
  StopwordList stopwords_;
  EmojiTable emoji_;
};

}  // namespace hostility

#endif  // HOSTILITY_PREPROCESS_H_
