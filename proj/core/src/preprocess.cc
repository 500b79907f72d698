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

#include "hostility/preprocess.h"

#include "hostility/lexfeat.h"
#include "hostility/utf8.h"
#include "strings.h"

namespace hostility {
namespace {

bool IsAsciiAlpha(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsContractionChar(char32_t c) {
  return IsAsciiAlpha(c) || chars::IsApostrophe(c);
}

std::string NormalizeContractionKey(std::u32string_view span) {
  std::string key;
  key.reserve(span.size());
  for (char32_t c : span) {
    key.push_back(chars::IsApostrophe(c) ? '\''
                                         : static_cast<char>(chars::ToLower(c)));
  }
  return key;
}

bool IsNumericToken(std::u32string_view token, Language language) {
  if (token.empty()) return false;
  for (char32_t c : token) {
    bool digit = chars::IsAsciiDigit(c) ||
                 (language == Language::kHindi && chars::IsDevanagariDigit(c));
    if (!digit) return false;
  }
  return true;
}

}  // namespace

std::string CleanDoc::Text() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string ExpandContractions(std::string_view text,
                               const ContractionTable& table) {
  const std::u32string cps = utf8::DecodeOrThrow(text, "contraction input");
  const size_t n = cps.size();
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < n) {
    char32_t prev = i == 0 ? U' ' : cps[i - 1];
    bool starts_token = !chars::IsWordChar(prev) &&
                        !chars::IsApostrophe(prev) && prev != '@' &&
                        prev != '#';
    if (!starts_token || !IsContractionChar(cps[i])) {
      utf8::Append(cps[i], &out);
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && IsContractionChar(cps[j])) ++j;
    std::u32string_view span(cps.data() + i, j - i);
    bool ends_token = j == n || !chars::IsWordChar(cps[j]);

    const std::string* expansion = nullptr;
    size_t lead = 0, trail = 0;
    if (ends_token) {
      expansion = table.Find(NormalizeContractionKey(span));
      if (expansion == nullptr) {
        // Retry without surrounding quote marks: 'don't' -> don't.
        while (lead < span.size() && chars::IsApostrophe(span[lead])) ++lead;
        while (trail < span.size() - lead &&
               chars::IsApostrophe(span[span.size() - 1 - trail])) {
          ++trail;
        }
        if ((lead > 0 || trail > 0) && lead + trail < span.size()) {
          expansion = table.Find(NormalizeContractionKey(
              span.substr(lead, span.size() - lead - trail)));
        }
      }
    }
    if (expansion != nullptr) {
      out += utf8::Encode(span.substr(0, lead));
      out += *expansion;
      out += utf8::Encode(span.substr(span.size() - trail));
    } else {
      out += utf8::Encode(span);
    }
    i = j;
  }
  return out;
}

std::string StripNoise(std::string_view text, Language language,
                       const EmojiTable& emoji) {
  std::u32string cps = utf8::DecodeOrThrow(text, "noise-strip input");
  for (const EntitySpan& span : ScanEntities(cps, emoji)) {
    for (size_t k = span.begin; k < span.end; ++k) cps[k] = U' ';
  }

  std::u32string kept;
  kept.reserve(cps.size());
  for (char32_t c : cps) {
    if (chars::IsWhitespace(c)) {
      kept.push_back(U' ');
    } else if (chars::IsFormat(c) || chars::IsZeroWidth(c) ||
               emoji.Contains(c) || chars::IsApostrophe(c)) {
      // dropped without leaving a gap
    } else if (chars::IsPunctuationOrSymbol(c)) {
      kept.push_back(U' ');
    } else {
      kept.push_back(c);
    }
  }

  std::string out;
  size_t i = 0;
  while (i < kept.size()) {
    while (i < kept.size() && kept[i] == U' ') ++i;
    size_t j = i;
    while (j < kept.size() && kept[j] != U' ') ++j;
    if (j > i) {
      std::u32string_view token(kept.data() + i, j - i);
      if (!IsNumericToken(token, language)) {
        if (!out.empty()) out.push_back(' ');
        out += utf8::Encode(token);
      }
    }
    i = j;
  }
  return out;
}

std::string RemoveEmojis(std::string_view text, const EmojiTable& emoji) {
  const std::u32string cps = utf8::DecodeOrThrow(text, "emoji input");
  std::string out;
  out.reserve(text.size());
  for (char32_t c : cps) {
    if (!emoji.Contains(c)) utf8::Append(c, &out);
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view text, Language language) {
  const std::u32string cps = utf8::DecodeOrThrow(text, "tokenizer input");
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t c : cps) {
    if (chars::IsWhitespace(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    utf8::Append(language == Language::kEnglish ? chars::ToLower(c) : c,
                 &current);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> RemoveStopwords(std::vector<std::string> tokens,
                                         const StopwordList& stopwords) {
  std::erase_if(tokens, [&](const std::string& t) {
    return stopwords.contains(t);
  });
  return tokens;
}

Preprocessor Preprocessor::Create(Language language,
                                  const PreprocessPaths& paths) {
  ContractionTable contractions =
      paths.contractions.empty() ? ContractionTable::Default()
                                 : ContractionTable::Load(paths.contractions);
  StopwordList stopwords = paths.stopwords.empty()
                               ? StopwordList::Default(language)
                               : StopwordList::Load(paths.stopwords);
  EmojiTable emoji = paths.emoji_ranges.empty()
                         ? EmojiTable::Default()
                         : EmojiTable::Load(paths.emoji_ranges);
  return Preprocessor(language, std::move(contractions), std::move(stopwords),
                      std::move(emoji));
}

Preprocessor::Preprocessor(Language language, ContractionTable contractions,
                           StopwordList stopwords, EmojiTable emoji)
    : language_(language),
      contractions_(std::move(contractions)),
      stopwords_(std::move(stopwords)),
      emoji_(std::move(emoji)) {}

CleanDoc Preprocessor::Clean(std::string_view raw_text) const {
  CleanDoc doc;
  doc.pre_strip = CountEntities(raw_text, emoji_);
  std::string text = language_ == Language::kEnglish
                         ? ExpandContractions(raw_text, contractions_)
                         : std::string(raw_text);
  text = StripNoise(text, language_, emoji_);
  text = RemoveEmojis(text, emoji_);
  std::vector<std::string> tokens = Tokenize(text, language_);
  if (language_ == Language::kEnglish) {
    // Stripping can leave a fresh key behind ("gon\u200Bna" -> "gonna");
    // expanding it here keeps Clean idempotent.
    std::vector<std::string> expanded;
    expanded.reserve(tokens.size());
    for (std::string& t : tokens) {
      const std::string* expansion = contractions_.Find(t);
      if (expansion == nullptr) {
        expanded.push_back(std::move(t));
        continue;
      }
      for (std::string_view part : internal::SplitOn(*expansion, ' ')) {
        if (!part.empty()) expanded.emplace_back(part);
      }
    }
    tokens = std::move(expanded);
  }
  doc.tokens = RemoveStopwords(std::move(tokens), stopwords_);
  return doc;
}

}  // namespace hostility
