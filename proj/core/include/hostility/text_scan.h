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

#ifndef HOSTILITY_TEXT_SCAN_H_
#define HOSTILITY_TEXT_SCAN_H_

#include <string>
#include <string_view>
#include <vector>

#include "hostility/resources.h"

namespace hostility {

// Raw-text entity counts, taken before any cleaning removes them.
struct EntityCounts {
  int mentions = 0;
  int urls = 0;
  int hashtags = 0;
  int emojis = 0;

  EntityCounts& operator+=(const EntityCounts& o) {
    mentions += o.mentions;
    urls += o.urls;
    hashtags += o.hashtags;
    emojis += o.emojis;
    return *this;
  }
  friend EntityCounts operator+(EntityCounts a, const EntityCounts& b) {
    return a += b;
  }
  friend bool operator==(const EntityCounts&, const EntityCounts&) = default;
};

enum class SpanKind { kUrl, kMention, kHashtag, kEmoji };

// Half-open code point range [begin, end) of a recognized entity.
struct EntitySpan {
  size_t begin = 0;
  size_t end = 0;
  SpanKind kind = SpanKind::kUrl;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// Finds URLs, @mentions, #hashtags and emoji clusters in raw text, left to
// right, without overlap.
//
//   url      scheme "xxx://", "www.", or a dotted host followed by '/'
//            (t.co/abc); runs to the next whitespace
//   mention  '@' + [A-Za-z0-9_]+, not preceded by a word character
//   hashtag  '#' + word characters, not preceded by a word character
//   emoji    a base emoji plus any trailing components, ZWJ-joined emoji,
//            or a regional-indicator pair
std::vector<EntitySpan> ScanEntities(std::u32string_view text,
                                     const EmojiTable& emoji);

namespace chars {

bool IsWhitespace(char32_t cp);
// Letters, marks and numbers, plus '_', ZWNJ and ZWJ.
bool IsWordChar(char32_t cp);
// U+200B, U+200C, U+200D.
bool IsZeroWidth(char32_t cp);
// Invisible format characters (zero-width, BOM, bidi marks, soft hyphen).
bool IsFormat(char32_t cp);
bool IsPunctuationOrSymbol(char32_t cp);
bool IsApostrophe(char32_t cp);
bool IsDecimalDigit(char32_t cp);
bool IsAsciiDigit(char32_t cp);
bool IsDevanagariDigit(char32_t cp);
char32_t ToLower(char32_t cp);

}  // namespace chars
}  // namespace hostility

#endif  // HOSTILITY_TEXT_SCAN_H_
