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

#include "hostility/text_scan.h"

#include <unicode/uchar.h>

namespace hostility {
namespace chars {

bool IsWhitespace(char32_t cp) {
  return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

bool IsWordChar(char32_t cp) {
  if (cp == '_' || cp == 0x200C || cp == 0x200D) return true;
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
  }
  int32_t mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
  return (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_N_MASK)) != 0;
}

bool IsZeroWidth(char32_t cp) { return cp >= 0x200B && cp <= 0x200D; }

bool IsFormat(char32_t cp) {
  return u_charType(static_cast<UChar32>(cp)) == U_FORMAT_CHAR;
}

bool IsPunctuationOrSymbol(char32_t cp) {
  int32_t mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
  return (mask & (U_GC_P_MASK | U_GC_S_MASK | U_GC_CC_MASK)) != 0;
}

bool IsApostrophe(char32_t cp) {
  return cp == '\'' || cp == 0x2019 || cp == 0x2018 || cp == 0x02BC;
}

bool IsDecimalDigit(char32_t cp) { return u_isdigit(static_cast<UChar32>(cp)); }

bool IsAsciiDigit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool IsDevanagariDigit(char32_t cp) { return cp >= 0x0966 && cp <= 0x096F; }

char32_t ToLower(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'A' && cp <= 'Z') ? cp - 'A' + 'a' : cp;
  }
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

}  // namespace chars

namespace {

bool IsAsciiAlpha(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsAsciiAlnum(char32_t c) { return IsAsciiAlpha(c) || chars::IsAsciiDigit(c); }

bool IsHandleChar(char32_t c) { return IsAsciiAlnum(c) || c == '_'; }

bool IsHostChar(char32_t c) { return IsAsciiAlnum(c) || c == '-'; }

size_t RunToWhitespace(std::u32string_view text, size_t i) {
  while (i < text.size() && !chars::IsWhitespace(text[i])) ++i;
  return i;
}

// Returns the end of a URL starting at `i`, or 0 if none starts there.
size_t MatchUrl(std::u32string_view text, size_t i) {
  const size_t n = text.size();
  if (!IsAsciiAlnum(text[i])) return 0;

  // scheme://
  size_t j = i;
  while (j < n && (IsAsciiAlnum(text[j]) || text[j] == '+' || text[j] == '.' ||
                   text[j] == '-')) {
    ++j;
  }
  if (IsAsciiAlpha(text[i]) && j + 2 < n && text[j] == ':' &&
      text[j + 1] == '/' && text[j + 2] == '/') {
    return RunToWhitespace(text, j + 3);
  }

  // www.
  if (i + 4 <= n && chars::ToLower(text[i]) == 'w' &&
      chars::ToLower(text[i + 1]) == 'w' &&
      chars::ToLower(text[i + 2]) == 'w' && text[i + 3] == '.') {
    if (i + 4 < n && IsHostChar(text[i + 4])) {
      return RunToWhitespace(text, i + 4);
    }
  }

  // host.tld/...
  j = i;
  int labels = 0;
  size_t last_label_start = i;
  while (true) {
    size_t start = j;
    while (j < n && IsHostChar(text[j])) ++j;
    if (j == start) return 0;
    ++labels;
    last_label_start = start;
    if (j < n && text[j] == '.' && j + 1 < n && IsHostChar(text[j + 1])) {
      ++j;
      continue;
    }
    break;
  }
  if (labels < 2 || j >= n || text[j] != '/') return 0;
  for (size_t k = last_label_start; k < j; ++k) {
    if (!IsAsciiAlpha(text[k])) return 0;
  }
  if (j - last_label_start < 2) return 0;
  return RunToWhitespace(text, j);
}

bool UrlBoundary(std::u32string_view text, size_t i) {
  if (i == 0) return true;
  char32_t prev = text[i - 1];
  return !chars::IsWordChar(prev) && prev != '.' && prev != '-' &&
         prev != '/' && prev != '@' && prev != ':';
}

}  // namespace

std::vector<EntitySpan> ScanEntities(std::u32string_view text,
                                     const EmojiTable& emoji) {
  std::vector<EntitySpan> spans;
  const size_t n = text.size();
  size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    const bool boundary = i == 0 || !chars::IsWordChar(text[i - 1]);

    if (c == '@' && boundary && i + 1 < n && IsHandleChar(text[i + 1])) {
      size_t j = i + 1;
      while (j < n && IsHandleChar(text[j])) ++j;
      spans.push_back({i, j, SpanKind::kMention});
      i = j;
      continue;
    }
    if (c == '#' && boundary && i + 1 < n && chars::IsWordChar(text[i + 1]) &&
        !emoji.Contains(text[i + 1])) {
      size_t j = i + 1;
      while (j < n && chars::IsWordChar(text[j])) ++j;
      spans.push_back({i, j, SpanKind::kHashtag});
      i = j;
      continue;
    }
    if (UrlBoundary(text, i)) {
      if (size_t end = MatchUrl(text, i); end > 0) {
        spans.push_back({i, end, SpanKind::kUrl});
        i = end;
        continue;
      }
    }
    if (emoji.Contains(c) && !EmojiTable::IsComponent(c)) {
      size_t j = i + 1;
      bool regional_pair_open = EmojiTable::IsRegionalIndicator(c);
      while (j < n) {
        if (EmojiTable::IsComponent(text[j]) && text[j] != 0x200D) {
          ++j;
        } else if (text[j] == 0x200D && j + 1 < n &&
                   emoji.Contains(text[j + 1]) &&
                   !EmojiTable::IsComponent(text[j + 1])) {
          j += 2;
        } else if (regional_pair_open &&
                   EmojiTable::IsRegionalIndicator(text[j])) {
          regional_pair_open = false;
          ++j;
        } else {
          break;
        }
      }
      spans.push_back({i, j, SpanKind::kEmoji});
      i = j;
      continue;
    }
    ++i;
  }
  return spans;
}

}  // namespace hostility
