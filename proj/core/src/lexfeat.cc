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

#include "hostility/lexfeat.h"

#include <algorithm>
#include <map>

#include "hostility/error.h"
#include "hostility/hash.h"
#include "hostility/utf8.h"
#include "strings.h"

namespace hostility {

Lexicon Lexicon::Parse(std::string_view content, std::string source) {
  Lexicon lexicon;
  lexicon.source_ = std::move(source);
  std::vector<std::string_view> lines = internal::Lines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view term = internal::Trim(lines[i]);
    if (term.empty() || term.front() == '#') continue;
    const std::u32string cps = utf8::DecodeOrThrow(
        term, lexicon.source_ + ":" + std::to_string(i + 1));
    for (char32_t c : cps) {
      if (chars::IsWhitespace(c)) {
        throw DataError(lexicon.source_ + ":" + std::to_string(i + 1) +
                        ": lexicon term contains whitespace");
      }
    }
    lexicon.terms_.emplace(term);
  }
  if (lexicon.terms_.empty()) {
    throw DataError(lexicon.source_ + ": lexicon has no terms");
  }
  return lexicon;
}

Lexicon Lexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

const Lexicon& Lexicon::Default() {
  static const Lexicon lexicon =
      Parse(BundledFile("profanity_hi.txt"), "profanity_hi.txt");
  return lexicon;
}

std::vector<std::string> Lexicon::SortedTerms() const {
  std::vector<std::string> terms(terms_.begin(), terms_.end());
  std::sort(terms.begin(), terms.end());
  return terms;
}

std::string Lexicon::Checksum() const {
  Fnv1a hash;
  for (const std::string& term : SortedTerms()) hash.Update(term).Update("\n");
  return hash.hex();
}

int CountAbusive(std::span<const std::string> tokens, const Lexicon& lexicon,
                 bool substring_match) {
  int count = 0;
  if (!substring_match) {
    for (const std::string& token : tokens) {
      if (lexicon.contains(token)) ++count;
    }
    return count;
  }
  const std::vector<std::string> terms = lexicon.SortedTerms();
  for (const std::string& token : tokens) {
    for (const std::string& term : terms) {
      for (size_t pos = token.find(term); pos != std::string::npos;
           pos = token.find(term, pos + term.size())) {
        ++count;
      }
    }
  }
  return count;
}

EntityCounts CountEntities(std::string_view raw_text, const EmojiTable& emoji) {
  const std::u32string cps = utf8::DecodeOrThrow(raw_text, "entity counter");
  EntityCounts counts;
  for (const EntitySpan& span : ScanEntities(cps, emoji)) {
    switch (span.kind) {
      case SpanKind::kUrl: ++counts.urls; break;
      case SpanKind::kMention: ++counts.mentions; break;
      case SpanKind::kHashtag: ++counts.hashtags; break;
      case SpanKind::kEmoji: ++counts.emojis; break;
    }
  }
  return counts;
}

std::vector<ClassProfile> ProfileCounts(const Corpus& corpus,
                                        ProfileLevel level,
                                        const EmojiTable& emoji) {
  // Keyed by (group, enum value) so rows come out in enum order.
  std::map<std::pair<int, int>, ClassProfile> rows;
  auto add = [&](int group, int value, std::string_view label,
                 const EntityCounts& c) {
    ClassProfile& row = rows[{group, value}];
    row.label = std::string(label);
    ++row.posts;
    row.mentions += c.mentions;
    row.urls += c.urls;
    row.hashtags += c.hashtags;
    row.emojis += c.emojis;
  };
  for (const LabeledPost& post : corpus.posts) {
    const EntityCounts c = CountEntities(post.text, emoji);
    if (level == ProfileLevel::kCoarse || post.fine.empty()) {
      add(0, static_cast<int>(post.coarse), Name(post.coarse), c);
    } else {
      for (FineLabel l : post.fine.labels()) {
        add(1, static_cast<int>(l), Name(l), c);
      }
    }
  }
  std::vector<ClassProfile> out;
  for (auto& [key, row] : rows) {
    const double n = static_cast<double>(row.posts);
    row.mentions /= n;
    row.urls /= n;
    row.hashtags /= n;
    row.emojis /= n;
    out.push_back(std::move(row));
  }
  return out;
}

std::array<double, kMetaDim> MetaFeatures::ToArray() const {
  return {static_cast<double>(abusive),         static_cast<double>(entity.emojis),
          static_cast<double>(entity.hashtags), static_cast<double>(entity.mentions),
          static_cast<double>(entity.urls),     static_cast<double>(char_length)};
}

MetaFeatures MetaVector(const CleanDoc& doc, const Lexicon& lexicon,
                        bool substring_match) {
  MetaFeatures meta;
  meta.abusive = CountAbusive(doc.tokens, lexicon, substring_match);
  meta.entity = doc.pre_strip;
  meta.char_length = static_cast<int>(utf8::Length(doc.Text()));
  meta.token_length = static_cast<int>(doc.tokens.size());
  return meta;
}

std::string MetaFamilies::Tag() const {
  std::string tag;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!tag.empty()) tag.push_back('+');
    tag += name;
  };
  add(m1, "m1");
  add(m2, "m2");
  add(m3, "m3");
  add(length, "len");
  return tag.empty() ? "none" : tag;
}

MetaScaler::MetaScaler() {
  min_.fill(0.0);
  max_.fill(0.0);
}

MetaScaler MetaScaler::Fit(std::span<const MetaFeatures> train) {
  MetaScaler scaler;
  if (train.empty()) return scaler;
  scaler.min_ = train.front().ToArray();
  scaler.max_ = scaler.min_;
  for (const MetaFeatures& f : train) {
    const auto v = f.ToArray();
    for (int k = 0; k < kMetaDim; ++k) {
      scaler.min_[k] = std::min(scaler.min_[k], v[k]);
      scaler.max_[k] = std::max(scaler.max_[k], v[k]);
    }
  }
  return scaler;
}

MetaScaler MetaScaler::FromBounds(const std::array<double, kMetaDim>& min,
                                  const std::array<double, kMetaDim>& max) {
  MetaScaler scaler;
  scaler.min_ = min;
  scaler.max_ = max;
  return scaler;
}

std::array<double, kMetaDim> MetaScaler::Apply(
    const MetaFeatures& features, const MetaFamilies& families) const {
  const std::array<bool, kMetaDim> enabled = {
      families.m1, families.m3, families.m2,
      families.m2, families.m2, families.length};
  const auto v = features.ToArray();
  std::array<double, kMetaDim> out{};
  for (int k = 0; k < kMetaDim; ++k) {
    if (!enabled[k]) continue;
    const double range = max_[k] - min_[k];
    out[k] = range > 0 ? (v[k] - min_[k]) / range : 0.0;
  }
  return out;
}

}  // namespace hostility
