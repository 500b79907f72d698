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

#include "hostility/corpus.h"

#include <set>
#include <unordered_set>

#include "hostility/dsv.h"
#include "hostility/error.h"
#include "hostility/hash.h"
#include "hostility/log.h"
#include "hostility/utf8.h"
#include "strings.h"

namespace hostility {

using internal::AsciiLower;
using internal::Trim;

std::vector<FineLabel> FineSet::labels() const {
  std::vector<FineLabel> out;
  for (FineLabel l : kAllFineLabels) {
    if (contains(l)) out.push_back(l);
  }
  return out;
}

std::string_view Name(Language language) {
  return language == Language::kHindi ? "hindi" : "english";
}

std::string_view Name(Task task) {
  return task == Task::kHostility ? "hostility" : "fake_news";
}

std::string_view Name(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "?";
}

std::string_view Name(CoarseLabel label) {
  switch (label) {
    case CoarseLabel::kNonHostile: return "non_hostile";
    case CoarseLabel::kHostile: return "hostile";
    case CoarseLabel::kReal: return "real";
    case CoarseLabel::kFake: return "fake";
  }
  return "?";
}

std::string_view Name(FineLabel label) {
  switch (label) {
    case FineLabel::kFake: return "fake";
    case FineLabel::kHate: return "hate";
    case FineLabel::kOffensive: return "offensive";
    case FineLabel::kDefamation: return "defamation";
  }
  return "?";
}

std::string Name(FineSet set) {
  std::string out;
  for (FineLabel l : set.labels()) {
    if (!out.empty()) out.push_back(',');
    out += Name(l);
  }
  return out;
}

Language ParseLanguage(std::string_view text) {
  std::string s = AsciiLower(Trim(text));
  if (s == "hindi" || s == "hi") return Language::kHindi;
  if (s == "english" || s == "en") return Language::kEnglish;
  throw ConfigError("unknown language: '" + std::string(text) + "'");
}

Task ParseTask(std::string_view text) {
  std::string s = AsciiLower(Trim(text));
  if (s == "hostility") return Task::kHostility;
  if (s == "fake_news" || s == "fake-news" || s == "fakenews") {
    return Task::kFakeNews;
  }
  throw ConfigError("unknown task: '" + std::string(text) + "'");
}

Split ParseSplit(std::string_view text) {
  std::string s = AsciiLower(Trim(text));
  if (s == "train") return Split::kTrain;
  if (s == "validation" || s == "valid" || s == "val" || s == "dev") {
    return Split::kValidation;
  }
  if (s == "test") return Split::kTest;
  throw DataError("unknown split: '" + std::string(text) + "'");
}

CoarseLabel PositiveLabel(Task task) {
  return task == Task::kHostility ? CoarseLabel::kHostile : CoarseLabel::kFake;
}

CoarseLabel NegativeLabel(Task task) {
  return task == Task::kHostility ? CoarseLabel::kNonHostile
                                  : CoarseLabel::kReal;
}

bool IsPositive(CoarseLabel label) {
  return label == CoarseLabel::kHostile || label == CoarseLabel::kFake;
}

void ParseLabelField(std::string_view field, Task task, CoarseLabel* coarse,
                     FineSet* fine) {
  *fine = FineSet();
  if (task == Task::kFakeNews) {
    std::string s = AsciiLower(Trim(field));
    if (s == "real") {
      *coarse = CoarseLabel::kReal;
    } else if (s == "fake") {
      *coarse = CoarseLabel::kFake;
    } else {
      throw DataError("unknown label: '" + std::string(Trim(field)) + "'");
    }
    return;
  }

  bool non_hostile = false;
  for (std::string_view part : internal::SplitOn(field, ',')) {
    std::string s = AsciiLower(Trim(part));
    if (s.empty()) continue;
    if (s == "non-hostile" || s == "non_hostile" || s == "nonhostile" ||
        s == "non hostile") {
      non_hostile = true;
    } else if (s == "fake") {
      fine->insert(FineLabel::kFake);
    } else if (s == "hate") {
      fine->insert(FineLabel::kHate);
    } else if (s == "offensive") {
      fine->insert(FineLabel::kOffensive);
    } else if (s == "defamation" || s == "defame") {
      fine->insert(FineLabel::kDefamation);
    } else {
      throw DataError("unknown label: '" + std::string(Trim(part)) + "'");
    }
  }
  if (non_hostile && !fine->empty()) {
    throw DataError("label '" + std::string(Trim(field)) +
                    "' combines non-hostile with hostile classes");
  }
  if (!non_hostile && fine->empty()) {
    throw DataError("empty label field");
  }
  *coarse = non_hostile ? CoarseLabel::kNonHostile : CoarseLabel::kHostile;
}

namespace {

enum class Column { kId, kText, kLabel, kSplit, kOther };

Column ClassifyHeader(std::string_view name) {
  std::string s = AsciiLower(Trim(name));
  if (s == "id" || s == "unique id" || s == "unique_id") return Column::kId;
  if (s == "text" || s == "post" || s == "tweet") return Column::kText;
  if (s == "label" || s == "labels" || s == "labels set" ||
      s == "labels_set") {
    return Column::kLabel;
  }
  if (s == "split") return Column::kSplit;
  return Column::kOther;
}

struct HeaderMap {
  int id = -1;
  int text = -1;
  int label = -1;
  int split = -1;
  std::vector<std::string> ignored;
};

HeaderMap MapHeader(const DsvRecord& header) {
  HeaderMap map;
  for (size_t i = 0; i < header.fields.size(); ++i) {
    int* slot = nullptr;
    switch (ClassifyHeader(header.fields[i])) {
      case Column::kId: slot = &map.id; break;
      case Column::kText: slot = &map.text; break;
      case Column::kLabel: slot = &map.label; break;
      case Column::kSplit: slot = &map.split; break;
      case Column::kOther: map.ignored.push_back(header.fields[i]); break;
    }
    if (slot != nullptr) {
      if (*slot >= 0) {
        throw DataError("duplicate column '" + header.fields[i] +
                        "' in header");
      }
      *slot = static_cast<int>(i);
    }
  }
  return map;
}

}  // namespace

Corpus ParseDataset(std::string_view content, Language language, Task task,
                    const DatasetOptions& options, std::string_view source) {
  Corpus corpus;
  corpus.language = language;
  corpus.task = task;

  const std::string where(source);
  char delimiter = options.delimiter.value_or(DetectDelimiter(content));
  std::vector<DsvRecord> records = ParseDsv(content, delimiter);
  if (records.empty()) {
    throw DataError(where + ": missing header line");
  }
  HeaderMap map = MapHeader(records.front());
  if (map.id < 0 || map.text < 0 || map.label < 0) {
    throw DataError(where +
                    ": header must name id, text and label columns");
  }
  for (const auto& name : map.ignored) {
    Warn(where + ": ignoring column '" + name + "'");
  }

  const size_t width = records.front().fields.size();
  std::set<std::pair<Split, std::string>> seen_ids;
  corpus.posts.reserve(records.size() - 1);
  for (size_t r = 1; r < records.size(); ++r) {
    const DsvRecord& rec = records[r];
    const std::string at = where + ":" + std::to_string(rec.line);
    if (rec.fields.size() != width) {
      throw DataError(at + ": expected " + std::to_string(width) +
                      " columns, found " + std::to_string(rec.fields.size()));
    }
    LabeledPost post;
    post.id = std::string(Trim(rec.fields[map.id]));
    post.text = rec.fields[map.text];
    if (!utf8::IsValid(post.text)) {
      throw DataError(at + ": text is not valid UTF-8");
    }
    try {
      ParseLabelField(rec.fields[map.label], task, &post.coarse, &post.fine);
      post.split =
          map.split >= 0 ? ParseSplit(rec.fields[map.split]) : options.split;
    } catch (const DataError& e) {
      throw DataError(at + ": " + e.what());
    }
    if (!seen_ids.emplace(post.split, post.id).second) {
      throw DataError(at + ": duplicate id '" + post.id + "' in split " +
                      std::string(Name(post.split)));
    }
    corpus.posts.push_back(std::move(post));
  }
  return corpus;
}

Corpus LoadDataset(const std::filesystem::path& path, Language language,
                   Task task, const DatasetOptions& options) {
  return ParseDataset(ReadFile(path), language, task, options, path.string());
}

std::vector<UnlabeledPost> LoadUnlabeled(const std::filesystem::path& path,
                                         std::optional<char> delimiter,
                                         size_t* skipped) {
  std::string content = ReadFile(path);
  char delim = delimiter.value_or(DetectDelimiter(content));
  std::vector<DsvRecord> records = ParseDsv(content, delim);
  *skipped = 0;
  std::vector<UnlabeledPost> posts;
  if (records.empty()) return posts;
  HeaderMap map = MapHeader(records.front());
  if (map.id < 0 || map.text < 0) {
    throw DataError(path.string() + ": header must name id and text columns");
  }
  const size_t width = records.front().fields.size();
  for (size_t r = 1; r < records.size(); ++r) {
    const DsvRecord& rec = records[r];
    if (rec.fields.size() != width || !utf8::IsValid(rec.fields[map.text])) {
      Warn(path.string() + ":" + std::to_string(rec.line) +
           ": skipping malformed row");
      ++*skipped;
      continue;
    }
    posts.push_back({std::string(Trim(rec.fields[map.id])),
                     rec.fields[map.text]});
  }
  return posts;
}

std::map<Split, ClassCounts> SplitCounts(const Corpus& corpus) {
  std::map<Split, ClassCounts> table{{Split::kTrain, {}},
                                     {Split::kValidation, {}},
                                     {Split::kTest, {}}};
  for (const LabeledPost& post : corpus.posts) {
    ClassCounts& counts = table[post.split];
    ++counts.total;
    if (IsPositive(post.coarse)) {
      ++counts.positive;
    } else {
      ++counts.negative;
    }
    for (FineLabel l : post.fine.labels()) {
      ++counts.fine[static_cast<int>(l)];
    }
  }
  return table;
}

}  // namespace hostility
