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

#ifndef HOSTILITY_CORPUS_H_
#define HOSTILITY_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hostility {

enum class Language { kHindi, kEnglish };
enum class Task { kHostility, kFakeNews };
enum class Split { kTrain, kValidation, kTest };

// Coarse labels of both tasks share one enum; a corpus only ever uses the
// pair belonging to its task.
enum class CoarseLabel { kNonHostile, kHostile, kReal, kFake };

enum class FineLabel { kFake = 0, kHate = 1, kOffensive = 2, kDefamation = 3 };
inline constexpr int kFineLabelCount = 4;
inline constexpr std::array<FineLabel, kFineLabelCount> kAllFineLabels = {
    FineLabel::kFake, FineLabel::kHate, FineLabel::kOffensive,
    FineLabel::kDefamation};

// Set of fine-grained labels stored as a bit mask.
class FineSet {
 public:
  FineSet() = default;
  FineSet(std::initializer_list<FineLabel> labels) {
    for (FineLabel l : labels) insert(l);
  }

  bool contains(FineLabel label) const { return bits_ & bit(label); }
  void insert(FineLabel label) { bits_ |= bit(label); }
  void erase(FineLabel label) { bits_ &= static_cast<uint8_t>(~bit(label)); }
  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcount(bits_); }
  uint8_t bits() const { return bits_; }
  std::vector<FineLabel> labels() const;

  friend bool operator==(FineSet a, FineSet b) { return a.bits_ == b.bits_; }

 private:
  static uint8_t bit(FineLabel l) {
    return static_cast<uint8_t>(1u << static_cast<int>(l));
  }
  uint8_t bits_ = 0;
};

std::string_view Name(Language language);
std::string_view Name(Task task);
std::string_view Name(Split split);
std::string_view Name(CoarseLabel label);
std::string_view Name(FineLabel label);
// Comma-joined fine label names in canonical order, e.g. "hate,offensive".
std::string Name(FineSet set);

Language ParseLanguage(std::string_view text);
Task ParseTask(std::string_view text);
Split ParseSplit(std::string_view text);

// Positive class of a binary task: hostile for hostility, fake for fake news.
CoarseLabel PositiveLabel(Task task);
CoarseLabel NegativeLabel(Task task);
bool IsPositive(CoarseLabel label);

struct LabeledPost {
  std::string id;
  std::string text;
  CoarseLabel coarse = CoarseLabel::kNonHostile;
  FineSet fine;
  Split split = Split::kTrain;
  bool pseudo = false;
};

struct Corpus {
  Language language = Language::kHindi;
  Task task = Task::kHostility;
  std::vector<LabeledPost> posts;

  size_t size() const { return posts.size(); }
  bool empty() const { return posts.empty(); }
};

struct DatasetOptions {
  // Overrides header-based detection when set.
  std::optional<char> delimiter;
  // Split assigned to rows when the file has no split column.
  Split split = Split::kTrain;
};

// Parses a label field (e.g. "hate,offensive", "Non-Hostile", "fake") for
// the given task. Throws DataError naming the unknown label string.
void ParseLabelField(std::string_view field, Task task, CoarseLabel* coarse,
                     FineSet* fine);

// Loads a header-first dataset file. Recognized columns (case-insensitive):
// id ("id", "unique id"), text ("text", "post", "tweet"), labels ("label",
// "labels", "labels set") and an optional "split". Other columns are ignored
// with a warning. Throws DataError on malformed rows or unknown labels.
Corpus LoadDataset(const std::filesystem::path& path, Language language,
                   Task task, const DatasetOptions& options = {});

// As LoadDataset, from in-memory content. `source` names the input in errors.
Corpus ParseDataset(std::string_view content, Language language, Task task,
                    const DatasetOptions& options = {},
                    std::string_view source = "<memory>");

struct UnlabeledPost {
  std::string id;
  std::string text;
};

// Reads id + text columns, resolved by header name. Malformed rows are
// skipped with a warning and counted in `skipped`.
std::vector<UnlabeledPost> LoadUnlabeled(const std::filesystem::path& path,
                                         std::optional<char> delimiter,
                                         size_t* skipped);

struct ClassCounts {
  std::array<size_t, kFineLabelCount> fine{};
  size_t positive = 0;  // hostile or fake
  size_t negative = 0;  // non-hostile or real
  size_t total = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// Per-split class counts. Fine counts may sum to more than `positive`
// because posts can carry several fine labels.
std::map<Split, ClassCounts> SplitCounts(const Corpus& corpus);

}  // namespace hostility

#endif  // HOSTILITY_CORPUS_H_
