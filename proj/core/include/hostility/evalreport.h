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

#ifndef HOSTILITY_EVALREPORT_H_
#define HOSTILITY_EVALREPORT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hostility/corpus.h"

namespace hostility {

using ConfusionMatrix = std::vector<std::vector<size_t>>;

// Support-weighted mean of per-class F1 over every label seen in either
// vector. Precision, recall or F1 with a zero denominator count as 0.
// Throws std::invalid_argument on empty or mismatched input.
double WeightedF1(std::span<const int> y_true, std::span<const int> y_pred);

// Entry (i, j) counts true class i predicted as class j, classes indexed by
// their position in `classes`. Throws std::invalid_argument on a label not
// in `classes`.
ConfusionMatrix Confusion(std::span<const int> y_true,
                          std::span<const int> y_pred,
                          std::span<const int> classes);

struct ClassMetrics {
  std::string name;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  size_t support = 0;
};

// Binary metrics from counts, zero-denominator convention applied.
ClassMetrics MetricsFromCounts(std::string name, size_t true_pos,
                               size_t false_pos, size_t false_neg);

struct ClassTable {
  std::vector<ClassMetrics> rows;
  ClassMetrics weighted;  // support-weighted averages, support = total
};

// Multi-label sets reduced to one binary task per fine class.
ClassTable PerClassReport(std::span<const FineSet> y_true,
                          std::span<const FineSet> y_pred);

// Single-label table over `classes` (names index-aligned).
ClassTable SingleLabelReport(std::span<const int> y_true,
                             std::span<const int> y_pred,
                             std::span<const int> classes,
                             std::span<const std::string> names);

struct EvalReport {
  std::string task;   // e.g. "hostility/coarse"
  std::string split;
  double weighted_f1 = 0;
  ClassTable table;
  std::vector<std::string> confusion_labels;
  ConfusionMatrix confusion;  // empty for multi-label reports
  std::string config_hash;
  uint64_t seed = 0;
};

EvalReport EvaluateCoarse(std::span<const CoarseLabel> y_true,
                          std::span<const CoarseLabel> y_pred, Task task,
                          Split split);
EvalReport EvaluateFine(std::span<const FineSet> y_true,
                        std::span<const FineSet> y_pred, Split split);

// {task, split, weighted_f1, classes:[{name,p,r,f1,support}], confusion,
//  config_hash, seed}
nlohmann::json ToJson(const EvalReport& report);
std::string RenderText(const EvalReport& report);

struct AblationRun {
  std::string tag;
  EvalReport report;
};

// Rows sorted by tag, each with its weighted F1 and the delta against the
// run tagged `baseline_tag`. Throws std::invalid_argument with fewer than
// two runs or a missing baseline.
std::string AblationTable(std::span<const AblationRun> runs,
                          std::string_view baseline_tag);

}  // namespace hostility

#endif  // HOSTILITY_EVALREPORT_H_
