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

#ifndef HOSTILITY_ENSEMBLE_H_
#define HOSTILITY_ENSEMBLE_H_

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hostility/corpus.h"

namespace hostility {

enum class VoteRule { kMajority, kLogicalOr, kLogicalAnd };

std::string_view Name(VoteRule rule);
VoteRule ParseVoteRule(std::string_view text);

struct EnsembleSpec {
  std::vector<std::string> members;
  VoteRule rule = VoteRule::kMajority;
  // Member whose prediction settles ties.
  int tie_break = 0;

  // Throws ConfigError when there are no members or tie_break is out of
  // range.
  void Validate() const;
};

// Most frequent label. On a tie the tie-break member's label wins if it is
// among the tied labels; otherwise the tied label voted by the
// lowest-index member wins. Throws std::invalid_argument on empty input or
// a size different from the member count.
int Vote(std::span<const int> predictions, const EnsembleSpec& spec);
CoarseLabel Vote(std::span<const CoarseLabel> predictions,
                 const EnsembleSpec& spec);

// OR: positive iff any member is positive. AND: iff all are.
// kMajority is rejected with std::invalid_argument.
bool LogicalCombine(std::span<const uint8_t> positives, VoteRule rule);

// Combines binary coarse predictions under any rule; for the logical rules
// `positive` designates the class treated as true.
CoarseLabel Combine(std::span<const CoarseLabel> predictions,
                    const EnsembleSpec& spec, CoarseLabel positive,
                    CoarseLabel negative);

// Fine-grained combination, applied independently per class.
FineSet CombineFine(std::span<const FineSet> predictions,
                    const EnsembleSpec& spec);

struct ScoredPrediction {
  CoarseLabel label = CoarseLabel::kNonHostile;
  FineSet fine;
  // Probability of the predicted label.
  double confidence = 0;
};

using PostPredictor = std::function<ScoredPrediction(const LabeledPost&)>;

// Copies `train` and appends every unlabeled post predicted with confidence
// >= confidence_min, carrying the predicted labels, split = train,
// pseudo = true and the id prefixed with "pseudo:".
Corpus PseudoLabel(const Corpus& train, std::span<const LabeledPost> unlabeled,
                   const PostPredictor& predict, double confidence_min);

struct Disagreement {
  size_t index = 0;  // position in the corpus
  std::string id;
  CoarseLabel gold = CoarseLabel::kNonHostile;
  CoarseLabel predicted = CoarseLabel::kNonHostile;
  double mean_confidence = 0;
};

// Posts on which every model agrees with the others but not with the gold
// label, by mean confidence descending (ties by corpus order).
// `member_predictions[m][i]` is model m's prediction for post i. Throws
// std::invalid_argument with fewer than two models or mismatched sizes.
std::vector<Disagreement> DisagreementReport(
    const std::vector<std::vector<ScoredPrediction>>& member_predictions,
    const Corpus& corpus);

// Header "id,gold,predicted,mean_confidence,text".
std::string DisagreementToDsv(const std::vector<Disagreement>& report,
                              const Corpus& corpus, char delimiter);

}  // namespace hostility

#endif  // HOSTILITY_ENSEMBLE_H_
