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

#include "hostility/ensemble.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hostility/dsv.h"
#include "hostility/error.h"
#include "strings.h"

namespace hostility {

std::string_view Name(VoteRule rule) {
  switch (rule) {
    case VoteRule::kMajority: return "majority";
    case VoteRule::kLogicalOr: return "logical_or";
    case VoteRule::kLogicalAnd: return "logical_and";
  }
  return "?";
}

VoteRule ParseVoteRule(std::string_view text) {
  std::string s = internal::AsciiLower(internal::Trim(text));
  if (s == "majority") return VoteRule::kMajority;
  if (s == "logical_or" || s == "or") return VoteRule::kLogicalOr;
  if (s == "logical_and" || s == "and") return VoteRule::kLogicalAnd;
  throw ConfigError("unknown ensemble rule: '" + std::string(text) + "'");
}

void EnsembleSpec::Validate() const {
  if (members.empty()) throw ConfigError("ensemble.members must not be empty");
  if (tie_break < 0 || tie_break >= static_cast<int>(members.size())) {
    throw ConfigError("ensemble.tie_break must index a member");
  }
}

int Vote(std::span<const int> predictions, const EnsembleSpec& spec) {
  if (predictions.empty()) throw std::invalid_argument("no predictions to vote");
  if (predictions.size() != spec.members.size()) {
    throw std::invalid_argument("prediction count differs from member count");
  }
  std::map<int, int> counts;
  for (int p : predictions) ++counts[p];
  int top = 0;
  for (const auto& [label, count] : counts) top = std::max(top, count);

  auto is_top = [&](int label) { return counts[label] == top; };
  const int tie_label = predictions[spec.tie_break];
  if (is_top(tie_label)) {
    int tied = 0;
    for (const auto& [label, count] : counts) tied += count == top ? 1 : 0;
    if (tied > 1) return tie_label;
  }
  for (int p : predictions) {
    if (is_top(p)) return p;
  }
  return predictions.front();
}

CoarseLabel Vote(std::span<const CoarseLabel> predictions,
                 const EnsembleSpec& spec) {
  std::vector<int> ids(predictions.size());
  std::transform(predictions.begin(), predictions.end(), ids.begin(),
                 [](CoarseLabel l) { return static_cast<int>(l); });
  return static_cast<CoarseLabel>(Vote(ids, spec));
}

bool LogicalCombine(std::span<const uint8_t> positives, VoteRule rule) {
  if (positives.empty()) throw std::invalid_argument("no predictions to combine");
  switch (rule) {
    case VoteRule::kLogicalOr:
      return std::any_of(positives.begin(), positives.end(),
                         [](uint8_t p) { return p != 0; });
    case VoteRule::kLogicalAnd:
      return std::all_of(positives.begin(), positives.end(),
                         [](uint8_t p) { return p != 0; });
    case VoteRule::kMajority:
      break;
  }
  throw std::invalid_argument("LogicalCombine needs logical_or or logical_and");
}

CoarseLabel Combine(std::span<const CoarseLabel> predictions,
                    const EnsembleSpec& spec, CoarseLabel positive,
                    CoarseLabel negative) {
  if (spec.rule == VoteRule::kMajority) return Vote(predictions, spec);
  std::vector<uint8_t> bits(predictions.size());
  std::transform(predictions.begin(), predictions.end(), bits.begin(),
                 [&](CoarseLabel l) { return l == positive ? 1 : 0; });
  return LogicalCombine(bits, spec.rule) ? positive : negative;
}

FineSet CombineFine(std::span<const FineSet> predictions,
                    const EnsembleSpec& spec) {
  FineSet out;
  std::vector<int> votes(predictions.size());
  std::vector<uint8_t> bits(predictions.size());
  for (FineLabel c : kAllFineLabels) {
    for (size_t m = 0; m < predictions.size(); ++m) {
      bits[m] = predictions[m].contains(c) ? 1 : 0;
      votes[m] = bits[m];
    }
    const bool on = spec.rule == VoteRule::kMajority
                        ? Vote(votes, spec) == 1
                        : LogicalCombine(bits, spec.rule);
    if (on) out.insert(c);
  }
  return out;
}

Corpus PseudoLabel(const Corpus& train, std::span<const LabeledPost> unlabeled,
                   const PostPredictor& predict, double confidence_min) {
  Corpus augmented = train;
  for (const LabeledPost& post : unlabeled) {
    const ScoredPrediction p = predict(post);
    if (!(p.confidence >= confidence_min)) continue;
    LabeledPost added;
    added.id = "pseudo:" + post.id;
    added.text = post.text;
    added.coarse = p.label;
    added.fine = p.fine;
    added.split = Split::kTrain;
    added.pseudo = true;
    augmented.posts.push_back(std::move(added));
  }
  return augmented;
}

std::vector<Disagreement> DisagreementReport(
    const std::vector<std::vector<ScoredPrediction>>& member_predictions,
    const Corpus& corpus) {
  if (member_predictions.size() < 2) {
    throw std::invalid_argument("disagreement report needs at least two models");
  }
  for (const auto& preds : member_predictions) {
    if (preds.size() != corpus.size()) {
      throw std::invalid_argument("model predictions do not cover the corpus");
    }
  }
  std::vector<Disagreement> report;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const CoarseLabel first = member_predictions.front()[i].label;
    bool unanimous = true;
    double confidence = 0;
    for (const auto& preds : member_predictions) {
      unanimous = unanimous && preds[i].label == first;
      confidence += preds[i].confidence;
    }
    if (!unanimous || first == corpus.posts[i].coarse) continue;
    report.push_back({i, corpus.posts[i].id, corpus.posts[i].coarse, first,
                      confidence / member_predictions.size()});
  }
  std::stable_sort(report.begin(), report.end(),
                   [](const Disagreement& a, const Disagreement& b) {
                     return a.mean_confidence > b.mean_confidence;
                   });
  return report;
}

std::string DisagreementToDsv(const std::vector<Disagreement>& report,
                              const Corpus& corpus, char delimiter) {
  std::ostringstream out;
  out << JoinRecord({"id", "gold", "predicted", "mean_confidence", "text"},
                    delimiter)
      << '\n';
  for (const Disagreement& d : report) {
    std::ostringstream conf;
    conf.precision(6);
    conf << std::fixed << d.mean_confidence;
    out << JoinRecord({d.id, std::string(Name(d.gold)),
                       std::string(Name(d.predicted)), conf.str(),
                       corpus.posts[d.index].text},
                      delimiter)
        << '\n';
  }
  return out.str();
}

}  // namespace hostility
