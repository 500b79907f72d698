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

#ifndef HOSTILITY_MODEL_H_
#define HOSTILITY_MODEL_H_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hostility/corpus.h"
#include "hostility/vectorize.h"

namespace hostility {

enum class Loss { kLogistic, kHinge };
enum class ClassWeighting { kNone, kInverseFrequency };

std::string_view Name(Loss loss);
std::string_view Name(ClassWeighting weighting);
Loss ParseLoss(std::string_view text);
ClassWeighting ParseClassWeighting(std::string_view text);

struct TrainConfig {
  Loss loss = Loss::kHinge;
  double l2 = 1e-4;
  double learning_rate = 0.1;
  int epochs = 10;
  uint64_t seed = 42;
  ClassWeighting class_weighting = ClassWeighting::kNone;

  // Throws ConfigError naming the offending field.
  void Validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct Prediction {
  bool positive = false;
  double score = 0;
  // sigma(score), logistic models only.
  std::optional<double> probability;
};

class LinearModel {
 public:
  LinearModel() = default;
  LinearModel(std::vector<double> weights, double bias, TrainConfig config,
              FeatureLayout layout);

  // w.x + b. Throws std::invalid_argument on a layout mismatch.
  double Score(const FeatureVector& x) const;
  // Positive iff score > 0.
  Prediction Predict(const FeatureVector& x) const;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const TrainConfig& config() const { return config_; }
  const FeatureLayout& layout() const { return layout_; }

  friend bool operator==(const LinearModel&, const LinearModel&) = default;

 private:
  std::vector<double> weights_;
  double bias_ = 0;
  TrainConfig config_;
  FeatureLayout layout_;
};

// Deterministic shuffling independent of the standard library's
// distribution implementations.
class SeededShuffler {
 public:
  explicit SeededShuffler(uint64_t seed) : engine_(seed) {}
  uint64_t Below(uint64_t bound);
  void Shuffle(std::vector<size_t>* items);

 private:
  std::mt19937_64 engine_;
};

// Per-sample SGD from zero weights with step size
// eta_t = eta0 / (1 + l2 * eta0 * t); the sample order of every epoch is
// drawn from config.seed. `labels` holds 0/1. Throws std::invalid_argument
// on empty input, length mismatch, or vectors that do not fit `layout`.
LinearModel TrainLinear(std::span<const FeatureVector> features,
                        std::span<const uint8_t> labels,
                        const FeatureLayout& layout,
                        const TrainConfig& config);

struct OneVsAllModel {
  // A missing submodel never predicts its class.
  std::array<std::optional<LinearModel>, kFineLabelCount> submodels;
  double threshold = 0.5;
};

// One binary model per fine class; a post is positive for every class in
// its label set. A class with no positive posts gets an all-negative model
// and a warning.
OneVsAllModel TrainOneVsAll(std::span<const FeatureVector> features,
                            std::span<const FineSet> labels,
                            const FeatureLayout& layout,
                            const TrainConfig& config, double threshold = 0.5);

// Per-class decision values. Logistic submodels pass when the probability
// reaches the threshold, hinge submodels when the score is positive.
struct ClassScore {
  FineLabel label;
  double score;
  std::optional<double> probability;
};

// Gating + threshold + argmax fallback over already computed scores.
FineSet DecideMultilabel(std::span<const ClassScore> scores, bool hostile,
                         double threshold);

FineSet PredictMultilabel(const OneVsAllModel& model, const FeatureVector& x,
                          bool hostile);
std::vector<ClassScore> ScoreClasses(const OneVsAllModel& model,
                                     const FeatureVector& x);

nlohmann::json ToJson(const TrainConfig& config);
TrainConfig TrainConfigFromJson(const nlohmann::json& j,
                                const TrainConfig& defaults = {});
nlohmann::json ToJson(const FeatureLayout& layout);
FeatureLayout LayoutFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const LinearModel& model);
LinearModel LinearModelFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const OneVsAllModel& model);
OneVsAllModel OneVsAllFromJson(const nlohmann::json& j);

}  // namespace hostility

#endif  // HOSTILITY_MODEL_H_
