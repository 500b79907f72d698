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

#include "hostility/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hostility/error.h"
#include "hostility/log.h"
#include "strings.h"

namespace hostility {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void CheckFits(const FeatureVector& x, const FeatureLayout& layout) {
  if (static_cast<int>(x.dense.size()) != layout.dense_dim ||
      (x.sparse.nnz() > 0 &&
       static_cast<int>(x.sparse.indices.back()) >= layout.sparse_dim)) {
    throw std::invalid_argument("feature vector does not match model layout");
  }
}

// Dot product of a weight vector against a feature vector.
double Dot(const std::vector<double>& w, const FeatureVector& x,
           const FeatureLayout& layout) {
  double s = 0;
  for (int k = 0; k < layout.dense_dim; ++k) s += w[k] * x.dense[k];
  const int sparse_offset = layout.sparse_offset();
  for (size_t k = 0; k < x.sparse.nnz(); ++k) {
    s += w[sparse_offset + x.sparse.indices[k]] * x.sparse.values[k];
  }
  const int meta_offset = layout.meta_offset();
  for (int k = 0; k < kMetaDim; ++k) s += w[meta_offset + k] * x.meta[k];
  return s;
}

void AddScaled(std::vector<double>* w, double factor, const FeatureVector& x,
               const FeatureLayout& layout) {
  for (int k = 0; k < layout.dense_dim; ++k) (*w)[k] += factor * x.dense[k];
  const int sparse_offset = layout.sparse_offset();
  for (size_t k = 0; k < x.sparse.nnz(); ++k) {
    (*w)[sparse_offset + x.sparse.indices[k]] += factor * x.sparse.values[k];
  }
  const int meta_offset = layout.meta_offset();
  for (int k = 0; k < kMetaDim; ++k) (*w)[meta_offset + k] += factor * x.meta[k];
}

}  // namespace

std::string_view Name(Loss loss) {
  return loss == Loss::kLogistic ? "logistic" : "hinge";
}

std::string_view Name(ClassWeighting weighting) {
  return weighting == ClassWeighting::kNone ? "none" : "inverse_frequency";
}

Loss ParseLoss(std::string_view text) {
  std::string s = internal::AsciiLower(internal::Trim(text));
  if (s == "logistic" || s == "log") return Loss::kLogistic;
  if (s == "hinge" || s == "svm") return Loss::kHinge;
  throw ConfigError("unknown loss: '" + std::string(text) + "'");
}

ClassWeighting ParseClassWeighting(std::string_view text) {
  std::string s = internal::AsciiLower(internal::Trim(text));
  if (s == "none") return ClassWeighting::kNone;
  if (s == "inverse_frequency" || s == "balanced") {
    return ClassWeighting::kInverseFrequency;
  }
  throw ConfigError("unknown class_weighting: '" + std::string(text) + "'");
}

void TrainConfig::Validate() const {
  if (!(learning_rate > 0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be > 0");
  }
  if (epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(l2 >= 0) || !std::isfinite(l2)) throw ConfigError("l2 must be >= 0");
}

LinearModel::LinearModel(std::vector<double> weights, double bias,
                         TrainConfig config, FeatureLayout layout)
    : weights_(std::move(weights)),
      bias_(bias),
      config_(config),
      layout_(layout) {
  if (static_cast<int>(weights_.size()) != layout_.total()) {
    throw std::invalid_argument("weight length does not match layout");
  }
}

double LinearModel::Score(const FeatureVector& x) const {
  CheckFits(x, layout_);
  return Dot(weights_, x, layout_) + bias_;
}

Prediction LinearModel::Predict(const FeatureVector& x) const {
  Prediction p;
  p.score = Score(x);
  p.positive = p.score > 0;
  if (config_.loss == Loss::kLogistic) p.probability = Sigmoid(p.score);
  return p;
}

uint64_t SeededShuffler::Below(uint64_t bound) {
  const uint64_t limit = engine_.max() - engine_.max() % bound;
  uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

void SeededShuffler::Shuffle(std::vector<size_t>* items) {
  for (size_t i = items->size(); i > 1; --i) {
    std::swap((*items)[i - 1], (*items)[Below(i)]);
  }
}

LinearModel TrainLinear(std::span<const FeatureVector> features,
                        std::span<const uint8_t> labels,
                        const FeatureLayout& layout,
                        const TrainConfig& config) {
  config.Validate();
  if (features.empty()) throw std::invalid_argument("no training examples");
  if (features.size() != labels.size()) {
    throw std::invalid_argument("features and labels differ in length");
  }
  for (const FeatureVector& x : features) CheckFits(x, layout);

  const size_t n = features.size();
  size_t positives = 0;
  for (uint8_t y : labels) positives += y ? 1 : 0;
  double weight_pos = 1.0, weight_neg = 1.0;
  if (config.class_weighting == ClassWeighting::kInverseFrequency) {
    if (positives > 0) weight_pos = n / (2.0 * positives);
    if (positives < n) weight_neg = n / (2.0 * (n - positives));
  }

  // w = scale * v keeps the L2 shrink O(1) per step with sparse inputs.
  std::vector<double> v(layout.total(), 0.0);
  double scale = 1.0;
  double bias = 0.0;
  std::vector<size_t> order(n);
  SeededShuffler shuffler(config.seed);
  uint64_t t = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (size_t i = 0; i < n; ++i) order[i] = i;
    shuffler.Shuffle(&order);
    for (size_t i : order) {
      const FeatureVector& x = features[i];
      const double y = labels[i] ? 1.0 : -1.0;
      const double class_weight = labels[i] ? weight_pos : weight_neg;
      const double score = scale * Dot(v, x, layout) + bias;
      const double eta =
          config.learning_rate / (1.0 + config.l2 * config.learning_rate * t);

      double grad;
      if (config.loss == Loss::kLogistic) {
        grad = -y * Sigmoid(-y * score);
      } else {
        grad = y * score < 1.0 ? -y : 0.0;
      }

      scale *= std::max(1.0 - eta * config.l2, 1e-12);
      if (grad != 0.0) {
        AddScaled(&v, -eta * class_weight * grad / scale, x, layout);
        bias -= eta * class_weight * grad;
      }
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
      ++t;
    }
  }
  for (double& w : v) w *= scale;
  return LinearModel(std::move(v), bias, config, layout);
}

OneVsAllModel TrainOneVsAll(std::span<const FeatureVector> features,
                            std::span<const FineSet> labels,
                            const FeatureLayout& layout,
                            const TrainConfig& config, double threshold) {
  if (features.size() != labels.size()) {
    throw std::invalid_argument("features and label sets differ in length");
  }
  OneVsAllModel model;
  model.threshold = threshold;
  std::vector<uint8_t> binary(labels.size());
  for (FineLabel c : kAllFineLabels) {
    size_t positives = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
      binary[i] = labels[i].contains(c) ? 1 : 0;
      positives += binary[i];
    }
    if (positives == 0) {
      Warn("class '" + std::string(Name(c)) +
           "' has no training posts; its model is trained on negatives only");
    }
    model.submodels[static_cast<int>(c)] =
        TrainLinear(features, binary, layout, config);
  }
  return model;
}

FineSet DecideMultilabel(std::span<const ClassScore> scores, bool hostile,
                         double threshold) {
  FineSet out;
  if (!hostile || scores.empty()) return out;
  const ClassScore* best = nullptr;
  for (const ClassScore& s : scores) {
    const bool pass = s.probability ? *s.probability >= threshold : s.score > 0;
    if (pass) out.insert(s.label);
    if (best == nullptr || s.score > best->score) best = &s;
  }
  if (out.empty()) out.insert(best->label);
  return out;
}

std::vector<ClassScore> ScoreClasses(const OneVsAllModel& model,
                                     const FeatureVector& x) {
  std::vector<ClassScore> scores;
  for (FineLabel c : kAllFineLabels) {
    const auto& sub = model.submodels[static_cast<int>(c)];
    if (!sub) continue;
    Prediction p = sub->Predict(x);
    scores.push_back({c, p.score, p.probability});
  }
  return scores;
}

FineSet PredictMultilabel(const OneVsAllModel& model, const FeatureVector& x,
                          bool hostile) {
  if (!hostile) return FineSet();
  const std::vector<ClassScore> scores = ScoreClasses(model, x);
  return DecideMultilabel(scores, hostile, model.threshold);
}

nlohmann::json ToJson(const TrainConfig& config) {
  return {{"loss", Name(config.loss)},
          {"l2", config.l2},
          {"learning_rate", config.learning_rate},
          {"epochs", config.epochs},
          {"seed", config.seed},
          {"class_weighting", Name(config.class_weighting)}};
}

TrainConfig TrainConfigFromJson(const nlohmann::json& j,
                                const TrainConfig& defaults) {
  TrainConfig config = defaults;
  try {
    if (j.contains("loss")) config.loss = ParseLoss(j.at("loss").get<std::string>());
    if (j.contains("l2")) config.l2 = j.at("l2").get<double>();
    if (j.contains("learning_rate")) {
      config.learning_rate = j.at("learning_rate").get<double>();
    }
    if (j.contains("epochs")) config.epochs = j.at("epochs").get<int>();
    if (j.contains("seed")) config.seed = j.at("seed").get<uint64_t>();
    if (j.contains("class_weighting")) {
      config.class_weighting =
          ParseClassWeighting(j.at("class_weighting").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("train config: ") + e.what());
  }
  config.Validate();
  return config;
}

nlohmann::json ToJson(const FeatureLayout& layout) {
  return {{"dense", layout.dense_dim},
          {"sparse", layout.sparse_dim},
          {"meta", layout.meta_dim}};
}

FeatureLayout LayoutFromJson(const nlohmann::json& j) {
  FeatureLayout layout;
  layout.dense_dim = j.at("dense").get<int>();
  layout.sparse_dim = j.at("sparse").get<int>();
  layout.meta_dim = j.at("meta").get<int>();
  return layout;
}

nlohmann::json ToJson(const LinearModel& model) {
  return {{"weights", model.weights()},
          {"bias", model.bias()},
          {"config", ToJson(model.config())},
          {"layout", ToJson(model.layout())}};
}

LinearModel LinearModelFromJson(const nlohmann::json& j) {
  try {
    return LinearModel(j.at("weights").get<std::vector<double>>(),
                       j.at("bias").get<double>(),
                       TrainConfigFromJson(j.at("config")),
                       LayoutFromJson(j.at("layout")));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad linear model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("bad linear model: ") + e.what());
  }
}

nlohmann::json ToJson(const OneVsAllModel& model) {
  nlohmann::json classes = nlohmann::json::array();
  for (FineLabel c : kAllFineLabels) {
    const auto& sub = model.submodels[static_cast<int>(c)];
    if (!sub) continue;
    nlohmann::json entry = ToJson(*sub);
    entry["class"] = Name(c);
    classes.push_back(std::move(entry));
  }
  return {{"threshold", model.threshold}, {"classes", classes}};
}

OneVsAllModel OneVsAllFromJson(const nlohmann::json& j) {
  OneVsAllModel model;
  try {
    model.threshold = j.at("threshold").get<double>();
    for (const auto& entry : j.at("classes")) {
      const std::string name = entry.at("class").get<std::string>();
      bool found = false;
      for (FineLabel c : kAllFineLabels) {
        if (Name(c) == name) {
          model.submodels[static_cast<int>(c)] = LinearModelFromJson(entry);
          found = true;
        }
      }
      if (!found) throw DataError("unknown fine class in model: " + name);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad one-vs-all model: ") + e.what());
  }
  return model;
}

}  // namespace hostility
