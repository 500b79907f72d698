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

#ifndef HOSTILITY_PIPELINE_H_
#define HOSTILITY_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "hostility/corpus.h"
#include "hostility/ensemble.h"
#include "hostility/evalreport.h"
#include "hostility/lexfeat.h"
#include "hostility/model.h"
#include "hostility/preprocess.h"
#include "hostility/vectorize.h"

namespace hostility {

inline constexpr int kModelFormatVersion = 1;

struct FeatureConfig {
  bool tfidf = true;
  bool embed = false;
  bool bow = false;
  MetaFamilies meta{.m1 = true, .m2 = true, .m3 = true, .length = false};
  int min_df = 1;
  EntitySelectConfig bow_select;
  bool substring_match = false;

  // e.g. "tfidf+m1+m2+m3", "embed+bow+meta:none".
  std::string Tag() const;
  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

struct PipelineConfig {
  Language language = Language::kHindi;
  Task task = Task::kHostility;
  FeatureConfig features;
  TrainConfig coarse;
  TrainConfig fine{.class_weighting = ClassWeighting::kInverseFrequency};
  double fine_threshold = 0.5;

  // Throws ConfigError naming the offending field.
  void Validate() const;
  bool HasFineTask() const { return task == Task::kHostility; }
};

nlohmann::json ToJson(const FeatureConfig& config);
FeatureConfig FeatureConfigFromJson(const nlohmann::json& j,
                                    const FeatureConfig& defaults = {});
nlohmann::json ToJson(const PipelineConfig& config);
PipelineConfig PipelineConfigFromJson(const nlohmann::json& j,
                                      const PipelineConfig& defaults = {});
// Fingerprint of the canonical JSON form.
std::string ConfigHash(const PipelineConfig& config);

// Shared, read-only inputs of every stage.
struct Resources {
  Preprocessor preprocessor;
  Lexicon lexicon;
  std::shared_ptr<const EmbeddingTable> embeddings;  // null when unused
};

// A post after cleaning and counting, with its gold labels.
struct PreparedPost {
  std::string id;
  CoarseLabel coarse = CoarseLabel::kNonHostile;
  FineSet fine;
  CleanDoc doc;
  MetaFeatures meta;
};

std::vector<PreparedPost> PreparePosts(const Resources& resources,
                                       std::span<const LabeledPost> posts,
                                       bool substring_match = false);
// Distinct tokens, for restricting embedding loads.
std::unordered_set<std::string> CollectVocabulary(
    std::span<const PreparedPost> posts);

// Fitted feature extraction: optional embedding average (dense), TF-IDF
// and entity bag-of-words (sparse, in that order) and the scaled metadata
// block.
class Featurizer {
 public:
  Featurizer() = default;
  // Fits TF-IDF and the metadata scaler on `train`. Throws ConfigError when
  // embedding averaging is on but `embeddings` is null.
  static Featurizer Fit(const FeatureConfig& config,
                        std::span<const PreparedPost> train,
                        const EmbeddingTable* embeddings);

  // Throws ConfigError if the embedding table disagrees with the fitted
  // dimension.
  FeatureVector Transform(const PreparedPost& post,
                          const EmbeddingTable* embeddings) const;
  std::vector<FeatureVector> TransformAll(std::span<const PreparedPost> posts,
                                          const EmbeddingTable* embeddings) const;

  void SetEntityVocab(EntityVocab vocab);

  const FeatureConfig& config() const { return config_; }
  const FeatureLayout& layout() const { return layout_; }
  const std::optional<TfIdfModel>& tfidf() const { return tfidf_; }
  const EntityVocab& entity_vocab() const { return entities_; }
  const MetaScaler& scaler() const { return scaler_; }
  int embed_dim() const { return embed_dim_; }
  // Fingerprint of the TF-IDF and entity vocabularies.
  std::string VocabChecksum() const;

  nlohmann::json ToJson() const;
  static Featurizer FromJson(const nlohmann::json& j);

 private:
  void UpdateLayout();

  FeatureConfig config_;
  std::optional<TfIdfModel> tfidf_;
  EntityVocab entities_;
  MetaScaler scaler_;
  int embed_dim_ = 0;
  FeatureLayout layout_;
};

struct TrainedModel {
  PipelineConfig config;
  Featurizer featurizer;
  LinearModel coarse;
  std::optional<OneVsAllModel> fine;
  std::string lexicon_checksum;
  std::string embeddings_checksum;  // empty without embedding features
};

// Trains the coarse model and, for the hostility task, the fine one-vs-all
// model on the hostile training posts. Entity bag-of-words terms are
// selected from the validation posts a preliminary model gets wrong.
TrainedModel TrainPipeline(const PipelineConfig& config,
                           const Resources& resources,
                           std::span<const PreparedPost> train,
                           std::span<const PreparedPost> validation);

struct PostOutput {
  Prediction coarse_prediction;
  CoarseLabel coarse = CoarseLabel::kNonHostile;
  FineSet fine;
  std::vector<ClassScore> class_scores;
};

PostOutput PredictPost(const TrainedModel& model, const Resources& resources,
                       const PreparedPost& post);
std::vector<PostOutput> PredictAll(const TrainedModel& model,
                                   const Resources& resources,
                                   std::span<const PreparedPost> posts);

// Probability of the predicted coarse label; hinge scores go through the
// logistic link.
double Confidence(const Prediction& prediction);

struct Evaluation {
  EvalReport coarse;
  std::optional<EvalReport> fine;
};

Evaluation EvaluateOutputs(const TrainedModel& model,
                           std::span<const PreparedPost> posts,
                           std::span<const PostOutput> outputs, Split split);
Evaluation EvaluateModel(const TrainedModel& model, const Resources& resources,
                         std::span<const PreparedPost> posts, Split split);

// Versioned JSON document with a checksum over its payload.
std::string SerializeModel(const TrainedModel& model);
// Throws ChecksumError on a payload mismatch unless `force`, in which case a
// warning is emitted. Throws DataError on malformed documents.
TrainedModel ParseModel(std::string_view content, bool force = false);
TrainedModel LoadModel(const std::filesystem::path& path, bool force = false);
// Compares the lexicon and embedding checksums recorded in the model with
// the loaded resources, with the same `force` semantics.
void VerifyResources(const TrainedModel& model, const Resources& resources,
                     bool force = false);

struct GridPoint {
  double learning_rate = 0;
  double l2 = 0;
  int epochs = 0;
  double validation_f1 = 0;
};

struct GridResult {
  TrainedModel best;
  size_t best_index = 0;
  std::vector<GridPoint> log;
};

// Exhaustive search over the coarse training hyperparameters; the model
// with the highest validation weighted F1 is kept, earliest grid point on
// ties. Empty axes fall back to the configured value.
GridResult GridSearch(const PipelineConfig& config, const Resources& resources,
                      std::span<const PreparedPost> train,
                      std::span<const PreparedPost> validation,
                      std::span<const double> learning_rates,
                      std::span<const double> l2s, std::span<const int> epochs);
std::string GridLogTsv(const GridResult& result);

// The eight on/off combinations of m1, m2 and m3 over the configured base
// features, tagged "base", "base+m1", ..., "base+m1+m2+m3". Reports use the
// fine-grained evaluation when `fine_level` is set (hostility task only).
std::vector<AblationRun> RunAblation(const PipelineConfig& config,
                                     const Resources& resources,
                                     std::span<const PreparedPost> train,
                                     std::span<const PreparedPost> validation,
                                     std::span<const PreparedPost> eval,
                                     Split eval_split, bool fine_level);

// Trains on `train`, labels `unlabeled` with the model, adds posts whose
// confidence reaches `confidence_min` and retrains, `rounds` times. The
// coarse loss must be logistic.
TrainedModel TrainWithPseudoLabels(const PipelineConfig& config,
                                   const Resources& resources,
                                   const Corpus& train,
                                   std::span<const PreparedPost> validation,
                                   std::span<const LabeledPost> unlabeled,
                                   double confidence_min, int rounds = 1);

// Logistic head over member scores and the scaled metadata block.
class LinearStacker {
 public:
  // member_outputs[m][i] is member m's output for post i.
  static LinearStacker Fit(
      const std::vector<std::vector<PostOutput>>& member_outputs,
      std::span<const PreparedPost> posts, Task task, const TrainConfig& config);
  std::vector<CoarseLabel> Predict(
      const std::vector<std::vector<PostOutput>>& member_outputs,
      std::span<const PreparedPost> posts) const;
  const LinearModel& model() const { return model_; }

 private:
  std::vector<FeatureVector> Features(
      const std::vector<std::vector<PostOutput>>& member_outputs,
      std::span<const PreparedPost> posts) const;

  Task task_ = Task::kHostility;
  MetaScaler scaler_;
  LinearModel model_;
};

// Member-wise vote over coarse labels and, for the hostility task, over
// fine label sets. Fine sets are gated by the combined coarse label.
std::vector<PostOutput> CombineMembers(
    const std::vector<std::vector<PostOutput>>& member_outputs,
    const EnsembleSpec& spec, Task task);

std::vector<ScoredPrediction> ToScored(std::span<const PostOutput> outputs);

}  // namespace hostility

#endif  // HOSTILITY_PIPELINE_H_
