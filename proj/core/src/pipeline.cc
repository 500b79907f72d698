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

#include "hostility/pipeline.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hostility/error.h"
#include "hostility/hash.h"
#include "hostility/log.h"

namespace hostility {

namespace {

using nlohmann::json;

template <typename T>
T Get(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<CoarseLabel> GoldCoarse(std::span<const PreparedPost> posts) {
  std::vector<CoarseLabel> out;
  out.reserve(posts.size());
  for (const PreparedPost& p : posts) out.push_back(p.coarse);
  return out;
}

std::vector<uint8_t> BinaryLabels(std::span<const PreparedPost> posts) {
  std::vector<uint8_t> out;
  out.reserve(posts.size());
  for (const PreparedPost& p : posts) out.push_back(IsPositive(p.coarse) ? 1 : 0);
  return out;
}

const EmbeddingTable* EmbeddingsFor(const FeatureConfig& features,
                                    const Resources& resources) {
  return features.embed ? resources.embeddings.get() : nullptr;
}

CoarseLabel LabelOf(bool positive, Task task) {
  return positive ? PositiveLabel(task) : NegativeLabel(task);
}

json EntityVocabToJson(const EntityVocab& vocab) {
  json out = json::array();
  for (size_t i = 0; i < vocab.size(); ++i) {
    const EntityScore& s = vocab.scores()[i];
    out.push_back({{"term", vocab.terms()[i]},
                   {"class", Name(s.label)},
                   {"misclassified", s.misclassified},
                   {"own_train", s.own_train},
                   {"other_train", s.other_train}});
  }
  return out;
}

CoarseLabel ParseCoarseName(const std::string& name) {
  for (CoarseLabel l : {CoarseLabel::kNonHostile, CoarseLabel::kHostile,
                        CoarseLabel::kReal, CoarseLabel::kFake}) {
    if (Name(l) == name) return l;
  }
  throw DataError("unknown coarse label '" + name + "' in model file");
}

EntityVocab EntityVocabFromJson(const json& j) {
  std::vector<std::string> terms;
  std::vector<EntityScore> scores;
  for (const json& e : j) {
    terms.push_back(e.at("term").get<std::string>());
    EntityScore s;
    s.label = ParseCoarseName(e.at("class").get<std::string>());
    s.misclassified = e.at("misclassified").get<double>();
    s.own_train = e.at("own_train").get<double>();
    s.other_train = e.at("other_train").get<double>();
    scores.push_back(s);
  }
  return EntityVocab(std::move(terms), std::move(scores));
}

void CheckOrForce(bool ok, const std::string& what, bool force) {
  if (ok) return;
  if (!force) throw ChecksumError(what);
  Warn(what + " (ignored: forced)");
}

}  // namespace

std::string FeatureConfig::Tag() const {
  std::string tag;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!tag.empty()) tag.push_back('+');
    tag += name;
  };
  add(embed, "embed");
  add(tfidf, "tfidf");
  add(bow, "bow");
  if (meta.any()) {
    add(true, meta.Tag().c_str());
  } else {
    add(true, "meta:none");
  }
  return tag;
}

void PipelineConfig::Validate() const {
  coarse.Validate();
  fine.Validate();
  if (!(fine_threshold > 0.0 && fine_threshold < 1.0)) {
    throw ConfigError("fine_threshold: must lie in (0, 1)");
  }
  if (features.min_df < 1) throw ConfigError("features.min_df: must be >= 1");
  if (features.bow_select.top_k < 0) {
    throw ConfigError("features.bow_top_k: must be >= 0");
  }
  if (features.bow_select.ratio_min < 0) {
    throw ConfigError("features.bow_ratio_min: must be >= 0");
  }
  if (!features.tfidf && !features.embed && !features.bow &&
      !features.meta.any()) {
    throw ConfigError("features: every feature block is disabled");
  }
  if (language == Language::kEnglish && task == Task::kHostility) {
    throw ConfigError("task: hostility labels exist for Hindi only");
  }
}

json ToJson(const FeatureConfig& c) {
  return {{"tfidf", c.tfidf},
          {"embed", c.embed},
          {"bow", c.bow},
          {"m1", c.meta.m1},
          {"m2", c.meta.m2},
          {"m3", c.meta.m3},
          {"length", c.meta.length},
          {"min_df", c.min_df},
          {"bow_top_k", c.bow_select.top_k},
          {"bow_ratio_min", c.bow_select.ratio_min},
          {"bow_epsilon", c.bow_select.epsilon},
          {"substring_match", c.substring_match}};
}

FeatureConfig FeatureConfigFromJson(const json& j,
                                    const FeatureConfig& defaults) {
  if (!j.is_object()) throw ConfigError("features: expected an object");
  FeatureConfig c = defaults;
  c.tfidf = Get(j, "tfidf", c.tfidf);
  c.embed = Get(j, "embed", c.embed);
  c.bow = Get(j, "bow", c.bow);
  c.meta.m1 = Get(j, "m1", c.meta.m1);
  c.meta.m2 = Get(j, "m2", c.meta.m2);
  c.meta.m3 = Get(j, "m3", c.meta.m3);
  c.meta.length = Get(j, "length", c.meta.length);
  c.min_df = Get(j, "min_df", c.min_df);
  c.bow_select.top_k = Get(j, "bow_top_k", c.bow_select.top_k);
  c.bow_select.ratio_min = Get(j, "bow_ratio_min", c.bow_select.ratio_min);
  c.bow_select.epsilon = Get(j, "bow_epsilon", c.bow_select.epsilon);
  c.substring_match = Get(j, "substring_match", c.substring_match);
  return c;
}

json ToJson(const PipelineConfig& c) {
  return {{"language", Name(c.language)},
          {"task", Name(c.task)},
          {"features", ToJson(c.features)},
          {"coarse", ToJson(c.coarse)},
          {"fine", ToJson(c.fine)},
          {"fine_threshold", c.fine_threshold}};
}

PipelineConfig PipelineConfigFromJson(const json& j,
                                      const PipelineConfig& defaults) {
  if (!j.is_object()) throw ConfigError("config: expected an object");
  PipelineConfig c = defaults;
  try {
    if (j.contains("language")) {
      c.language = ParseLanguage(j.at("language").get<std::string>());
    }
    if (j.contains("task")) c.task = ParseTask(j.at("task").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("language/task: ") + e.what());
  }
  if (j.contains("features")) {
    c.features = FeatureConfigFromJson(j.at("features"), c.features);
  }
  if (j.contains("coarse")) c.coarse = TrainConfigFromJson(j.at("coarse"), c.coarse);
  if (j.contains("fine")) c.fine = TrainConfigFromJson(j.at("fine"), c.fine);
  c.fine_threshold = Get(j, "fine_threshold", c.fine_threshold);
  c.Validate();
  return c;
}

std::string ConfigHash(const PipelineConfig& config) {
  return HashHex(ToJson(config).dump());
}

std::vector<PreparedPost> PreparePosts(const Resources& resources,
                                       std::span<const LabeledPost> posts,
                                       bool substring_match) {
  std::vector<PreparedPost> out;
  out.reserve(posts.size());
  for (const LabeledPost& post : posts) {
    PreparedPost p;
    p.id = post.id;
    p.coarse = post.coarse;
    p.fine = post.fine;
    p.doc = resources.preprocessor.Clean(post.text);
    p.meta = MetaVector(p.doc, resources.lexicon, substring_match);
    out.push_back(std::move(p));
  }
  return out;
}

std::unordered_set<std::string> CollectVocabulary(
    std::span<const PreparedPost> posts) {
  std::unordered_set<std::string> vocab;
  for (const PreparedPost& p : posts) {
    vocab.insert(p.doc.tokens.begin(), p.doc.tokens.end());
  }
  return vocab;
}

Featurizer Featurizer::Fit(const FeatureConfig& config,
                           std::span<const PreparedPost> train,
                           const EmbeddingTable* embeddings) {
  Featurizer f;
  f.config_ = config;
  if (config.embed) {
    if (embeddings == nullptr) {
      throw ConfigError("embeddings: embedding features need an embedding file");
    }
    f.embed_dim_ = embeddings->dim();
  }
  if (config.tfidf) {
    std::vector<TokenList> docs;
    docs.reserve(train.size());
    for (const PreparedPost& p : train) docs.push_back(p.doc.tokens);
    f.tfidf_ = TfIdfModel::Fit(docs, config.min_df);
  }
  std::vector<MetaFeatures> meta;
  meta.reserve(train.size());
  for (const PreparedPost& p : train) meta.push_back(p.meta);
  f.scaler_ = MetaScaler::Fit(meta);
  f.UpdateLayout();
  return f;
}

void Featurizer::UpdateLayout() {
  layout_.dense_dim = embed_dim_;
  layout_.sparse_dim = static_cast<int>((tfidf_ ? tfidf_->size() : 0) +
                                        entities_.size());
  layout_.meta_dim = kMetaDim;
}

void Featurizer::SetEntityVocab(EntityVocab vocab) {
  entities_ = std::move(vocab);
  UpdateLayout();
}

FeatureVector Featurizer::Transform(const PreparedPost& post,
                                    const EmbeddingTable* embeddings) const {
  std::vector<double> dense;
  if (config_.embed) {
    if (embeddings == nullptr) {
      throw ConfigError("embeddings: model uses embedding features but none are loaded");
    }
    if (embeddings->dim() != embed_dim_) {
      throw ConfigError("embeddings: dimension " +
                        std::to_string(embeddings->dim()) +
                        " does not match the model's " +
                        std::to_string(embed_dim_));
    }
    dense = EmbedAverage(*embeddings, post.doc.tokens);
  }
  SparseVector sparse;
  if (tfidf_) sparse = tfidf_->Transform(post.doc.tokens);
  if (!entities_.empty()) {
    AppendShifted(&sparse, entities_.Bow(post.doc.tokens),
                  static_cast<uint32_t>(tfidf_ ? tfidf_->size() : 0));
  }
  return Assemble(std::move(dense), std::move(sparse),
                  scaler_.Apply(post.meta, config_.meta), layout_);
}

std::vector<FeatureVector> Featurizer::TransformAll(
    std::span<const PreparedPost> posts,
    const EmbeddingTable* embeddings) const {
  std::vector<FeatureVector> out;
  out.reserve(posts.size());
  for (const PreparedPost& p : posts) out.push_back(Transform(p, embeddings));
  return out;
}

std::string Featurizer::VocabChecksum() const {
  Fnv1a h;
  if (tfidf_) {
    for (const std::string& t : tfidf_->terms()) h.Update(t).Update("\n");
  }
  h.Update("\x1f");
  for (const std::string& t : entities_.terms()) h.Update(t).Update("\n");
  return h.hex();
}

json Featurizer::ToJson() const {
  json j;
  j["config"] = hostility::ToJson(config_);
  j["embed_dim"] = embed_dim_;
  if (tfidf_) {
    j["tfidf"] = {{"terms", tfidf_->terms()},
                  {"idf", tfidf_->idf()},
                  {"doc_count", tfidf_->doc_count()}};
  } else {
    j["tfidf"] = nullptr;
  }
  j["entities"] = EntityVocabToJson(entities_);
  j["meta_min"] = scaler_.min();
  j["meta_max"] = scaler_.max();
  j["layout"] = hostility::ToJson(layout_);
  return j;
}

Featurizer Featurizer::FromJson(const json& j) {
  Featurizer f;
  f.config_ = FeatureConfigFromJson(j.at("config"));
  f.embed_dim_ = j.at("embed_dim").get<int>();
  if (!j.at("tfidf").is_null()) {
    const json& t = j.at("tfidf");
    f.tfidf_ = TfIdfModel::FromParts(t.at("terms").get<std::vector<std::string>>(),
                                     t.at("idf").get<std::vector<double>>(),
                                     t.at("doc_count").get<size_t>());
  }
  f.entities_ = EntityVocabFromJson(j.at("entities"));
  f.scaler_ = MetaScaler::FromBounds(
      j.at("meta_min").get<std::array<double, kMetaDim>>(),
      j.at("meta_max").get<std::array<double, kMetaDim>>());
  f.UpdateLayout();
  if (!(f.layout_ == LayoutFromJson(j.at("layout")))) {
    throw DataError("model file: feature layout does not match its vocabularies");
  }
  return f;
}

TrainedModel TrainPipeline(const PipelineConfig& config,
                           const Resources& resources,
                           std::span<const PreparedPost> train,
                           std::span<const PreparedPost> validation) {
  config.Validate();
  if (train.empty()) throw DataError("training split is empty");
  const EmbeddingTable* embeddings = EmbeddingsFor(config.features, resources);

  TrainedModel model;
  model.config = config;
  model.featurizer = Featurizer::Fit(config.features, train, embeddings);
  model.lexicon_checksum = resources.lexicon.Checksum();
  if (embeddings != nullptr) model.embeddings_checksum = embeddings->checksum();

  const std::vector<uint8_t> labels = BinaryLabels(train);

  if (config.features.bow) {
    if (validation.empty()) {
      Warn("entity selection: no validation posts; bag-of-words block is empty");
    } else {
      const Featurizer& base = model.featurizer;
      const LinearModel preliminary =
          TrainLinear(base.TransformAll(train, embeddings), labels,
                      base.layout(), config.coarse);
      std::vector<TaggedDoc> tagged_train, missed;
      for (const PreparedPost& p : train) {
        tagged_train.push_back({p.coarse, p.doc.tokens});
      }
      for (const PreparedPost& p : validation) {
        const bool positive =
            preliminary.Predict(base.Transform(p, embeddings)).positive;
        if (positive != IsPositive(p.coarse)) {
          missed.push_back({p.coarse, p.doc.tokens});
        }
      }
      model.featurizer.SetEntityVocab(SelectEntityTerms(
          tagged_train, missed, config.features.bow_select));
    }
  }

  const Featurizer& featurizer = model.featurizer;
  const std::vector<FeatureVector> features =
      featurizer.TransformAll(train, embeddings);
  model.coarse =
      TrainLinear(features, labels, featurizer.layout(), config.coarse);

  if (config.HasFineTask()) {
    std::vector<FeatureVector> hostile_x;
    std::vector<FineSet> hostile_y;
    for (size_t i = 0; i < train.size(); ++i) {
      if (!IsPositive(train[i].coarse)) continue;
      hostile_x.push_back(features[i]);
      hostile_y.push_back(train[i].fine);
    }
    if (hostile_x.empty()) {
      Warn("no hostile training posts; fine-grained model not trained");
    } else {
      model.fine = TrainOneVsAll(hostile_x, hostile_y, featurizer.layout(),
                                 config.fine, config.fine_threshold);
    }
  }
  return model;
}

PostOutput PredictPost(const TrainedModel& model, const Resources& resources,
                       const PreparedPost& post) {
  const FeatureVector x = model.featurizer.Transform(
      post, EmbeddingsFor(model.config.features, resources));
  PostOutput out;
  out.coarse_prediction = model.coarse.Predict(x);
  out.coarse = LabelOf(out.coarse_prediction.positive, model.config.task);
  if (model.fine) {
    out.class_scores = ScoreClasses(*model.fine, x);
    out.fine = DecideMultilabel(out.class_scores, out.coarse_prediction.positive,
                                model.fine->threshold);
  }
  return out;
}

std::vector<PostOutput> PredictAll(const TrainedModel& model,
                                   const Resources& resources,
                                   std::span<const PreparedPost> posts) {
  std::vector<PostOutput> out;
  out.reserve(posts.size());
  for (const PreparedPost& p : posts) out.push_back(PredictPost(model, resources, p));
  return out;
}

double Confidence(const Prediction& prediction) {
  const double p = prediction.probability.value_or(Sigmoid(prediction.score));
  return prediction.positive ? p : 1.0 - p;
}

Evaluation EvaluateOutputs(const TrainedModel& model,
                           std::span<const PreparedPost> posts,
                           std::span<const PostOutput> outputs, Split split) {
  if (posts.size() != outputs.size()) {
    throw std::invalid_argument("posts and outputs differ in length");
  }
  std::vector<CoarseLabel> predicted;
  for (const PostOutput& o : outputs) predicted.push_back(o.coarse);
  const std::vector<CoarseLabel> gold = GoldCoarse(posts);
  const std::string hash = ConfigHash(model.config);

  Evaluation eval;
  eval.coarse = EvaluateCoarse(gold, predicted, model.config.task, split);
  eval.coarse.config_hash = hash;
  eval.coarse.seed = model.config.coarse.seed;
  if (model.config.HasFineTask()) {
    std::vector<FineSet> fine_gold, fine_pred;
    for (size_t i = 0; i < posts.size(); ++i) {
      fine_gold.push_back(posts[i].fine);
      fine_pred.push_back(outputs[i].fine);
    }
    eval.fine = EvaluateFine(fine_gold, fine_pred, split);
    eval.fine->config_hash = hash;
    eval.fine->seed = model.config.fine.seed;
  }
  return eval;
}

Evaluation EvaluateModel(const TrainedModel& model, const Resources& resources,
                         std::span<const PreparedPost> posts, Split split) {
  const std::vector<PostOutput> outputs = PredictAll(model, resources, posts);
  return EvaluateOutputs(model, posts, outputs, split);
}

std::string SerializeModel(const TrainedModel& model) {
  json payload;
  payload["config"] = ToJson(model.config);
  payload["featurizer"] = model.featurizer.ToJson();
  payload["coarse"] = ToJson(model.coarse);
  payload["fine"] = model.fine ? ToJson(*model.fine) : json(nullptr);
  payload["checksums"] = {{"lexicon", model.lexicon_checksum},
                          {"vocab", model.featurizer.VocabChecksum()},
                          {"embeddings", model.embeddings_checksum}};
  const std::string payload_text = payload.dump();
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["task"] = Name(model.config.task);
  doc["language"] = Name(model.config.language);
  doc["payload_checksum"] = HashHex(payload_text);
  doc["payload"] = std::move(payload);
  return doc.dump(1) + "\n";
}

TrainedModel ParseModel(std::string_view content, bool force) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::exception& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("unsupported model format_version " +
                      std::to_string(version));
    }
    const json& payload = doc.at("payload");
    CheckOrForce(HashHex(payload.dump()) ==
                     doc.at("payload_checksum").get<std::string>(),
                 "model payload checksum mismatch", force);

    TrainedModel model;
    model.config = PipelineConfigFromJson(payload.at("config"));
    model.featurizer = Featurizer::FromJson(payload.at("featurizer"));
    model.coarse = LinearModelFromJson(payload.at("coarse"));
    if (!payload.at("fine").is_null()) {
      model.fine = OneVsAllFromJson(payload.at("fine"));
    }
    const json& sums = payload.at("checksums");
    model.lexicon_checksum = sums.at("lexicon").get<std::string>();
    model.embeddings_checksum = sums.at("embeddings").get<std::string>();
    CheckOrForce(sums.at("vocab").get<std::string>() ==
                     model.featurizer.VocabChecksum(),
                 "model vocabulary checksum mismatch", force);
    if (!(model.coarse.layout() == model.featurizer.layout())) {
      throw DataError("model file: coarse model layout differs from featurizer");
    }
    if (model.fine) {
      for (const auto& sub : model.fine->submodels) {
        if (sub && !(sub->layout() == model.featurizer.layout())) {
          throw DataError("model file: fine model layout differs from featurizer");
        }
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

TrainedModel LoadModel(const std::filesystem::path& path, bool force) {
  return ParseModel(ReadFile(path), force);
}

void VerifyResources(const TrainedModel& model, const Resources& resources,
                     bool force) {
  CheckOrForce(model.lexicon_checksum == resources.lexicon.Checksum(),
               "lexicon checksum differs from the one the model was trained with",
               force);
  if (model.config.features.embed) {
    if (!resources.embeddings) {
      throw ConfigError("embeddings: model uses embedding features but none are loaded");
    }
    CheckOrForce(
        model.embeddings_checksum == resources.embeddings->checksum(),
        "embedding file checksum differs from the one the model was trained with",
        force);
  }
}

GridResult GridSearch(const PipelineConfig& config, const Resources& resources,
                      std::span<const PreparedPost> train,
                      std::span<const PreparedPost> validation,
                      std::span<const double> learning_rates,
                      std::span<const double> l2s, std::span<const int> epochs) {
  if (validation.empty()) {
    throw DataError("grid search needs a non-empty validation split");
  }
  const std::vector<double> lr_axis =
      learning_rates.empty() ? std::vector<double>{config.coarse.learning_rate}
                             : std::vector<double>(learning_rates.begin(),
                                                   learning_rates.end());
  const std::vector<double> l2_axis =
      l2s.empty() ? std::vector<double>{config.coarse.l2}
                  : std::vector<double>(l2s.begin(), l2s.end());
  const std::vector<int> epoch_axis =
      epochs.empty() ? std::vector<int>{config.coarse.epochs}
                     : std::vector<int>(epochs.begin(), epochs.end());

  GridResult result;
  bool have_best = false;
  for (double lr : lr_axis) {
    for (double l2 : l2_axis) {
      for (int ep : epoch_axis) {
        PipelineConfig point = config;
        point.coarse.learning_rate = lr;
        point.coarse.l2 = l2;
        point.coarse.epochs = ep;
        TrainedModel model = TrainPipeline(point, resources, train, validation);
        const double f1 =
            EvaluateModel(model, resources, validation, Split::kValidation)
                .coarse.weighted_f1;
        result.log.push_back({lr, l2, ep, f1});
        if (!have_best || f1 > result.log[result.best_index].validation_f1) {
          result.best_index = result.log.size() - 1;
          result.best = std::move(model);
          have_best = true;
        }
      }
    }
  }
  return result;
}

std::string GridLogTsv(const GridResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "learning_rate\tl2\tepochs\tvalidation_f1\tselected\n";
  for (size_t i = 0; i < result.log.size(); ++i) {
    const GridPoint& p = result.log[i];
    out << p.learning_rate << '\t' << p.l2 << '\t' << p.epochs << '\t'
        << p.validation_f1 << '\t' << (i == result.best_index ? "*" : "")
        << '\n';
  }
  return out.str();
}

std::vector<AblationRun> RunAblation(const PipelineConfig& config,
                                     const Resources& resources,
                                     std::span<const PreparedPost> train,
                                     std::span<const PreparedPost> validation,
                                     std::span<const PreparedPost> eval,
                                     Split eval_split, bool fine_level) {
  if (fine_level && !config.HasFineTask()) {
    throw ConfigError("ablate: fine-grained level needs the hostility task");
  }
  std::vector<AblationRun> runs;
  for (int mask = 0; mask < 8; ++mask) {
    PipelineConfig run = config;
    run.features.meta.m1 = mask & 1;
    run.features.meta.m2 = mask & 2;
    run.features.meta.m3 = mask & 4;
    std::string tag = "base";
    if (run.features.meta.m1) tag += "+m1";
    if (run.features.meta.m2) tag += "+m2";
    if (run.features.meta.m3) tag += "+m3";
    if (!run.features.tfidf && !run.features.embed && !run.features.bow &&
        !run.features.meta.any()) {
      throw ConfigError("ablate: base features are empty; enable tfidf, embed or bow");
    }
    const TrainedModel model = TrainPipeline(run, resources, train, validation);
    Evaluation e = EvaluateModel(model, resources, eval, eval_split);
    runs.push_back({tag, fine_level ? *e.fine : e.coarse});
  }
  return runs;
}

TrainedModel TrainWithPseudoLabels(const PipelineConfig& config,
                                   const Resources& resources,
                                   const Corpus& train,
                                   std::span<const PreparedPost> validation,
                                   std::span<const LabeledPost> unlabeled,
                                   double confidence_min, int rounds) {
  if (config.coarse.loss != Loss::kLogistic) {
    throw ConfigError("coarse.loss: pseudo-labelling needs the logistic loss");
  }
  if (rounds < 0) throw ConfigError("pseudo_rounds: must be >= 0");
  const bool substring = config.features.substring_match;
  Corpus current = train;
  TrainedModel model = TrainPipeline(
      config, resources, PreparePosts(resources, current.posts, substring),
      validation);
  for (int round = 0; round < rounds; ++round) {
    const PostPredictor predict = [&](const LabeledPost& post) {
      const PreparedPost prepared =
          PreparePosts(resources, std::span(&post, 1), substring).front();
      const PostOutput out = PredictPost(model, resources, prepared);
      return ScoredPrediction{out.coarse, out.fine,
                              Confidence(out.coarse_prediction)};
    };
    current = PseudoLabel(train, unlabeled, predict, confidence_min);
    model = TrainPipeline(config, resources,
                          PreparePosts(resources, current.posts, substring),
                          validation);
  }
  return model;
}

std::vector<FeatureVector> LinearStacker::Features(
    const std::vector<std::vector<PostOutput>>& member_outputs,
    std::span<const PreparedPost> posts) const {
  const FeatureLayout layout{static_cast<int>(member_outputs.size()), 0,
                             kMetaDim};
  const MetaFamilies all;
  std::vector<FeatureVector> out;
  out.reserve(posts.size());
  for (size_t i = 0; i < posts.size(); ++i) {
    std::vector<double> dense;
    for (const auto& member : member_outputs) {
      if (member.size() != posts.size()) {
        throw std::invalid_argument("member outputs and posts differ in length");
      }
      dense.push_back(member[i].coarse_prediction.score);
    }
    out.push_back(Assemble(std::move(dense), {}, scaler_.Apply(posts[i].meta, all),
                           layout));
  }
  return out;
}

LinearStacker LinearStacker::Fit(
    const std::vector<std::vector<PostOutput>>& member_outputs,
    std::span<const PreparedPost> posts, Task task, const TrainConfig& config) {
  if (member_outputs.empty()) throw ConfigError("ensemble: no members to stack");
  if (posts.empty()) throw DataError("stacker needs at least one post");
  LinearStacker s;
  s.task_ = task;
  std::vector<MetaFeatures> meta;
  for (const PreparedPost& p : posts) meta.push_back(p.meta);
  s.scaler_ = MetaScaler::Fit(meta);
  TrainConfig logistic = config;
  logistic.loss = Loss::kLogistic;
  const FeatureLayout layout{static_cast<int>(member_outputs.size()), 0,
                             kMetaDim};
  s.model_ = TrainLinear(s.Features(member_outputs, posts), BinaryLabels(posts),
                         layout, logistic);
  return s;
}

std::vector<CoarseLabel> LinearStacker::Predict(
    const std::vector<std::vector<PostOutput>>& member_outputs,
    std::span<const PreparedPost> posts) const {
  std::vector<CoarseLabel> out;
  for (const FeatureVector& x : Features(member_outputs, posts)) {
    out.push_back(LabelOf(model_.Predict(x).positive, task_));
  }
  return out;
}

std::vector<PostOutput> CombineMembers(
    const std::vector<std::vector<PostOutput>>& member_outputs,
    const EnsembleSpec& spec, Task task) {
  spec.Validate();
  if (member_outputs.size() != spec.members.size()) {
    throw std::invalid_argument("member outputs do not match the ensemble spec");
  }
  const size_t n = member_outputs.front().size();
  for (const auto& m : member_outputs) {
    if (m.size() != n) throw std::invalid_argument("members differ in post count");
  }
  std::vector<PostOutput> out(n);
  std::vector<CoarseLabel> coarse(member_outputs.size());
  std::vector<FineSet> fine(member_outputs.size());
  for (size_t i = 0; i < n; ++i) {
    double score_sum = 0;
    for (size_t m = 0; m < member_outputs.size(); ++m) {
      coarse[m] = member_outputs[m][i].coarse;
      fine[m] = member_outputs[m][i].fine;
      score_sum += member_outputs[m][i].coarse_prediction.score;
    }
    PostOutput& o = out[i];
    o.coarse = Combine(coarse, spec, PositiveLabel(task), NegativeLabel(task));
    o.coarse_prediction.positive = IsPositive(o.coarse);
    o.coarse_prediction.score = score_sum / member_outputs.size();
    if (task == Task::kHostility && o.coarse_prediction.positive) {
      o.fine = CombineFine(fine, spec);
      if (o.fine.empty()) {
        // Members voted hostile but no class won a vote: use the tie-break
        // member's set, else the first non-empty one.
        o.fine = fine[spec.tie_break];
        for (size_t m = 0; o.fine.empty() && m < fine.size(); ++m) o.fine = fine[m];
      }
    }
  }
  return out;
}

std::vector<ScoredPrediction> ToScored(std::span<const PostOutput> outputs) {
  std::vector<ScoredPrediction> out;
  out.reserve(outputs.size());
  for (const PostOutput& o : outputs) {
    out.push_back({o.coarse, o.fine, Confidence(o.coarse_prediction)});
  }
  return out;
}

}  // namespace hostility
