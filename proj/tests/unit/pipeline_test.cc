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

#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hostility/error.h"
#include "hostility/log.h"
#include "hostility/pipeline.h"
#include "test_paths.h"

namespace hostility {
namespace {

using testing::Fixture;

struct Data {
  Corpus train, validation, test;
};

Data Load(Language language) {
  const Task task =
      language == Language::kEnglish ? Task::kFakeNews : Task::kHostility;
  const std::string prefix = language == Language::kEnglish ? "en_" : "hi_";
  Data d;
  DatasetOptions o;
  d.train = LoadDataset(Fixture(prefix + "train.csv"), language, task, o);
  o.split = Split::kValidation;
  d.validation = LoadDataset(Fixture(prefix + "val.csv"), language, task, o);
  o.split = Split::kTest;
  d.test = LoadDataset(Fixture(prefix + "test.csv"), language, task, o);
  return d;
}

Resources MakeResources(Language language, bool embeddings) {
  Resources r{Preprocessor::Create(language), Lexicon::Default(), nullptr};
  if (embeddings) {
    const char* file =
        language == Language::kEnglish ? "en_vectors.txt" : "hi_vectors.txt";
    r.embeddings =
        std::make_shared<const EmbeddingTable>(EmbeddingTable::Load(Fixture(file)));
  }
  return r;
}

PipelineConfig EnglishConfig() {
  PipelineConfig c;
  c.language = Language::kEnglish;
  c.task = Task::kFakeNews;
  return c;
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (Language l : {Language::kEnglish, Language::kHindi}) {
      Resources r = MakeResources(l, true);
      Data d = Load(l);
      Prepared p{PreparePosts(r, d.train.posts), PreparePosts(r, d.validation.posts),
                 PreparePosts(r, d.test.posts)};
      if (l == Language::kEnglish) {
        en_res_ = std::make_unique<Resources>(std::move(r));
        en_ = std::move(p);
      } else {
        hi_res_ = std::make_unique<Resources>(std::move(r));
        hi_ = std::move(p);
      }
    }
  }

  struct Prepared {
    std::vector<PreparedPost> train, validation, test;
  };
  std::unique_ptr<Resources> en_res_, hi_res_;
  Prepared en_, hi_;
};

TEST_F(PipelineTest, EnglishFixtureIsLearnable) {
  const TrainedModel m =
      TrainPipeline(EnglishConfig(), *en_res_, en_.train, en_.validation);
  const Evaluation e = EvaluateModel(m, *en_res_, en_.test, Split::kTest);
  EXPECT_DOUBLE_EQ(e.coarse.weighted_f1, 1.0);
  EXPECT_FALSE(e.fine.has_value());
  EXPECT_FALSE(m.fine.has_value());
}

TEST_F(PipelineTest, HindiFixtureTrainsBothLevels) {
  const TrainedModel m = TrainPipeline(PipelineConfig{}, *hi_res_, hi_.train,
                                       hi_.validation);
  ASSERT_TRUE(m.fine.has_value());
  const Evaluation e = EvaluateModel(m, *hi_res_, hi_.test, Split::kTest);
  EXPECT_GE(e.coarse.weighted_f1, 0.9);
  ASSERT_TRUE(e.fine.has_value());
  EXPECT_EQ(e.fine->table.rows.size(), 4u);
  const auto outputs = PredictAll(m, *hi_res_, hi_.test);
  for (const PostOutput& o : outputs) {
    EXPECT_EQ(o.fine.empty(), o.coarse == CoarseLabel::kNonHostile);
  }
}

TEST_F(PipelineTest, TrainingIsDeterministic) {
  PipelineConfig c = EnglishConfig();
  c.features.bow = true;
  const std::string a =
      SerializeModel(TrainPipeline(c, *en_res_, en_.train, en_.validation));
  const std::string b =
      SerializeModel(TrainPipeline(c, *en_res_, en_.train, en_.validation));
  EXPECT_EQ(a, b);
}

TEST_F(PipelineTest, SerializationRoundTrip) {
  PipelineConfig c;
  c.features.embed = true;
  c.features.bow = true;
  const TrainedModel m = TrainPipeline(c, *hi_res_, hi_.train, hi_.validation);
  const std::string text = SerializeModel(m);
  const TrainedModel back = ParseModel(text);
  EXPECT_EQ(SerializeModel(back), text);
  EXPECT_EQ(back.config.features, c.features);
  const auto a = PredictAll(m, *hi_res_, hi_.test);
  const auto b = PredictAll(back, *hi_res_, hi_.test);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_DOUBLE_EQ(a[i].coarse_prediction.score, b[i].coarse_prediction.score);
    EXPECT_EQ(a[i].fine, b[i].fine);
  }
  EXPECT_NO_THROW(VerifyResources(back, *hi_res_));
}

TEST_F(PipelineTest, TamperedModelNeedsForce) {
  const TrainedModel m =
      TrainPipeline(EnglishConfig(), *en_res_, en_.train, en_.validation);
  nlohmann::json doc = nlohmann::json::parse(SerializeModel(m));
  doc["payload"]["coarse"]["bias"] = doc["payload"]["coarse"]["bias"].get<double>() + 1;
  const std::string tampered = doc.dump(1);
  EXPECT_THROW(ParseModel(tampered), ChecksumError);
  long warnings = 0;
  ScopedWarningSink sink([&](const std::string&) { ++warnings; });
  const TrainedModel forced = ParseModel(tampered, true);
  EXPECT_EQ(warnings, 1);
  EXPECT_DOUBLE_EQ(forced.coarse.bias(), m.coarse.bias() + 1);
}

TEST_F(PipelineTest, MalformedModelFiles) {
  EXPECT_THROW(ParseModel("not json"), DataError);
  EXPECT_THROW(ParseModel("{}"), DataError);
  const TrainedModel m =
      TrainPipeline(EnglishConfig(), *en_res_, en_.train, en_.validation);
  nlohmann::json doc = nlohmann::json::parse(SerializeModel(m));
  doc["format_version"] = kModelFormatVersion + 1;
  EXPECT_THROW(ParseModel(doc.dump()), DataError);
  EXPECT_THROW(LoadModel("/nonexistent/model.json"), DataError);
}

TEST_F(PipelineTest, ResourceMismatch) {
  PipelineConfig c = EnglishConfig();
  c.features.embed = true;
  const TrainedModel m = TrainPipeline(c, *en_res_, en_.train, en_.validation);
  Resources other{Preprocessor::Create(Language::kEnglish),
                  Lexicon::Parse("different\n", "x"), en_res_->embeddings};
  EXPECT_THROW(VerifyResources(m, other), ChecksumError);
  ScopedWarningSink sink([](const std::string&) {});
  EXPECT_NO_THROW(VerifyResources(m, other, true));
  Resources no_vectors{Preprocessor::Create(Language::kEnglish),
                       Lexicon::Default(), nullptr};
  EXPECT_THROW(VerifyResources(m, no_vectors), ConfigError);
}

TEST_F(PipelineTest, EmbeddingFeaturesNeedTable) {
  PipelineConfig c = EnglishConfig();
  c.features.embed = true;
  Resources none{Preprocessor::Create(Language::kEnglish), Lexicon::Default(),
                 nullptr};
  EXPECT_THROW(TrainPipeline(c, none, en_.train, en_.validation), ConfigError);
}

TEST_F(PipelineTest, AblationProducesEightTaggedRuns) {
  const auto runs = RunAblation(PipelineConfig{}, *hi_res_, hi_.train,
                                hi_.validation, hi_.validation,
                                Split::kValidation, true);
  ASSERT_EQ(runs.size(), 8u);
  EXPECT_EQ(runs[0].tag, "base");
  EXPECT_EQ(runs[7].tag, "base+m1+m2+m3");
  EXPECT_EQ(runs[7].report.task, "hostility/fine");
  EXPECT_THROW(RunAblation(EnglishConfig(), *en_res_, en_.train, en_.validation,
                           en_.validation, Split::kValidation, true),
               ConfigError);
}

TEST_F(PipelineTest, GridSearchKeepsBestPoint) {
  const std::vector<double> lrs = {0.01, 0.1};
  const std::vector<double> l2s = {1e-4};
  const std::vector<int> epochs = {0, 5};
  const GridResult g = GridSearch(EnglishConfig(), *en_res_, en_.train,
                                  en_.validation, lrs, l2s, epochs);
  ASSERT_EQ(g.log.size(), 4u);
  for (const GridPoint& p : g.log) {
    EXPECT_LE(p.validation_f1, g.log[g.best_index].validation_f1);
  }
  EXPECT_NE(g.log[g.best_index].epochs, 0);
  const std::string tsv = GridLogTsv(g);
  EXPECT_EQ(tsv.rfind("learning_rate\tl2\tepochs\tvalidation_f1\tselected\n", 0),
            0u);
  EXPECT_THROW(GridSearch(EnglishConfig(), *en_res_, en_.train, {}, lrs, l2s,
                          epochs),
               DataError);
}

TEST_F(PipelineTest, PseudoLabelling) {
  const Data d = Load(Language::kEnglish);
  PipelineConfig c = EnglishConfig();
  EXPECT_THROW(TrainWithPseudoLabels(c, *en_res_, d.train, en_.validation,
                                     d.test.posts, 0.9),
               ConfigError);
  c.coarse.loss = Loss::kLogistic;
  // Nothing clears a confidence bar above 1, so the training set is unchanged.
  EXPECT_EQ(SerializeModel(TrainWithPseudoLabels(c, *en_res_, d.train,
                                                 en_.validation, d.test.posts,
                                                 1.01)),
            SerializeModel(TrainPipeline(c, *en_res_, en_.train, en_.validation)));
  const TrainedModel m = TrainWithPseudoLabels(c, *en_res_, d.train,
                                               en_.validation, d.test.posts, 0.5);
  EXPECT_GE(
      EvaluateModel(m, *en_res_, en_.test, Split::kTest).coarse.weighted_f1, 0.8);
}

TEST_F(PipelineTest, StackerAndCombine) {
  PipelineConfig tfidf = EnglishConfig();
  PipelineConfig embed = EnglishConfig();
  embed.features.tfidf = false;
  embed.features.embed = true;
  std::vector<std::vector<PostOutput>> val, test;
  for (const PipelineConfig& c : {tfidf, embed}) {
    const TrainedModel m = TrainPipeline(c, *en_res_, en_.train, en_.validation);
    val.push_back(PredictAll(m, *en_res_, en_.validation));
    test.push_back(PredictAll(m, *en_res_, en_.test));
  }
  TrainConfig sc;
  sc.loss = Loss::kLogistic;
  const LinearStacker stacker =
      LinearStacker::Fit(val, en_.validation, Task::kFakeNews, sc);
  EXPECT_EQ(stacker.Predict(test, en_.test).size(), en_.test.size());

  EnsembleSpec spec;
  spec.members = {"tfidf", "embed"};
  spec.rule = VoteRule::kLogicalOr;
  const auto combined = CombineMembers(test, spec, Task::kFakeNews);
  ASSERT_EQ(combined.size(), en_.test.size());
  for (size_t i = 0; i < combined.size(); ++i) {
    const bool any = test[0][i].coarse == CoarseLabel::kFake ||
                     test[1][i].coarse == CoarseLabel::kFake;
    EXPECT_EQ(combined[i].coarse == CoarseLabel::kFake, any);
  }
  EXPECT_EQ(ToScored(combined).size(), combined.size());
}

TEST(ConfidenceTest, HingeAndLogistic) {
  Prediction p;
  p.positive = true;
  p.score = 0.0;
  EXPECT_DOUBLE_EQ(Confidence(p), 0.5);
  p.positive = false;
  p.score = -2.0;
  p.probability = 0.2;
  EXPECT_NEAR(Confidence(p), 0.8, 1e-12);
}

TEST(PipelineConfigTest, ValidateRejectsBadSettings) {
  PipelineConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.fine_threshold = 1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = PipelineConfig{};
  c.features.min_df = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = PipelineConfig{};
  c.features.tfidf = false;
  c.features.meta = MetaFamilies{false, false, false, false};
  EXPECT_THROW(c.Validate(), ConfigError);
  c = PipelineConfig{};
  c.language = Language::kEnglish;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(PipelineConfigTest, JsonRoundTripAndHash) {
  PipelineConfig c = EnglishConfig();
  c.features.bow = true;
  c.features.bow_select.top_k = 7;
  c.coarse.epochs = 3;
  const PipelineConfig back = PipelineConfigFromJson(ToJson(c));
  EXPECT_EQ(back.features, c.features);
  EXPECT_EQ(back.coarse, c.coarse);
  EXPECT_EQ(ConfigHash(back), ConfigHash(c));
  PipelineConfig d = c;
  d.coarse.seed = 1;
  EXPECT_NE(ConfigHash(d), ConfigHash(c));
  EXPECT_THROW(PipelineConfigFromJson({{"features", {{"min_df", "x"}}}}),
               ConfigError);
  EXPECT_EQ(FeatureConfig{}.Tag(), "tfidf+m1+m2+m3");
}

}  // namespace
}  // namespace hostility
