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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "hostility/lexfeat.h"
#include "hostility/model.h"
#include "hostility/preprocess.h"
#include "hostility/vectorize.h"

namespace hostility {
namespace {

const std::vector<std::string> kWords = {
    "कोरोना", "वायरस", "सरकार", "खबर",  "झूठी", "देश",   "लोग",
    "मुंबई",  "दिल्ली", "फर्जी", "सच",   "वीडियो", "अस्पताल", "टीका"};

std::vector<std::string> Posts(size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<size_t> word(0, kWords.size() - 1);
  std::uniform_int_distribution<int> length(5, 25);
  std::vector<std::string> posts;
  for (size_t i = 0; i < n; ++i) {
    std::string p = "@user" + std::to_string(i % 7) + " ";
    const int len = length(rng);
    for (int k = 0; k < len; ++k) p += kWords[word(rng)] + " ";
    p += "#tag" + std::to_string(i % 11) + " https://t.co/x" + std::to_string(i) +
         " 😀";
    posts.push_back(p);
  }
  return posts;
}

std::vector<TokenList> Cleaned(size_t n) {
  const Preprocessor p = Preprocessor::Create(Language::kHindi);
  std::vector<TokenList> docs;
  for (const std::string& post : Posts(n)) docs.push_back(p.Clean(post).tokens);
  return docs;
}

void BM_Clean(benchmark::State& state) {
  const Preprocessor p = Preprocessor::Create(Language::kHindi);
  const auto posts = Posts(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    for (const std::string& post : posts) benchmark::DoNotOptimize(p.Clean(post));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Clean)->Arg(1000);

void BM_TfIdfFit(benchmark::State& state) {
  const auto docs = Cleaned(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(TfIdfModel::Fit(docs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TfIdfFit)->Arg(1000)->Arg(10000);

void BM_TfIdfTransform(benchmark::State& state) {
  const auto docs = Cleaned(static_cast<size_t>(state.range(0)));
  const TfIdfModel model = TfIdfModel::Fit(docs);
  for (auto _ : state) {
    for (const TokenList& d : docs) benchmark::DoNotOptimize(model.Transform(d));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TfIdfTransform)->Arg(1000);

void BM_TrainLinear(benchmark::State& state) {
  const auto docs = Cleaned(static_cast<size_t>(state.range(0)));
  const TfIdfModel model = TfIdfModel::Fit(docs);
  const FeatureLayout layout{.dense_dim = 0,
                             .sparse_dim = static_cast<int>(model.size())};
  std::vector<FeatureVector> x;
  std::vector<uint8_t> y;
  for (size_t i = 0; i < docs.size(); ++i) {
    x.push_back(Assemble({}, model.Transform(docs[i]), {}, layout));
    y.push_back(i % 2);
  }
  TrainConfig config;
  config.epochs = 5;
  for (auto _ : state) benchmark::DoNotOptimize(TrainLinear(x, y, layout, config));
  state.SetItemsProcessed(state.iterations() * state.range(0) * config.epochs);
}
BENCHMARK(BM_TrainLinear)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace hostility

BENCHMARK_MAIN();
