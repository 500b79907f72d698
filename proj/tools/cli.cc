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

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hostility/corpus.h"
#include "hostility/dsv.h"
#include "hostility/error.h"
#include "hostility/evalreport.h"
#include "hostility/hash.h"
#include "hostility/lexfeat.h"
#include "hostility/log.h"
#include "hostility/preprocess.h"
#include "hostility/vectorize.h"

namespace hostility::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kToolVersion[] = "0.1.0";

fs::path Resolve(const fs::path& base, const std::string& value) {
  if (value.empty()) return {};
  fs::path p(value);
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

template <typename T>
T Field(const json& j, const char* key, const T& fallback,
        const std::string& prefix) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(prefix + key + ": wrong type");
  }
}

void RequireObject(const json& j, const std::string& name) {
  if (!j.is_object()) throw ConfigError(name + ": expected an object");
}

std::string DelimiterName(char c) {
  if (c == '\t') return "tab";
  if (c == ',') return "comma";
  return std::string(1, c);
}

// Records every file a run reads or writes, for the manifest.
class Manifest {
 public:
  void Input(const fs::path& path) {
    if (path.empty()) return;
    inputs_[path.string()] = HashFileHex(path);
  }
  void Input(const fs::path& path, std::string checksum) {
    inputs_[path.string()] = std::move(checksum);
  }
  void Output(const fs::path& path, std::string_view content) {
    outputs_[path.string()] = HashHex(content);
  }
  json ToJson() const {
    json in = json::array(), out = json::array();
    for (const auto& [p, h] : inputs_) in.push_back({{"path", p}, {"checksum", h}});
    for (const auto& [p, h] : outputs_) out.push_back({{"path", p}, {"checksum", h}});
    return {{"inputs", in}, {"outputs", out}};
  }

 private:
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
};

void WriteText(const fs::path& path, std::string_view content,
               Manifest* manifest) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write " + path.string());
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw DataError("failed writing " + path.string());
  if (manifest != nullptr) manifest->Output(path, content);
}

void RequireFile(const fs::path& path, const std::string& field) {
  if (path.empty()) throw ConfigError(field + ": not set");
  if (!fs::is_regular_file(path)) {
    throw ConfigError(field + ": file not found: " + path.string());
  }
}

}  // namespace

PipelineConfig MemberConfig(const PipelineConfig& base,
                            const EnsembleMember& member) {
  json merged = ToJson(base);
  for (const auto& [key, value] : member.overrides.items()) {
    if (value.is_object() && merged.contains(key) && merged[key].is_object()) {
      merged[key].update(value);
    } else {
      merged[key] = value;
    }
  }
  try {
    return PipelineConfigFromJson(merged);
  } catch (const ConfigError& e) {
    throw ConfigError("ensemble.members[" + member.name + "]." + e.what());
  }
}

std::vector<EnsembleMember> DefaultMembers(bool have_embeddings) {
  std::vector<EnsembleMember> members;
  members.push_back({"tfidf", {{"features",
                                {{"tfidf", true}, {"embed", false}, {"bow", false},
                                 {"m1", false}, {"m2", false}, {"m3", false}}}}});
  members.push_back({"tfidf+meta", {{"features",
                                     {{"tfidf", true}, {"embed", false}, {"bow", false},
                                      {"m1", true}, {"m2", true}, {"m3", true}}}}});
  if (have_embeddings) {
    members.push_back({"embed+meta", {{"features",
                                       {{"tfidf", false}, {"embed", true}, {"bow", false},
                                        {"m1", true}, {"m2", true}, {"m3", true}}}}});
  } else {
    members.push_back({"tfidf+bow+meta", {{"features",
                                           {{"tfidf", true}, {"embed", false}, {"bow", true},
                                            {"m1", true}, {"m2", true}, {"m3", true}}}}});
  }
  return members;
}

json RunConfig::ToJson() const {
  json members = json::array();
  for (const EnsembleMember& m : ensemble.members) {
    members.push_back({{"name", m.name}, {"overrides", m.overrides}});
  }
  json j = hostility::ToJson(pipeline);
  j["seed"] = seed;
  j["data"] = {{"all", data.all.string()},
               {"train", data.train.string()},
               {"validation", data.validation.string()},
               {"test", data.test.string()},
               {"delimiter", data.delimiter ? DelimiterName(*data.delimiter) : ""}};
  j["resources"] = {{"lexicon", resources.lexicon.string()},
                    {"stopwords", resources.stopwords.string()},
                    {"contractions", resources.contractions.string()},
                    {"emoji_ranges", resources.emoji_ranges.string()},
                    {"embeddings", resources.embeddings.string()}};
  j["ensemble"] = {{"members", members},
                   {"rule", Name(ensemble.rule)},
                   {"tie_break", ensemble.tie_break ? json(*ensemble.tie_break)
                                                    : json(nullptr)},
                   {"stack", ensemble.stack_linear ? "linear" : "none"}};
  j["grid"] = {{"learning_rates", grid.learning_rates},
               {"l2", grid.l2},
               {"epochs", grid.epochs}};
  j["pseudo"] = {{"enabled", pseudo.enabled},
                 {"confidence_min", pseudo.confidence_min},
                 {"rounds", pseudo.rounds},
                 {"unlabeled", pseudo.unlabeled.string()}};
  j["output_dir"] = output_dir.string();
  return j;
}

RunConfig RunConfigFromJson(const json& j, const fs::path& base_dir,
                            const fs::path& data_dir) {
  RequireObject(j, "config");
  RunConfig c;
  c.pipeline = PipelineConfigFromJson(j);
  if (j.contains("seed")) {
    c.seed = Field<uint64_t>(j, "seed", 0, "");
    c.pipeline.coarse.seed = c.seed;
    c.pipeline.fine.seed = c.seed;
  } else {
    c.seed = c.pipeline.coarse.seed;
  }
  if (j.contains("data")) {
    const json& d = j.at("data");
    RequireObject(d, "data");
    c.data.all = Resolve(data_dir, Field<std::string>(d, "all", "", "data."));
    c.data.train = Resolve(data_dir, Field<std::string>(d, "train", "", "data."));
    c.data.validation =
        Resolve(data_dir, Field<std::string>(d, "validation", "", "data."));
    c.data.test = Resolve(data_dir, Field<std::string>(d, "test", "", "data."));
    const std::string delim = Field<std::string>(d, "delimiter", "", "data.");
    if (!delim.empty()) {
      try {
        c.data.delimiter = ParseDelimiterName(delim);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("data.delimiter: ") + e.what());
      }
    }
  }
  if (j.contains("resources")) {
    const json& r = j.at("resources");
    RequireObject(r, "resources");
    auto path = [&](const char* key) {
      return Resolve(base_dir, Field<std::string>(r, key, "", "resources."));
    };
    c.resources.lexicon = path("lexicon");
    c.resources.stopwords = path("stopwords");
    c.resources.contractions = path("contractions");
    c.resources.emoji_ranges = path("emoji_ranges");
    c.resources.embeddings = path("embeddings");
  }
  if (j.contains("ensemble")) {
    const json& e = j.at("ensemble");
    RequireObject(e, "ensemble");
    if (e.contains("members")) {
      if (!e.at("members").is_array()) {
        throw ConfigError("ensemble.members: expected an array");
      }
      for (const json& m : e.at("members")) {
        RequireObject(m, "ensemble.members[]");
        EnsembleMember member;
        member.name = Field<std::string>(m, "name", "", "ensemble.members[].");
        if (member.name.empty()) {
          throw ConfigError("ensemble.members[].name: required");
        }
        for (const auto& [key, value] : m.items()) {
          if (key != "name") member.overrides[key] = value;
        }
        c.ensemble.members.push_back(std::move(member));
      }
    }
    try {
      c.ensemble.rule =
          ParseVoteRule(Field<std::string>(e, "rule", "majority", "ensemble."));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigError(std::string("ensemble.rule: ") + ex.what());
    }
    if (e.contains("tie_break") && !e.at("tie_break").is_null()) {
      c.ensemble.tie_break = Field<int>(e, "tie_break", 0, "ensemble.");
    }
    const std::string stack = Field<std::string>(e, "stack", "none", "ensemble.");
    if (stack != "none" && stack != "linear") {
      throw ConfigError("ensemble.stack: expected 'none' or 'linear'");
    }
    c.ensemble.stack_linear = stack == "linear";
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    RequireObject(g, "grid");
    c.grid.learning_rates =
        Field<std::vector<double>>(g, "learning_rates", {}, "grid.");
    c.grid.l2 = Field<std::vector<double>>(g, "l2", {}, "grid.");
    c.grid.epochs = Field<std::vector<int>>(g, "epochs", {}, "grid.");
  }
  if (j.contains("pseudo")) {
    const json& p = j.at("pseudo");
    RequireObject(p, "pseudo");
    c.pseudo.enabled = Field<bool>(p, "enabled", true, "pseudo.");
    c.pseudo.confidence_min =
        Field<double>(p, "confidence_min", c.pseudo.confidence_min, "pseudo.");
    c.pseudo.rounds = Field<int>(p, "rounds", c.pseudo.rounds, "pseudo.");
    c.pseudo.unlabeled =
        Resolve(data_dir, Field<std::string>(p, "unlabeled", "", "pseudo."));
  }
  c.output_dir = Resolve(base_dir, Field<std::string>(j, "output_dir",
                                                      "hostility_out", ""));
  return c;
}

namespace {

// Command-line values that win over the config file.
struct Overrides {
  std::string config_path;
  std::string data_dir;
  std::string output_dir;
  std::optional<uint64_t> seed;
  std::string language, task;
  std::string all, train, validation, test, delimiter;
  std::string lexicon, stopwords, contractions, emoji_ranges, embeddings;
  std::optional<bool> tfidf, embed, bow, m1, m2, m3, length, substring;
  std::optional<int> min_df, bow_top_k, epochs;
  std::optional<double> bow_ratio_min, l2, learning_rate, threshold;
  std::string loss, fine_loss, class_weighting;
};

fs::path DataDirFromFlagsOrEnv(const Overrides& o) {
  if (!o.data_dir.empty()) return o.data_dir;
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env) {
    return env;
  }
  return {};
}

RunConfig BuildRunConfig(const Overrides& o) {
  const fs::path explicit_data_dir = DataDirFromFlagsOrEnv(o);
  json j = json::object();
  fs::path base_dir;
  if (!o.config_path.empty()) {
    const fs::path path(o.config_path);
    if (!fs::is_regular_file(path)) {
      throw ConfigError("--config: file not found: " + path.string());
    }
    try {
      j = json::parse(ReadFile(path));
    } catch (const json::exception& e) {
      throw ConfigError("--config: " + path.string() + ": " + e.what());
    }
    base_dir = path.parent_path();
  }
  if (!o.language.empty()) j["language"] = o.language;
  if (!o.task.empty()) j["task"] = o.task;
  if (!o.language.empty() && o.task.empty() && !j.contains("task")) {
    j["task"] = o.language == "english" ? "fake_news" : "hostility";
  }
  if (!j.contains("task") && j.value("language", "") == "english") {
    j["task"] = "fake_news";
  }
  json& f = j["features"];
  if (f.is_null()) f = json::object();
  auto set_bool = [&](const char* key, const std::optional<bool>& v) {
    if (v) f[key] = *v;
  };
  set_bool("tfidf", o.tfidf);
  set_bool("embed", o.embed);
  set_bool("bow", o.bow);
  set_bool("m1", o.m1);
  set_bool("m2", o.m2);
  set_bool("m3", o.m3);
  set_bool("length", o.length);
  set_bool("substring_match", o.substring);
  if (o.min_df) f["min_df"] = *o.min_df;
  if (o.bow_top_k) f["bow_top_k"] = *o.bow_top_k;
  if (o.bow_ratio_min) f["bow_ratio_min"] = *o.bow_ratio_min;
  json& coarse = j["coarse"];
  if (coarse.is_null()) coarse = json::object();
  if (!o.loss.empty()) coarse["loss"] = o.loss;
  if (o.l2) coarse["l2"] = *o.l2;
  if (o.learning_rate) coarse["learning_rate"] = *o.learning_rate;
  if (o.epochs) coarse["epochs"] = *o.epochs;
  if (!o.class_weighting.empty()) coarse["class_weighting"] = o.class_weighting;
  if (!o.fine_loss.empty()) {
    if (!j["fine"].is_object()) j["fine"] = json::object();
    j["fine"]["loss"] = o.fine_loss;
  }
  if (o.threshold) j["fine_threshold"] = *o.threshold;
  if (o.seed) j["seed"] = *o.seed;

  const fs::path data_dir =
      explicit_data_dir.empty() ? base_dir : explicit_data_dir;
  RunConfig c;
  try {
    c = RunConfigFromJson(j, base_dir, data_dir);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  // Path flags are taken relative to the working directory; data flags
  // relative to an explicit data directory when one is given.
  auto data_flag = [&](const std::string& v, fs::path* out) {
    if (!v.empty()) *out = Resolve(explicit_data_dir, v);
  };
  data_flag(o.all, &c.data.all);
  data_flag(o.train, &c.data.train);
  data_flag(o.validation, &c.data.validation);
  data_flag(o.test, &c.data.test);
  if (!o.delimiter.empty()) {
    try {
      c.data.delimiter = ParseDelimiterName(o.delimiter);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--delimiter: ") + e.what());
    }
  }
  auto path_flag = [](const std::string& v, fs::path* out) {
    if (!v.empty()) *out = v;
  };
  path_flag(o.lexicon, &c.resources.lexicon);
  path_flag(o.stopwords, &c.resources.stopwords);
  path_flag(o.contractions, &c.resources.contractions);
  path_flag(o.emoji_ranges, &c.resources.emoji_ranges);
  path_flag(o.embeddings, &c.resources.embeddings);
  path_flag(o.output_dir, &c.output_dir);
  return c;
}

struct Splits {
  Corpus train, validation, test;
  const Corpus& Get(Split s) const {
    return s == Split::kTrain ? train : s == Split::kValidation ? validation : test;
  }
};

Corpus Select(const Corpus& all, Split split) {
  Corpus out{all.language, all.task, {}};
  for (const LabeledPost& p : all.posts) {
    if (p.split == split) out.posts.push_back(p);
  }
  return out;
}

// Loads the requested splits. Unrequested per-split files are skipped.
Splits LoadSplits(const RunConfig& c, const std::vector<Split>& needed,
                  Manifest* manifest) {
  const Language lang = c.pipeline.language;
  const Task task = c.pipeline.task;
  Splits s;
  s.train = s.validation = s.test = Corpus{lang, task, {}};
  if (!c.data.all.empty()) {
    RequireFile(c.data.all, "data.all");
    manifest->Input(c.data.all);
    DatasetOptions opts;
    opts.delimiter = c.data.delimiter;
    const Corpus all = LoadDataset(c.data.all, lang, task, opts);
    s.train = Select(all, Split::kTrain);
    s.validation = Select(all, Split::kValidation);
    s.test = Select(all, Split::kTest);
    return s;
  }
  for (Split split : needed) {
    const fs::path& path = split == Split::kTrain        ? c.data.train
                           : split == Split::kValidation ? c.data.validation
                                                         : c.data.test;
    const std::string field = "data." + std::string(Name(split));
    RequireFile(path, field);
    manifest->Input(path);
    DatasetOptions opts;
    opts.delimiter = c.data.delimiter;
    opts.split = split;
    Corpus corpus = LoadDataset(path, lang, task, opts);
    if (split == Split::kTrain) s.train = std::move(corpus);
    if (split == Split::kValidation) s.validation = std::move(corpus);
    if (split == Split::kTest) s.test = std::move(corpus);
  }
  return s;
}

bool HasFile(const fs::path& p) { return !p.empty(); }

Resources BuildResources(const RunConfig& c, Language language,
                         Manifest* manifest) {
  auto optional_file = [&](const fs::path& p, const char* field) {
    if (p.empty()) return;
    RequireFile(p, std::string("resources.") + field);
    manifest->Input(p);
  };
  optional_file(c.resources.lexicon, "lexicon");
  optional_file(c.resources.stopwords, "stopwords");
  optional_file(c.resources.contractions, "contractions");
  optional_file(c.resources.emoji_ranges, "emoji_ranges");
  PreprocessPaths paths{c.resources.contractions, c.resources.stopwords,
                        c.resources.emoji_ranges};
  return Resources{
      Preprocessor::Create(language, paths),
      HasFile(c.resources.lexicon) ? Lexicon::Load(c.resources.lexicon)
                                   : Lexicon::Default(),
      nullptr};
}

// Loads the embedding file restricted to the tokens of the given posts.
void LoadEmbeddings(const RunConfig& c, bool needed,
                    const std::vector<std::span<const PreparedPost>>& sets,
                    Resources* resources, Manifest* manifest) {
  if (!needed) return;
  if (c.resources.embeddings.empty()) {
    throw ConfigError("resources.embeddings: required when features.embed is true");
  }
  RequireFile(c.resources.embeddings, "resources.embeddings");
  std::unordered_set<std::string> keep;
  for (auto set : sets) {
    std::unordered_set<std::string> v = CollectVocabulary(set);
    keep.insert(v.begin(), v.end());
  }
  auto table = std::make_shared<EmbeddingTable>(
      EmbeddingTable::Load(c.resources.embeddings, &keep));
  manifest->Input(c.resources.embeddings, table->checksum());
  resources->embeddings = std::move(table);
}

std::vector<LabeledPost> AsLabeled(const std::vector<UnlabeledPost>& in) {
  std::vector<LabeledPost> out;
  out.reserve(in.size());
  for (const UnlabeledPost& u : in) {
    LabeledPost p;
    p.id = u.id;
    p.text = u.text;
    out.push_back(std::move(p));
  }
  return out;
}

void WriteManifest(const RunConfig& c, const std::string& command,
                   const std::vector<std::string>& args,
                   const Manifest& manifest) {
  json m;
  m["tool_version"] = kToolVersion;
  m["command"] = command;
  m["args"] = std::vector<std::string>(args.begin() + (args.empty() ? 0 : 1),
                                       args.end());
  m["config"] = c.ToJson();
  m["config_hash"] = HashHex(c.ToJson().dump());
  m["seed"] = c.seed;
  json files = manifest.ToJson();
  m["inputs"] = files["inputs"];
  m["outputs"] = files["outputs"];
  m["warnings"] = WarningCount();
  WriteText(c.output_dir / ("manifest_" + command + ".json"), m.dump(1) + "\n",
            nullptr);
}

void WriteEvaluation(const fs::path& dir, const std::string& stem,
                     const Evaluation& eval, Manifest* manifest) {
  std::string text = RenderText(eval.coarse);
  WriteText(dir / (stem + "_coarse.json"), ToJson(eval.coarse).dump(1) + "\n",
            manifest);
  if (eval.fine) {
    WriteText(dir / (stem + "_fine.json"), ToJson(*eval.fine).dump(1) + "\n",
              manifest);
    text += "\n" + RenderText(*eval.fine);
  }
  WriteText(dir / (stem + ".txt"), text, manifest);
}

json EvaluationJson(const Evaluation& eval) {
  json j = {{"coarse", ToJson(eval.coarse)}};
  if (eval.fine) j["fine"] = ToJson(*eval.fine);
  return j;
}

std::string F1Line(const std::string& label, const Evaluation& eval) {
  char buf[160];
  if (eval.fine) {
    std::snprintf(buf, sizeof(buf), "%s weighted F1: coarse %.4f, fine %.4f\n",
                  label.c_str(), eval.coarse.weighted_f1, eval.fine->weighted_f1);
  } else {
    std::snprintf(buf, sizeof(buf), "%s weighted F1: %.4f\n", label.c_str(),
                  eval.coarse.weighted_f1);
  }
  return buf;
}

// ---------------------------------------------------------------- commands

struct PreprocessArgs {
  std::string input, output;
};

int CmdPreprocess(const RunConfig& c, const PreprocessArgs& a,
                  const std::vector<std::string>& args, std::ostream& out,
                  std::ostream& err) {
  Manifest manifest;
  RequireFile(a.input, "--input");
  manifest.Input(a.input);
  const Resources resources = BuildResources(c, c.pipeline.language, &manifest);
  size_t skipped = 0;
  const std::vector<LabeledPost> posts =
      AsLabeled(LoadUnlabeled(a.input, c.data.delimiter, &skipped));
  const std::vector<PreparedPost> prepared =
      PreparePosts(resources, posts, c.pipeline.features.substring_match);

  std::string text = JoinRecord({"id", "tokens", "abusive", "emojis", "hashtags",
                                 "mentions", "urls", "char_length",
                                 "token_length"},
                                '\t') + "\n";
  for (const PreparedPost& p : prepared) {
    const MetaFeatures& m = p.meta;
    text += JoinRecord({p.id, p.doc.Text(), std::to_string(m.abusive),
                        std::to_string(m.entity.emojis),
                        std::to_string(m.entity.hashtags),
                        std::to_string(m.entity.mentions),
                        std::to_string(m.entity.urls),
                        std::to_string(m.char_length),
                        std::to_string(m.token_length)},
                       '\t') + "\n";
  }
  if (a.output.empty() || a.output == "-") {
    out << text;
  } else {
    WriteText(a.output, text, &manifest);
    WriteManifest(c, "preprocess", args, manifest);
    out << prepared.size() << " posts written to " << a.output << "\n";
  }
  if (skipped > 0) err << "skipped " << skipped << " malformed rows\n";
  return kExitOk;
}

struct TrainArgs {
  bool grid = false;
  bool pseudo = false;
};

int CmdTrain(RunConfig c, const TrainArgs& a,
             const std::vector<std::string>& args, std::ostream& out) {
  if (a.pseudo) c.pseudo.enabled = true;
  if (a.grid && !c.grid.enabled()) {
    throw ConfigError("grid: --grid needs grid.learning_rates, grid.l2 or grid.epochs");
  }
  const bool use_grid = a.grid || c.grid.enabled();
  if (use_grid && c.pseudo.enabled) {
    throw ConfigError("pseudo: cannot be combined with grid search");
  }
  const PipelineConfig& pc = c.pipeline;
  pc.Validate();
  if (pc.features.embed && c.resources.embeddings.empty()) {
    throw ConfigError("resources.embeddings: required when features.embed is true");
  }

  Manifest manifest;
  const bool need_test = c.pseudo.enabled && c.pseudo.unlabeled.empty();
  std::vector<Split> wanted = {Split::kTrain};
  if (!c.data.validation.empty() || !c.data.all.empty()) {
    wanted.push_back(Split::kValidation);
  }
  if (need_test) wanted.push_back(Split::kTest);
  const Splits splits = LoadSplits(c, wanted, &manifest);
  if (splits.validation.empty()) {
    Warn("no validation split; training without validation report");
  }

  Resources resources = BuildResources(c, pc.language, &manifest);
  const bool substring = pc.features.substring_match;
  const std::vector<PreparedPost> train =
      PreparePosts(resources, splits.train.posts, substring);
  const std::vector<PreparedPost> validation =
      PreparePosts(resources, splits.validation.posts, substring);

  std::vector<LabeledPost> unlabeled;
  std::vector<PreparedPost> unlabeled_prepared;
  if (c.pseudo.enabled) {
    if (!c.pseudo.unlabeled.empty()) {
      RequireFile(c.pseudo.unlabeled, "pseudo.unlabeled");
      manifest.Input(c.pseudo.unlabeled);
      size_t skipped = 0;
      unlabeled = AsLabeled(LoadUnlabeled(c.pseudo.unlabeled, c.data.delimiter,
                                          &skipped));
    } else {
      for (const LabeledPost& p : splits.test.posts) {
        LabeledPost u;
        u.id = p.id;
        u.text = p.text;
        unlabeled.push_back(std::move(u));
      }
    }
    unlabeled_prepared = PreparePosts(resources, unlabeled, substring);
  }
  LoadEmbeddings(c, pc.features.embed, {train, validation, unlabeled_prepared},
                 &resources, &manifest);

  TrainedModel model;
  if (use_grid) {
    GridResult grid = GridSearch(pc, resources, train, validation,
                                 c.grid.learning_rates, c.grid.l2,
                                 c.grid.epochs);
    WriteText(c.output_dir / "grid_log.tsv", GridLogTsv(grid), &manifest);
    out << GridLogTsv(grid);
    model = std::move(grid.best);
  } else if (c.pseudo.enabled) {
    model = TrainWithPseudoLabels(pc, resources, splits.train, validation,
                                  unlabeled, c.pseudo.confidence_min,
                                  c.pseudo.rounds);
  } else {
    model = TrainPipeline(pc, resources, train, validation);
  }

  const fs::path model_path = c.output_dir / "model.json";
  WriteText(model_path, SerializeModel(model), &manifest);
  if (!model.featurizer.entity_vocab().empty()) {
    WriteText(c.output_dir / "entity_vocab.tsv",
              model.featurizer.entity_vocab().ToTsv(), &manifest);
  }
  out << "model written to " << model_path.string() << "\n";
  if (!validation.empty()) {
    const Evaluation eval =
        EvaluateModel(model, resources, validation, Split::kValidation);
    WriteEvaluation(c.output_dir, "report_validation", eval, &manifest);
    out << F1Line("validation", eval);
  }
  WriteManifest(c, "train", args, manifest);
  return kExitOk;
}

struct ModelArgs {
  std::string model;
  bool force = false;
};

fs::path ModelPath(const RunConfig& c, const ModelArgs& a) {
  const fs::path p = a.model.empty() ? c.output_dir / "model.json" : fs::path(a.model);
  RequireFile(p, "--model");
  return p;
}

Split SplitFlag(const std::string& value) {
  try {
    return ParseSplit(value);
  } catch (const DataError& e) {
    throw ConfigError(std::string("--split: ") + e.what());
  }
}

struct EvaluateArgs {
  ModelArgs model;
  std::string split = "test";
  bool json = false;
};

int CmdEvaluate(RunConfig c, const EvaluateArgs& a,
                const std::vector<std::string>& args, std::ostream& out) {
  Manifest manifest;
  const fs::path model_path = ModelPath(c, a.model);
  manifest.Input(model_path);
  const TrainedModel model = LoadModel(model_path, a.model.force);
  c.pipeline.language = model.config.language;
  c.pipeline.task = model.config.task;
  const Split split = SplitFlag(a.split);
  const Splits splits = LoadSplits(c, {split}, &manifest);
  Resources resources = BuildResources(c, model.config.language, &manifest);
  const std::vector<PreparedPost> posts = PreparePosts(
      resources, splits.Get(split).posts, model.config.features.substring_match);
  if (posts.empty()) throw DataError("split '" + a.split + "' has no posts");
  LoadEmbeddings(c, model.config.features.embed, {posts}, &resources, &manifest);
  VerifyResources(model, resources, a.model.force);

  const Evaluation eval = EvaluateModel(model, resources, posts, split);
  WriteEvaluation(c.output_dir, "report_" + a.split, eval, &manifest);
  WriteManifest(c, "evaluate", args, manifest);
  if (a.json) {
    out << EvaluationJson(eval).dump(1) << "\n";
  } else {
    out << RenderText(eval.coarse);
    if (eval.fine) out << "\n" << RenderText(*eval.fine);
    out << F1Line(a.split, eval);
  }
  return kExitOk;
}

struct PredictArgs {
  ModelArgs model;
  std::string input, output;
};

int CmdPredict(RunConfig c, const PredictArgs& a,
               const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  Manifest manifest;
  const fs::path model_path = ModelPath(c, a.model);
  manifest.Input(model_path);
  RequireFile(a.input, "--input");
  manifest.Input(a.input);
  const TrainedModel model = LoadModel(model_path, a.model.force);
  Resources resources = BuildResources(c, model.config.language, &manifest);

  const long warnings_before = WarningCount();
  size_t skipped = 0;
  const std::vector<LabeledPost> posts =
      AsLabeled(LoadUnlabeled(a.input, c.data.delimiter, &skipped));
  const std::vector<PreparedPost> prepared =
      PreparePosts(resources, posts, model.config.features.substring_match);
  LoadEmbeddings(c, model.config.features.embed, {prepared}, &resources,
                 &manifest);
  VerifyResources(model, resources, a.model.force);
  const std::vector<PostOutput> outputs = PredictAll(model, resources, prepared);

  std::vector<std::string> header = {"id", "coarse", "fine", "score"};
  if (model.fine) {
    for (FineLabel l : kAllFineLabels) header.push_back(std::string(Name(l)) + "_score");
  }
  std::string text = JoinRecord(header, '\t') + "\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  for (size_t i = 0; i < prepared.size(); ++i) {
    const PostOutput& o = outputs[i];
    std::vector<std::string> row = {prepared[i].id, std::string(Name(o.coarse)),
                                    Name(o.fine), num(o.coarse_prediction.score)};
    if (model.fine) {
      std::array<std::string, kFineLabelCount> scores;
      scores.fill("");
      for (const ClassScore& s : o.class_scores) {
        scores[static_cast<int>(s.label)] = num(s.score);
      }
      row.insert(row.end(), scores.begin(), scores.end());
    }
    text += JoinRecord(row, '\t') + "\n";
  }
  const fs::path output =
      a.output.empty() ? c.output_dir / "predictions.tsv" : fs::path(a.output);
  WriteText(output, text, &manifest);
  WriteManifest(c, "predict", args, manifest);
  out << prepared.size() << " predictions written to " << output.string() << "\n";
  const long warnings = WarningCount() - warnings_before;
  if (skipped > 0 || warnings > 0) {
    err << "summary: " << skipped << " rows skipped, " << warnings
        << " warnings\n";
  }
  return kExitOk;
}

struct AblateArgs {
  std::string split = "validation";
  std::string level;
};

int CmdAblate(const RunConfig& c, const AblateArgs& a,
              const std::vector<std::string>& args, std::ostream& out) {
  const PipelineConfig& pc = c.pipeline;
  pc.Validate();
  const Split split = SplitFlag(a.split);
  if (split == Split::kTrain) throw ConfigError("--split: ablation evaluates validation or test");
  const std::string level =
      a.level.empty() ? (pc.HasFineTask() ? "fine" : "coarse") : a.level;
  if (level != "fine" && level != "coarse") {
    throw ConfigError("--level: expected 'fine' or 'coarse'");
  }
  Manifest manifest;
  const Splits splits =
      split == Split::kTest
          ? LoadSplits(c, {Split::kTrain, Split::kValidation, Split::kTest}, &manifest)
          : LoadSplits(c, {Split::kTrain, Split::kValidation}, &manifest);
  Resources resources = BuildResources(c, pc.language, &manifest);
  const bool substring = pc.features.substring_match;
  const auto train = PreparePosts(resources, splits.train.posts, substring);
  const auto validation = PreparePosts(resources, splits.validation.posts, substring);
  const auto test = split == Split::kTest
                        ? PreparePosts(resources, splits.test.posts, substring)
                        : std::vector<PreparedPost>{};
  LoadEmbeddings(c, pc.features.embed, {train, validation, test}, &resources,
                 &manifest);
  const std::vector<PreparedPost>& eval = split == Split::kTest ? test : validation;
  if (eval.empty()) throw DataError("split '" + a.split + "' has no posts");

  const std::vector<AblationRun> runs = RunAblation(
      pc, resources, train, validation, eval, split, level == "fine");
  const std::string table = AblationTable(runs, "base");
  json reports = json::array();
  for (const AblationRun& r : runs) {
    reports.push_back({{"tag", r.tag}, {"report", ToJson(r.report)}});
  }
  const std::string stem = "ablation_" + level + "_" + a.split;
  WriteText(c.output_dir / (stem + ".tsv"), table, &manifest);
  WriteText(c.output_dir / (stem + ".json"), reports.dump(1) + "\n", &manifest);
  WriteManifest(c, "ablate", args, manifest);
  out << table;
  return kExitOk;
}

struct MemberRun {
  std::string name;
  TrainedModel model;
  std::vector<PostOutput> validation;
  std::vector<PostOutput> eval;
  double validation_f1 = 0;
};

// Trains every ensemble member and predicts the validation and eval posts.
std::vector<MemberRun> TrainMembers(const RunConfig& c,
                                    const std::vector<EnsembleMember>& members,
                                    const Resources& resources,
                                    std::span<const PreparedPost> train,
                                    std::span<const PreparedPost> validation,
                                    std::span<const PreparedPost> eval) {
  std::vector<MemberRun> runs;
  for (const EnsembleMember& m : members) {
    MemberRun r;
    r.name = m.name;
    r.model = TrainPipeline(MemberConfig(c.pipeline, m), resources, train,
                            validation);
    r.validation = PredictAll(r.model, resources, validation);
    r.eval = PredictAll(r.model, resources, eval);
    if (!validation.empty()) {
      r.validation_f1 = EvaluateOutputs(r.model, validation, r.validation,
                                        Split::kValidation)
                            .coarse.weighted_f1;
    }
    runs.push_back(std::move(r));
  }
  return runs;
}

struct EnsembleArgs {
  std::string split = "test";
};

struct EnsembleInputs {
  Splits splits;
  Resources resources;
  std::vector<EnsembleMember> members;
  std::vector<PreparedPost> train, validation, eval;
};

EnsembleInputs PrepareEnsemble(const RunConfig& c, Split split,
                               Manifest* manifest) {
  const PipelineConfig& pc = c.pipeline;
  pc.Validate();
  EnsembleInputs in{
      split == Split::kTest
          ? LoadSplits(c, {Split::kTrain, Split::kValidation, Split::kTest}, manifest)
          : LoadSplits(c, {Split::kTrain, Split::kValidation}, manifest),
      BuildResources(c, pc.language, manifest), {}, {}, {}, {}};
  in.members = c.ensemble.members.empty()
                   ? DefaultMembers(!c.resources.embeddings.empty())
                   : c.ensemble.members;
  bool need_embed = false;
  for (const EnsembleMember& m : in.members) {
    const PipelineConfig mc = MemberConfig(pc, m);
    need_embed |= mc.features.embed;
    if (mc.features.substring_match != pc.features.substring_match) {
      throw ConfigError("ensemble.members[" + m.name +
                        "].features.substring_match: must match the run config");
    }
  }
  const bool substring = pc.features.substring_match;
  in.train = PreparePosts(in.resources, in.splits.train.posts, substring);
  in.validation = PreparePosts(in.resources, in.splits.validation.posts, substring);
  in.eval = split == Split::kValidation
                ? in.validation
                : PreparePosts(in.resources, in.splits.Get(split).posts, substring);
  LoadEmbeddings(c, need_embed, {in.train, in.validation, in.eval}, &in.resources,
                 manifest);
  if (in.eval.empty()) throw DataError("evaluation split has no posts");
  return in;
}

EnsembleSpec SpecFor(const RunConfig& c, const std::vector<MemberRun>& runs) {
  EnsembleSpec spec;
  spec.rule = c.ensemble.rule;
  for (const MemberRun& r : runs) spec.members.push_back(r.name);
  if (c.ensemble.tie_break) {
    spec.tie_break = *c.ensemble.tie_break;
  } else {
    for (size_t m = 1; m < runs.size(); ++m) {
      if (runs[m].validation_f1 > runs[spec.tie_break].validation_f1) {
        spec.tie_break = static_cast<int>(m);
      }
    }
  }
  spec.Validate();
  return spec;
}

int CmdEnsemble(const RunConfig& c, const EnsembleArgs& a,
                const std::vector<std::string>& args, std::ostream& out) {
  const Split split = SplitFlag(a.split);
  Manifest manifest;
  EnsembleInputs in = PrepareEnsemble(c, split, &manifest);
  const std::vector<MemberRun> runs = TrainMembers(
      c, in.members, in.resources, in.train, in.validation, in.eval);
  const EnsembleSpec spec = SpecFor(c, runs);

  std::vector<std::vector<PostOutput>> eval_outputs;
  for (const MemberRun& r : runs) eval_outputs.push_back(r.eval);
  std::vector<PostOutput> combined = CombineMembers(eval_outputs, spec, c.pipeline.task);
  if (c.ensemble.stack_linear) {
    if (in.validation.empty()) {
      throw DataError("stack=linear needs validation posts to fit the stacker");
    }
    std::vector<std::vector<PostOutput>> val_outputs;
    for (const MemberRun& r : runs) val_outputs.push_back(r.validation);
    const LinearStacker stacker = LinearStacker::Fit(
        val_outputs, in.validation, c.pipeline.task, c.pipeline.coarse);
    const std::vector<CoarseLabel> stacked = stacker.Predict(eval_outputs, in.eval);
    for (size_t i = 0; i < combined.size(); ++i) {
      combined[i].coarse = stacked[i];
      combined[i].coarse_prediction.positive = IsPositive(stacked[i]);
      if (!IsPositive(stacked[i])) {
        combined[i].fine = FineSet();
      } else if (combined[i].fine.empty() && c.pipeline.HasFineTask()) {
        // Stacker overrode a negative vote: decide classes from the
        // tie-break member's scores so a hostile post keeps a fine label.
        const PostOutput& member = eval_outputs[spec.tie_break][i];
        combined[i].fine = DecideMultilabel(member.class_scores, true,
                                            c.pipeline.fine_threshold);
      }
    }
  }

  // Member reports reuse the member model's config; the ensemble report
  // carries the hash of the run config.
  std::string summary = "member\tweighted_f1\n";
  char buf[64];
  for (const MemberRun& r : runs) {
    const Evaluation e = EvaluateOutputs(r.model, in.eval, r.eval, split);
    WriteEvaluation(c.output_dir, "ensemble_member_" + r.name + "_" + a.split, e,
                    &manifest);
    std::snprintf(buf, sizeof(buf), "%.4f", e.coarse.weighted_f1);
    summary += r.name + "\t" + buf + "\n";
  }
  TrainedModel ensemble_model;
  ensemble_model.config = c.pipeline;
  Evaluation eval = EvaluateOutputs(ensemble_model, in.eval, combined, split);
  const std::string hash = HashHex(c.ToJson().dump());
  eval.coarse.config_hash = hash;
  if (eval.fine) eval.fine->config_hash = hash;
  WriteEvaluation(c.output_dir, "ensemble_" + a.split, eval, &manifest);
  std::snprintf(buf, sizeof(buf), "%.4f", eval.coarse.weighted_f1);
  summary += std::string(c.ensemble.stack_linear ? "stack=linear" : Name(spec.rule)) +
             "\t" + buf + "\n";
  WriteText(c.output_dir / ("ensemble_" + a.split + ".tsv"), summary, &manifest);
  WriteManifest(c, "ensemble", args, manifest);
  out << summary << F1Line("ensemble " + a.split, eval);
  return kExitOk;
}

struct AuditArgs {
  std::string split = "validation";
};

int CmdAudit(const RunConfig& c, const AuditArgs& a,
             const std::vector<std::string>& args, std::ostream& out) {
  const Split split = SplitFlag(a.split);
  Manifest manifest;
  EnsembleInputs in = PrepareEnsemble(c, split, &manifest);
  if (in.members.size() < 2) throw ConfigError("ensemble.members: audit needs at least two");
  const std::vector<MemberRun> runs = TrainMembers(
      c, in.members, in.resources, in.train, in.validation, in.eval);
  std::vector<std::vector<ScoredPrediction>> scored;
  for (const MemberRun& r : runs) scored.push_back(ToScored(r.eval));
  const Corpus& corpus = in.splits.Get(split);
  const std::vector<Disagreement> report = DisagreementReport(scored, corpus);
  const fs::path path = c.output_dir / ("disagreements_" + a.split + ".csv");
  WriteText(path, DisagreementToDsv(report, corpus, ','), &manifest);
  WriteManifest(c, "audit", args, manifest);
  out << report.size() << " unanimous disagreements written to " << path.string()
      << "\n";
  return kExitOk;
}

void AddOptionalFlag(CLI::App* app, const std::string& names,
                     std::optional<bool>* target, const std::string& help) {
  app->add_flag_function(
      names, [target](int64_t count) { *target = count > 0; }, help);
}

template <typename T>
void AddOptional(CLI::App* app, const std::string& name,
                 std::optional<T>* target, const std::string& help) {
  app->add_option_function<T>(
      name, [target](const T& v) { *target = v; }, help);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Hostility and fake-news detection for micro-blog posts", "hostility"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--data-dir", o.data_dir,
                 std::string("Base directory of dataset paths (default $") +
                     kDataDirEnv + ")");
  app.add_option("-o,--output-dir", o.output_dir, "Directory for artifacts");
  AddOptional(&app, "--seed", &o.seed, "Seed of every stochastic step");
  app.add_option("--language", o.language, "hindi or english");
  app.add_option("--task", o.task, "hostility or fake_news");
  app.add_option("--dataset", o.all, "One dataset file with a split column");
  app.add_option("--train", o.train, "Training split file");
  app.add_option("--validation", o.validation, "Validation split file");
  app.add_option("--test", o.test, "Test split file");
  app.add_option("--delimiter", o.delimiter, "tab or comma (default: detect)");
  app.add_option("--lexicon", o.lexicon, "Profanity lexicon file");
  app.add_option("--stopwords", o.stopwords, "Stopword list file");
  app.add_option("--contractions", o.contractions, "Contraction table (English)");
  app.add_option("--emoji-ranges", o.emoji_ranges, "Emoji code point ranges");
  app.add_option("--embeddings", o.embeddings, "Word vectors, text format");
  AddOptionalFlag(&app, "--tfidf,!--no-tfidf", &o.tfidf, "TF-IDF block");
  AddOptionalFlag(&app, "--embed,!--no-embed", &o.embed, "Embedding average block");
  AddOptionalFlag(&app, "--bow,!--no-bow", &o.bow, "Entity bag-of-words block");
  AddOptionalFlag(&app, "--m1,!--no-m1", &o.m1, "Abusive word count");
  AddOptionalFlag(&app, "--m2,!--no-m2", &o.m2, "Mention/URL/hashtag counts");
  AddOptionalFlag(&app, "--m3,!--no-m3", &o.m3, "Emoji count");
  AddOptionalFlag(&app, "--length,!--no-length", &o.length, "Character length");
  AddOptionalFlag(&app, "--substring-match,!--no-substring-match", &o.substring,
                  "Count lexicon terms inside tokens");
  AddOptional(&app, "--min-df", &o.min_df, "TF-IDF minimum document frequency");
  AddOptional(&app, "--bow-top-k", &o.bow_top_k, "Entity terms per class");
  AddOptional(&app, "--bow-ratio-min", &o.bow_ratio_min, "Entity score ratio bound");
  app.add_option("--loss", o.loss, "Coarse loss: hinge or logistic");
  app.add_option("--fine-loss", o.fine_loss, "Fine-grained loss");
  app.add_option("--class-weighting", o.class_weighting,
                 "Coarse class weighting: none or inverse_frequency");
  AddOptional(&app, "--l2", &o.l2, "L2 regularization");
  AddOptional(&app, "--lr,--learning-rate", &o.learning_rate, "Initial step size");
  AddOptional(&app, "--epochs", &o.epochs, "SGD epochs");
  AddOptional(&app, "--threshold", &o.threshold, "Fine-grained probability threshold");

  PreprocessArgs pre;
  CLI::App* pre_cmd = app.add_subcommand("preprocess", "Clean posts and print features");
  pre_cmd->add_option("-i,--input", pre.input, "Posts with id and text columns")->required();
  pre_cmd->add_option("--out", pre.output, "Output TSV (default: stdout)");

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train and report on validation");
  train_cmd->add_flag("--grid", train.grid, "Grid search over the grid config");
  train_cmd->add_flag("--pseudo-label", train.pseudo, "One round of pseudo-labelling");

  auto add_model_args = [](CLI::App* cmd, ModelArgs* m) {
    cmd->add_option("-m,--model", m->model, "Model file (default: output dir)");
    cmd->add_flag("--force", m->force, "Load despite checksum mismatches");
  };
  EvaluateArgs evaluate;
  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score a saved model on a split");
  add_model_args(eval_cmd, &evaluate.model);
  eval_cmd->add_option("--split", evaluate.split, "train, validation or test");
  eval_cmd->add_flag("--json", evaluate.json, "Print only the JSON report");

  PredictArgs predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Label new posts");
  add_model_args(predict_cmd, &predict.model);
  predict_cmd->add_option("-i,--input", predict.input, "Posts with id and text")->required();
  predict_cmd->add_option("--out", predict.output, "Predictions TSV");

  AblateArgs ablate;
  CLI::App* ablate_cmd = app.add_subcommand("ablate", "Metadata ablation over m1/m2/m3");
  ablate_cmd->add_option("--split", ablate.split, "validation or test");
  ablate_cmd->add_option("--level", ablate.level, "fine or coarse");

  EnsembleArgs ensemble;
  CLI::App* ens_cmd = app.add_subcommand("ensemble", "Train members and combine them");
  ens_cmd->add_option("--split", ensemble.split, "validation or test");

  AuditArgs audit;
  CLI::App* audit_cmd =
      app.add_subcommand("audit", "List posts all members label against the gold label");
  audit_cmd->add_option("--split", audit.split, "train, validation or test");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const RunConfig c = BuildRunConfig(o);
    if (pre_cmd->parsed()) return CmdPreprocess(c, pre, args, out, err);
    if (train_cmd->parsed()) return CmdTrain(c, train, args, out);
    if (eval_cmd->parsed()) return CmdEvaluate(c, evaluate, args, out);
    if (predict_cmd->parsed()) return CmdPredict(c, predict, args, out, err);
    if (ablate_cmd->parsed()) return CmdAblate(c, ablate, args, out);
    if (ens_cmd->parsed()) return CmdEnsemble(c, ensemble, args, out);
    if (audit_cmd->parsed()) return CmdAudit(c, audit, args, out);
    return kExitInternal;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace hostility::cli
