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

#ifndef HOSTILITY_TOOLS_CLI_H_
#define HOSTILITY_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hostility/ensemble.h"
#include "hostility/pipeline.h"

namespace hostility::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

inline constexpr char kDataDirEnv[] = "HOSTILITY_DATA_DIR";

struct DataPaths {
  // Either one file with a split column or one file per split.
  std::filesystem::path all;
  std::filesystem::path train;
  std::filesystem::path validation;
  std::filesystem::path test;
  std::optional<char> delimiter;
};

struct ResourcePaths {
  std::filesystem::path lexicon;
  std::filesystem::path stopwords;
  std::filesystem::path contractions;
  std::filesystem::path emoji_ranges;
  std::filesystem::path embeddings;
};

struct EnsembleMember {
  std::string name;
  // Partial pipeline config ("features", "coarse", "fine", ...) layered
  // over the run's pipeline config.
  nlohmann::json overrides = nlohmann::json::object();
};

struct EnsembleConfig {
  std::vector<EnsembleMember> members;
  VoteRule rule = VoteRule::kMajority;
  // Best validation-F1 member when unset.
  std::optional<int> tie_break;
  bool stack_linear = false;  // "stack": "linear"
};

// The member's pipeline config: `base` with the member overrides applied.
PipelineConfig MemberConfig(const PipelineConfig& base,
                            const EnsembleMember& member);

// Three default members: TF-IDF alone, TF-IDF with m1-m3, and either
// embeddings with m1-m3 (when `have_embeddings`) or TF-IDF with entity
// bag-of-words and m1-m3.
std::vector<EnsembleMember> DefaultMembers(bool have_embeddings);

struct GridConfig {
  std::vector<double> learning_rates;
  std::vector<double> l2;
  std::vector<int> epochs;
  bool enabled() const {
    return !learning_rates.empty() || !l2.empty() || !epochs.empty();
  }
};

struct PseudoConfig {
  bool enabled = false;
  double confidence_min = 0.9;
  int rounds = 1;
  // Unlabeled posts; the test split's texts when empty.
  std::filesystem::path unlabeled;
};

struct RunConfig {
  PipelineConfig pipeline;
  DataPaths data;
  ResourcePaths resources;
  EnsembleConfig ensemble;
  GridConfig grid;
  PseudoConfig pseudo;
  uint64_t seed = 42;
  std::filesystem::path output_dir = "hostility_out";

  nlohmann::json ToJson() const;
};

// Parses the JSON run configuration. Relative data paths resolve against
// `data_dir`, every other relative path against `base_dir`. Throws
// ConfigError naming the offending field.
RunConfig RunConfigFromJson(const nlohmann::json& j,
                            const std::filesystem::path& base_dir,
                            const std::filesystem::path& data_dir);

// Runs one command line (args[0] is the program name) and returns the exit
// code. Normal output goes to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace hostility::cli

#endif  // HOSTILITY_TOOLS_CLI_H_
