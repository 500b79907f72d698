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

#ifndef HOSTILITY_VECTORIZE_H_
#define HOSTILITY_VECTORIZE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hostility/corpus.h"
#include "hostility/lexfeat.h"

namespace hostility {

using TokenList = std::vector<std::string>;

// Index/value pairs with strictly increasing indices.
struct SparseVector {
  std::vector<uint32_t> indices;
  std::vector<double> values;

  size_t nnz() const { return indices.size(); }
  double Norm() const;
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

// Smoothed TF-IDF: idf(t) = ln((1 + N) / (1 + df(t))) + 1, raw term counts,
// L2-normalized rows. Vocabulary columns are in lexicographic term order.
class TfIdfModel {
 public:
  // Throws DataError if every document is empty.
  static TfIdfModel Fit(std::span<const TokenList> docs, int min_df = 1);
  static TfIdfModel FromParts(std::vector<std::string> terms,
                              std::vector<double> idf, size_t doc_count);

  SparseVector Transform(std::span<const std::string> tokens) const;

  size_t size() const { return terms_.size(); }
  size_t doc_count() const { return doc_count_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }
  std::optional<uint32_t> IndexOf(const std::string& term) const;

 private:
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  std::unordered_map<std::string, uint32_t> index_;
  size_t doc_count_ = 0;
};

// Pretrained word vectors from the plain-text "count dim" format.
class EmbeddingTable {
 public:
  // When `keep` is given only those tokens are stored; the header count is
  // still validated against the number of data lines. A repeated token
  // replaces the earlier vector with a warning.
  static EmbeddingTable Load(const std::filesystem::path& path,
                             const std::unordered_set<std::string>* keep =
                                 nullptr);
  static EmbeddingTable Parse(std::string_view content,
                              std::string_view source,
                              const std::unordered_set<std::string>* keep =
                                  nullptr);

  int dim() const { return dim_; }
  size_t size() const { return index_.size(); }
  // Pointer to `dim()` floats, or nullptr when out of vocabulary.
  const float* Find(const std::string& token) const;
  // Fingerprint of the source file bytes.
  const std::string& checksum() const { return checksum_; }

 private:
  class Builder;
  int dim_ = 0;
  std::unordered_map<std::string, uint32_t> index_;
  std::vector<float> data_;
  std::string checksum_;
};

// Mean of the in-vocabulary token vectors; zeros when none are known.
std::vector<double> EmbedAverage(const EmbeddingTable& table,
                                 std::span<const std::string> tokens);

// A cleaned document tagged with its gold coarse label.
struct TaggedDoc {
  CoarseLabel label = CoarseLabel::kReal;
  TokenList tokens;
};

struct EntityScore {
  CoarseLabel label = CoarseLabel::kReal;  // class that selected the term
  double misclassified = 0;  // V_c: among misclassified validation posts
  double own_train = 0;      // T_c: among train posts of the class
  double other_train = 0;    // among train posts of the other classes
};

struct EntitySelectConfig {
  int top_k = 50;
  double ratio_min = 0.25;
  double epsilon = 1e-9;

  friend bool operator==(const EntitySelectConfig&,
                         const EntitySelectConfig&) = default;
};

using TermScores = std::map<std::string, double>;

// Mean TF-IDF weight of each term over a group of documents, with the
// TF-IDF model fitted on the group itself. Empty group -> empty map.
TermScores GroupTfIdfScores(std::span<const TokenList> docs);

// Candidates for one class: terms with min(V, T_c) > 0 and
// T_other / (T_c + eps) <= ratio_min, ranked by min(V, T_c) descending then
// term ascending, truncated to top_k.
std::vector<std::string> RankEntityCandidates(
    const TermScores& misclassified, const TermScores& own_train,
    const TermScores& other_train, const EntitySelectConfig& config);

// Entity terms for the bag-of-words block.
class EntityVocab {
 public:
  EntityVocab() = default;
  EntityVocab(std::vector<std::string> terms,
              std::vector<EntityScore> scores);

  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<EntityScore>& scores() const { return scores_; }

  // Binary presence vector over the vocabulary.
  SparseVector Bow(std::span<const std::string> tokens) const;

  // "term<TAB>V<TAB>T_c<TAB>T_other" per line.
  std::string ToTsv() const;
  static EntityVocab FromTsv(std::string_view content, std::string_view source);

 private:
  std::vector<std::string> terms_;
  std::vector<EntityScore> scores_;
  std::unordered_map<std::string, uint32_t> index_;
};

// For every true class among the misclassified validation documents,
// compares group TF-IDF scores against the train split and keeps the best
// top_k terms; the union is returned in lexicographic order. An empty
// misclassified list yields an empty vocabulary with a warning.
EntityVocab SelectEntityTerms(std::span<const TaggedDoc> train,
                              std::span<const TaggedDoc> misclassified,
                              const EntitySelectConfig& config = {});

struct FeatureLayout {
  int dense_dim = 0;
  int sparse_dim = 0;
  int meta_dim = kMetaDim;

  int total() const { return dense_dim + sparse_dim + meta_dim; }
  int sparse_offset() const { return dense_dim; }
  int meta_offset() const { return dense_dim + sparse_dim; }
  friend bool operator==(const FeatureLayout&, const FeatureLayout&) = default;
};

// Block order: dense | sparse | meta.
struct FeatureVector {
  std::vector<double> dense;
  SparseVector sparse;
  std::array<double, kMetaDim> meta{};

  // Materialized length-total() vector.
  std::vector<double> ToDense(const FeatureLayout& layout) const;
};

// Throws std::invalid_argument when a block does not fit the layout.
FeatureVector Assemble(std::vector<double> dense, SparseVector sparse,
                       const std::array<double, kMetaDim>& meta,
                       const FeatureLayout& layout);

// Appends `b` shifted by `offset` to `a`. All indices of `b` + offset must
// exceed those of `a`.
void AppendShifted(SparseVector* a, const SparseVector& b, uint32_t offset);

}  // namespace hostility

#endif  // HOSTILITY_VECTORIZE_H_
