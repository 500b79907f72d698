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

#include "hostility/vectorize.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hostility/error.h"
#include "hostility/hash.h"
#include "hostility/log.h"
#include "strings.h"

namespace hostility {

double SparseVector::Norm() const {
  double sum = 0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum);
}

TfIdfModel TfIdfModel::Fit(std::span<const TokenList> docs, int min_df) {
  std::map<std::string, size_t> df;
  bool any_tokens = false;
  for (const TokenList& doc : docs) {
    std::vector<std::string> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const std::string& t : unique) ++df[t];
    any_tokens = any_tokens || !doc.empty();
  }
  if (!any_tokens) throw DataError("cannot fit TF-IDF: all documents are empty");

  TfIdfModel model;
  model.doc_count_ = docs.size();
  const double n = static_cast<double>(docs.size());
  for (const auto& [term, count] : df) {
    if (static_cast<int>(count) < min_df) continue;
    model.index_.emplace(term, static_cast<uint32_t>(model.terms_.size()));
    model.terms_.push_back(term);
    model.idf_.push_back(std::log((1.0 + n) / (1.0 + count)) + 1.0);
  }
  return model;
}

TfIdfModel TfIdfModel::FromParts(std::vector<std::string> terms,
                                 std::vector<double> idf, size_t doc_count) {
  if (terms.size() != idf.size()) {
    throw DataError("TF-IDF vocabulary and idf lengths differ");
  }
  TfIdfModel model;
  model.terms_ = std::move(terms);
  model.idf_ = std::move(idf);
  model.doc_count_ = doc_count;
  for (size_t i = 0; i < model.terms_.size(); ++i) {
    if (!(model.idf_[i] > 0)) throw DataError("non-positive idf value");
    if (!model.index_.emplace(model.terms_[i], static_cast<uint32_t>(i)).second) {
      throw DataError("duplicate TF-IDF term: " + model.terms_[i]);
    }
  }
  return model;
}

std::optional<uint32_t> TfIdfModel::IndexOf(const std::string& term) const {
  auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVector TfIdfModel::Transform(std::span<const std::string> tokens) const {
  std::map<uint32_t, double> counts;
  for (const std::string& t : tokens) {
    auto it = index_.find(t);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  out.indices.reserve(counts.size());
  out.values.reserve(counts.size());
  for (const auto& [index, count] : counts) {
    out.indices.push_back(index);
    out.values.push_back(count * idf_[index]);
  }
  const double norm = out.Norm();
  if (norm > 0) {
    for (double& v : out.values) v /= norm;
  }
  return out;
}

class EmbeddingTable::Builder {
 public:
  Builder(std::string source, const std::unordered_set<std::string>* keep)
      : source_(std::move(source)), keep_(keep) {}

  void AddLine(std::string_view line) {
    ++line_number_;
    hash_.Update(line).Update("\n");
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_number_ == 1) {
      ParseHeader(line);
      return;
    }
    if (internal::Trim(line).empty()) return;
    ++rows_;
    size_t space = line.find(' ');
    if (space == std::string_view::npos || space == 0) {
      Fail("expected a token followed by " + std::to_string(table_.dim_) +
           " values");
    }
    std::string token(line.substr(0, space));
    std::string_view rest = line.substr(space + 1);

    scratch_.clear();
    const char* p = rest.data();
    const char* end = rest.data() + rest.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      float value;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc()) Fail("unparsable value");
      scratch_.push_back(value);
      p = next;
    }
    if (static_cast<int>(scratch_.size()) != table_.dim_) {
      Fail("expected " + std::to_string(table_.dim_) + " values, found " +
           std::to_string(scratch_.size()));
    }
    if (keep_ != nullptr && keep_->count(token) == 0) return;

    auto [it, inserted] = table_.index_.emplace(
        token, static_cast<uint32_t>(table_.data_.size() / table_.dim_));
    if (inserted) {
      table_.data_.insert(table_.data_.end(), scratch_.begin(), scratch_.end());
    } else {
      Warn(Where() + ": duplicate token '" + token + "', keeping last vector");
      std::copy(scratch_.begin(), scratch_.end(),
                table_.data_.begin() +
                    static_cast<std::ptrdiff_t>(it->second) * table_.dim_);
    }
  }

  EmbeddingTable Finish() {
    if (line_number_ == 0) throw DataError(source_ + ": empty embedding file");
    if (rows_ != expected_rows_) {
      throw DataError(source_ + ": header declares " +
                      std::to_string(expected_rows_) + " vectors, found " +
                      std::to_string(rows_));
    }
    table_.checksum_ = hash_.hex();
    return std::move(table_);
  }

 private:
  void ParseHeader(std::string_view line) {
    std::istringstream in{std::string(line)};
    long long count = -1, dim = -1;
    if (!(in >> count >> dim) || count < 0 || dim <= 0) {
      Fail("header must be 'count dim'");
    }
    expected_rows_ = static_cast<size_t>(count);
    table_.dim_ = static_cast<int>(dim);
  }

  std::string Where() const {
    return source_ + ":" + std::to_string(line_number_);
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw DataError(Where() + ": " + what);
  }

  std::string source_;
  const std::unordered_set<std::string>* keep_;
  EmbeddingTable table_;
  Fnv1a hash_;
  std::vector<float> scratch_;
  size_t line_number_ = 0;
  size_t rows_ = 0;
  size_t expected_rows_ = 0;
};

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path& path,
                                    const std::unordered_set<std::string>* keep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file: " + path.string());
  Builder builder(path.string(), keep);
  std::string line;
  while (std::getline(in, line)) builder.AddLine(line);
  return builder.Finish();
}

EmbeddingTable EmbeddingTable::Parse(std::string_view content,
                                     std::string_view source,
                                     const std::unordered_set<std::string>* keep) {
  Builder builder(std::string(source), keep);
  for (std::string_view line : internal::SplitOn(content, '\n')) {
    builder.AddLine(line);
  }
  return builder.Finish();
}

const float* EmbeddingTable::Find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return nullptr;
  return data_.data() + static_cast<size_t>(it->second) * dim_;
}

std::vector<double> EmbedAverage(const EmbeddingTable& table,
                                 std::span<const std::string> tokens) {
  std::vector<double> sum(table.dim(), 0.0);
  int known = 0;
  for (const std::string& t : tokens) {
    const float* v = table.Find(t);
    if (v == nullptr) continue;
    for (int k = 0; k < table.dim(); ++k) sum[k] += v[k];
    ++known;
  }
  if (known > 0) {
    for (double& x : sum) x /= known;
  }
  return sum;
}

TermScores GroupTfIdfScores(std::span<const TokenList> docs) {
  TermScores scores;
  bool any = std::any_of(docs.begin(), docs.end(),
                         [](const TokenList& d) { return !d.empty(); });
  if (!any) return scores;
  TfIdfModel model = TfIdfModel::Fit(docs, 1);
  std::vector<double> sums(model.size(), 0.0);
  for (const TokenList& doc : docs) {
    SparseVector v = model.Transform(doc);
    for (size_t k = 0; k < v.nnz(); ++k) sums[v.indices[k]] += v.values[k];
  }
  const double n = static_cast<double>(docs.size());
  for (size_t i = 0; i < model.size(); ++i) {
    scores.emplace(model.terms()[i], sums[i] / n);
  }
  return scores;
}

std::vector<std::string> RankEntityCandidates(
    const TermScores& misclassified, const TermScores& own_train,
    const TermScores& other_train, const EntitySelectConfig& config) {
  auto lookup = [](const TermScores& m, const std::string& t) {
    auto it = m.find(t);
    return it == m.end() ? 0.0 : it->second;
  };
  std::vector<std::pair<double, std::string>> ranked;
  for (const auto& [term, v] : misclassified) {
    const double own = lookup(own_train, term);
    const double other = lookup(other_train, term);
    const double strength = std::min(v, own);
    if (!(strength > 0)) continue;
    if (other / (own + config.epsilon) > config.ratio_min) continue;
    ranked.emplace_back(strength, term);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  const size_t keep =
      std::min(ranked.size(), static_cast<size_t>(std::max(config.top_k, 0)));
  for (size_t i = 0; i < keep; ++i) out.push_back(ranked[i].second);
  return out;
}

EntityVocab::EntityVocab(std::vector<std::string> terms,
                         std::vector<EntityScore> scores)
    : terms_(std::move(terms)), scores_(std::move(scores)) {
  if (terms_.size() != scores_.size()) {
    throw std::invalid_argument("entity terms and scores differ in length");
  }
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (!index_.emplace(terms_[i], static_cast<uint32_t>(i)).second) {
      throw std::invalid_argument("duplicate entity term: " + terms_[i]);
    }
  }
}

SparseVector EntityVocab::Bow(std::span<const std::string> tokens) const {
  std::vector<uint32_t> hits;
  for (const std::string& t : tokens) {
    auto it = index_.find(t);
    if (it != index_.end()) hits.push_back(it->second);
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  SparseVector out;
  out.indices = std::move(hits);
  out.values.assign(out.indices.size(), 1.0);
  return out;
}

std::string EntityVocab::ToTsv() const {
  std::ostringstream out;
  out.precision(17);
  for (size_t i = 0; i < terms_.size(); ++i) {
    out << terms_[i] << '\t' << scores_[i].misclassified << '\t'
        << scores_[i].own_train << '\t' << scores_[i].other_train << '\n';
  }
  return out.str();
}

EntityVocab EntityVocab::FromTsv(std::string_view content,
                                 std::string_view source) {
  std::vector<std::string> terms;
  std::vector<EntityScore> scores;
  std::vector<std::string_view> lines = internal::Lines(content);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::vector<std::string_view> parts = internal::SplitOn(lines[i], '\t');
    if (parts.size() != 4) {
      throw DataError(std::string(source) + ":" + std::to_string(i + 1) +
                      ": expected term and three scores");
    }
    EntityScore s;
    try {
      s.misclassified = std::stod(std::string(parts[1]));
      s.own_train = std::stod(std::string(parts[2]));
      s.other_train = std::stod(std::string(parts[3]));
    } catch (const std::exception&) {
      throw DataError(std::string(source) + ":" + std::to_string(i + 1) +
                      ": bad score");
    }
    terms.emplace_back(parts[0]);
    scores.push_back(s);
  }
  return EntityVocab(std::move(terms), std::move(scores));
}

EntityVocab SelectEntityTerms(std::span<const TaggedDoc> train,
                              std::span<const TaggedDoc> misclassified,
                              const EntitySelectConfig& config) {
  if (misclassified.empty()) {
    Warn("entity selection: no misclassified validation posts");
    return EntityVocab();
  }
  std::vector<CoarseLabel> classes;
  for (const TaggedDoc& d : misclassified) classes.push_back(d.label);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  auto group = [](std::span<const TaggedDoc> docs, CoarseLabel label,
                  bool same) {
    std::vector<TokenList> out;
    for (const TaggedDoc& d : docs) {
      if ((d.label == label) == same) out.push_back(d.tokens);
    }
    return out;
  };

  std::map<std::string, EntityScore> selected;
  for (CoarseLabel c : classes) {
    const TermScores v = GroupTfIdfScores(group(misclassified, c, true));
    const TermScores own = GroupTfIdfScores(group(train, c, true));
    const TermScores other = GroupTfIdfScores(group(train, c, false));
    for (const std::string& term : RankEntityCandidates(v, own, other, config)) {
      if (selected.count(term)) continue;
      EntityScore s;
      s.label = c;
      s.misclassified = v.at(term);
      s.own_train = own.at(term);
      auto it = other.find(term);
      s.other_train = it == other.end() ? 0.0 : it->second;
      selected.emplace(term, s);
    }
  }
  std::vector<std::string> terms;
  std::vector<EntityScore> scores;
  for (auto& [term, score] : selected) {
    terms.push_back(term);
    scores.push_back(score);
  }
  return EntityVocab(std::move(terms), std::move(scores));
}

std::vector<double> FeatureVector::ToDense(const FeatureLayout& layout) const {
  std::vector<double> out(layout.total(), 0.0);
  std::copy(dense.begin(), dense.end(), out.begin());
  for (size_t k = 0; k < sparse.nnz(); ++k) {
    out[layout.sparse_offset() + sparse.indices[k]] = sparse.values[k];
  }
  std::copy(meta.begin(), meta.end(), out.begin() + layout.meta_offset());
  return out;
}

FeatureVector Assemble(std::vector<double> dense, SparseVector sparse,
                       const std::array<double, kMetaDim>& meta,
                       const FeatureLayout& layout) {
  if (static_cast<int>(dense.size()) != layout.dense_dim) {
    throw std::invalid_argument("dense block has length " +
                                std::to_string(dense.size()) + ", layout expects " +
                                std::to_string(layout.dense_dim));
  }
  if (sparse.indices.size() != sparse.values.size()) {
    throw std::invalid_argument("sparse block indices/values differ in length");
  }
  for (size_t k = 0; k < sparse.nnz(); ++k) {
    if (static_cast<int>(sparse.indices[k]) >= layout.sparse_dim ||
        (k > 0 && sparse.indices[k] <= sparse.indices[k - 1])) {
      throw std::invalid_argument("sparse block does not fit layout");
    }
  }
  if (layout.meta_dim != kMetaDim) {
    throw std::invalid_argument("meta block must have length 6");
  }
  FeatureVector v;
  v.dense = std::move(dense);
  v.sparse = std::move(sparse);
  v.meta = meta;
  return v;
}

void AppendShifted(SparseVector* a, const SparseVector& b, uint32_t offset) {
  for (size_t k = 0; k < b.nnz(); ++k) {
    a->indices.push_back(b.indices[k] + offset);
    a->values.push_back(b.values[k]);
  }
}

}  // namespace hostility
