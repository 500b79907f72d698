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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "hostility/evalreport.h"
#include "hostility/vectorize.h"

namespace hostility::testing {

TfIdfOracle ComputeTfIdf(const std::vector<Doc>& docs, const Doc& query,
                         int min_df) {
  std::set<std::string> all;
  for (const Doc& d : docs) all.insert(d.begin(), d.end());
  TfIdfOracle out;
  const double n = static_cast<double>(docs.size());
  for (const std::string& term : all) {
    int df = 0;
    for (const Doc& d : docs) {
      if (std::find(d.begin(), d.end(), term) != d.end()) ++df;
    }
    if (df < min_df) continue;
    out.vocab.push_back(term);
    out.idf.push_back(std::log((1.0 + n) / (1.0 + df)) + 1.0);
  }
  double sq = 0;
  for (size_t i = 0; i < out.vocab.size(); ++i) {
    const double tf = static_cast<double>(
        std::count(query.begin(), query.end(), out.vocab[i]));
    out.vector.push_back(tf * out.idf[i]);
    sq += out.vector.back() * out.vector.back();
  }
  if (sq > 0) {
    const double norm = std::sqrt(sq);
    for (double& v : out.vector) v /= norm;
  }
  return out;
}

double WeightedF1Oracle(const std::vector<int>& y_true,
                        const std::vector<int>& y_pred) {
  std::set<int> labels(y_true.begin(), y_true.end());
  labels.insert(y_pred.begin(), y_pred.end());
  double sum = 0;
  for (int c : labels) {
    long tp = 0, fp = 0, fn = 0, support = 0;
    for (size_t i = 0; i < y_true.size(); ++i) {
      if (y_true[i] == c) ++support;
      if (y_true[i] == c && y_pred[i] == c) ++tp;
      if (y_true[i] != c && y_pred[i] == c) ++fp;
      if (y_true[i] == c && y_pred[i] != c) ++fn;
    }
    const long den = 2 * tp + fp + fn;
    const double f1 = den == 0 ? 0.0 : 2.0 * tp / den;
    sum += f1 * support;
  }
  return sum / static_cast<double>(y_true.size());
}

namespace {

const char* const kTerms[] = {"a", "b", "c", "d", "e"};

Doc DocFromMask(int mask) {
  Doc d;
  for (int k = 0; k < 5; ++k) {
    if (!(mask & (1 << k))) continue;
    d.push_back(kTerms[k]);
    if (k % 2 == 1) d.push_back(kTerms[k]);
  }
  return d;
}

std::string Describe(const std::vector<Doc>& docs, const Doc& query) {
  std::ostringstream s;
  s << "docs=";
  for (const Doc& d : docs) {
    s << "[";
    for (const std::string& t : d) s << t;
    s << "]";
  }
  s << " query=";
  for (const std::string& t : query) s << t;
  return s.str();
}

void Compare(const std::vector<Doc>& docs, const TfIdfModel& model,
             const Doc& query, double tolerance, OracleCheck* check) {
  ++check->cases;
  const TfIdfOracle want = ComputeTfIdf(docs, query);
  bool ok = model.terms() == want.vocab;
  double err = 0;
  if (ok) {
    for (size_t i = 0; i < want.idf.size(); ++i) {
      err = std::max(err, std::abs(model.idf()[i] - want.idf[i]));
    }
    std::vector<double> got(want.vocab.size(), 0.0);
    const SparseVector sv = model.Transform(query);
    for (size_t k = 0; k < sv.nnz(); ++k) got[sv.indices[k]] = sv.values[k];
    for (size_t i = 0; i < got.size(); ++i) {
      err = std::max(err, std::abs(got[i] - want.vector[i]));
    }
  }
  check->max_error = std::max(check->max_error, err);
  if (!ok || err > tolerance) {
    if (check->failures++ == 0) check->first_failure = Describe(docs, query);
  }
}

// Enumerates multisets of document masks in non-decreasing order.
void Enumerate(std::vector<int>* masks, int next_min, int max_docs,
               double tolerance, OracleCheck* check) {
  if (!masks->empty()) {
    std::vector<Doc> docs;
    bool any = false;
    for (int m : *masks) {
      docs.push_back(DocFromMask(m));
      any |= m != 0;
    }
    if (any) {
      const TfIdfModel model = TfIdfModel::Fit(docs);
      for (const Doc& d : docs) Compare(docs, model, d, tolerance, check);
      Compare(docs, model, {"e", "a", "c", "c", "e", "e", "b", "z"}, tolerance,
              check);
    }
  }
  if (static_cast<int>(masks->size()) == max_docs) return;
  for (int m = next_min; m < 32; ++m) {
    masks->push_back(m);
    Enumerate(masks, m, max_docs, tolerance, check);
    masks->pop_back();
  }
}

}  // namespace

OracleCheck CheckTfIdfExhaustive(double tolerance) {
  OracleCheck check;
  std::vector<int> masks;
  Enumerate(&masks, 0, 5, tolerance, &check);
  return check;
}

OracleCheck CheckWeightedF1Random(int cases, uint64_t seed, double tolerance) {
  OracleCheck check;
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const int classes = 1 + static_cast<int>(rng() % 4);
    std::vector<int> t(n), p(n);
    for (int i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng() % classes);
      p[i] = static_cast<int>(rng() % classes);
    }
    ++check.cases;
    const double err = std::abs(WeightedF1(t, p) - WeightedF1Oracle(t, p));
    check.max_error = std::max(check.max_error, err);
    if (err > tolerance && check.failures++ == 0) {
      check.first_failure = "case " + std::to_string(c);
    }
  }
  return check;
}

}  // namespace hostility::testing
