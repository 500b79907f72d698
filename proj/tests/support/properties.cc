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

#include "properties.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "hostility/ensemble.h"
#include "hostility/evalreport.h"
#include "hostility/lexfeat.h"
#include "hostility/model.h"
#include "hostility/preprocess.h"
#include "hostility/text_scan.h"
#include "hostility/utf8.h"
#include "hostility/vectorize.h"

namespace hostility::testing {

namespace {

const std::vector<std::string> kWords = {
    "Fight", "the", "virus", "corona", "Vaccine", "SAFE", "news", "y'all",
    "how're", "don't", "it’s", "gonna", "can't", "Cannot", "WHO",
    "lockdown", "कोरोना", "वायरस", "खबर", "यह", "है", "नमस्ते", "अब\u200Bतक",
    "सरकार", "चूतिया", "गांडू", "फर्जी", "किसान"};
const std::vector<std::string> kEntities = {
    "@WHO", "@user_12", "#covid", "#भारत", "https://t.co/x1",
    "http://a.b/c?d=1", "www.example.com", "t.co/abc", "a@b.com", "#"};
const std::vector<std::string> kEmoji = {
    "\U0001F600", "\U0001F64F\U0001F3FD", "\U0001F468\u200D\U0001F469\u200D\U0001F467",
    "\U0001F1EE\U0001F1F3", "❤️", "\U0001F637", "\U0001F1EE"};
const std::vector<std::string> kPunct = {",", ".", "!", "?", "...", "\"", "(",
                                         ")", "-", "—", ":", "।"};
const std::vector<std::string> kNumbers = {"2020", "19", "१२३",
                                           "3.5", "covid19"};
const std::vector<std::string> kSeparators = {" ", " ", " ", "  ", "\t",
                                              "\n", "", " "};

template <typename T>
const T& Pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[rng() % v.size()];
}

std::string Join(const std::vector<std::string>& tokens) {
  std::string s;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) s += ' ';
    s += tokens[i];
  }
  return s;
}

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }
  void Check(bool ok, const std::function<std::string()>& detail) {
    ++result_.cases;
    if (!ok && result_.failures++ == 0) result_.first_failure = detail();
  }
  PropertyResult Done() { return result_; }

 private:
  PropertyResult result_;
};

PropertyResult CleanIdempotence(int cases, std::mt19937_64& rng) {
  Recorder r("preprocess: clean is idempotent");
  const Preprocessor en = Preprocessor::Create(Language::kEnglish);
  const Preprocessor hi = Preprocessor::Create(Language::kHindi);
  for (int c = 0; c < cases; ++c) {
    const std::string raw = RandomPost(rng);
    for (const Preprocessor* p : {&en, &hi}) {
      const CleanDoc once = p->Clean(raw);
      const CleanDoc twice = p->Clean(once.Text());
      r.Check(once.tokens == twice.tokens,
              [&] { return "raw=\"" + raw + "\" once=\"" + once.Text() + "\""; });
    }
  }
  return r.Done();
}

PropertyResult CleanTokensAreClean(int cases, std::mt19937_64& rng) {
  Recorder r("preprocess: no entity, whitespace or zero-width in tokens");
  const Preprocessor en = Preprocessor::Create(Language::kEnglish);
  const Preprocessor hi = Preprocessor::Create(Language::kHindi);
  for (int c = 0; c < cases; ++c) {
    const std::string raw = RandomPost(rng);
    for (const Preprocessor* p : {&en, &hi}) {
      const CleanDoc doc = p->Clean(raw);
      bool ok = ScanEntities(utf8::DecodeOrThrow(doc.Text(), "clean"),
                             p->emoji()).empty();
      for (const std::string& t : doc.tokens) {
        ok &= !t.empty();
        for (char32_t cp : utf8::DecodeOrThrow(t, "token")) {
          ok &= !chars::IsWhitespace(cp) && !chars::IsZeroWidth(cp) &&
                !p->emoji().Contains(cp) && cp != '@' && cp != '#';
        }
      }
      r.Check(ok, [&] { return "raw=\"" + raw + "\" clean=\"" + doc.Text() + "\""; });
    }
  }
  return r.Done();
}

PropertyResult TokenizeConcatenation(int cases, std::mt19937_64& rng) {
  Recorder r("preprocess: tokenize(a) ++ tokenize(b) = tokenize(a + ' ' + b)");
  const Preprocessor hi = Preprocessor::Create(Language::kHindi);
  for (int c = 0; c < cases; ++c) {
    const Language lang = c % 2 ? Language::kEnglish : Language::kHindi;
    const std::string a = hi.Clean(RandomPost(rng)).Text();
    const std::string b = hi.Clean(RandomPost(rng)).Text();
    std::vector<std::string> joined = Tokenize(a, lang);
    for (std::string& t : Tokenize(b, lang)) joined.push_back(std::move(t));
    r.Check(joined == Tokenize(a + " " + b, lang),
            [&] { return "a=\"" + a + "\" b=\"" + b + "\""; });
  }
  return r.Done();
}

PropertyResult EntityAdditivity(int cases, std::mt19937_64& rng) {
  Recorder r("lexfeat: entity counts are additive over ' '-joined text");
  for (int c = 0; c < cases; ++c) {
    const std::string a = RandomPost(rng), b = RandomPost(rng);
    r.Check(CountEntities(a + " " + b) == CountEntities(a) + CountEntities(b),
            [&] { return "a=\"" + a + "\" b=\"" + b + "\""; });
  }
  return r.Done();
}

PropertyResult AbusiveMonotone(int cases, std::mt19937_64& rng) {
  Recorder r("lexfeat: appending a lexicon term adds exactly one hit");
  const Lexicon& lex = Lexicon::Default();
  const std::vector<std::string> terms = lex.SortedTerms();
  for (int c = 0; c < cases; ++c) {
    std::vector<std::string> tokens;
    const int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      tokens.push_back(rng() % 3 == 0 ? Pick(rng, terms) : Pick(rng, kWords));
    }
    const int before = CountAbusive(tokens, lex);
    tokens.push_back(Pick(rng, terms));
    r.Check(CountAbusive(tokens, lex) == before + 1,
            [&] { return "tokens=\"" + Join(tokens) + "\""; });
  }
  return r.Done();
}

PropertyResult VoteIdempotence(int cases, std::mt19937_64& rng) {
  Recorder r("ensemble: unanimous and 2k+1-copy votes return the member label");
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + 2 * static_cast<int>(rng() % 4);
    const int label = static_cast<int>(rng() % 5);
    EnsembleSpec spec;
    spec.members.assign(n, "m");
    spec.tie_break = static_cast<int>(rng() % n);
    const std::vector<int> preds(n, label);
    r.Check(Vote(preds, spec) == label,
            [&] { return "n=" + std::to_string(n) + " label=" + std::to_string(label); });
  }
  return r.Done();
}

PropertyResult VotePermutation(int cases, std::mt19937_64& rng) {
  Recorder r("ensemble: strict-majority vote is permutation invariant");
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const int winner = static_cast<int>(rng() % 4);
    const int majority = n / 2 + 1 + static_cast<int>(rng() % (n - n / 2));
    std::vector<int> preds(majority, winner);
    while (static_cast<int>(preds.size()) < n) {
      preds.push_back((winner + 1 + static_cast<int>(rng() % 3)) % 4);
    }
    EnsembleSpec spec;
    spec.members.assign(n, "m");
    spec.tie_break = static_cast<int>(rng() % n);
    const int first = Vote(preds, spec);
    std::shuffle(preds.begin(), preds.end(), rng);
    spec.tie_break = static_cast<int>(rng() % n);
    r.Check(first == winner && Vote(preds, spec) == winner,
            [&] { return "n=" + std::to_string(n); });
  }
  return r.Done();
}

PropertyResult LogicalOrDominatesAnd(int cases, std::mt19937_64& rng) {
  Recorder r("ensemble: logical OR >= logical AND");
  for (int c = 0; c < cases; ++c) {
    std::vector<uint8_t> p(1 + rng() % 6);
    for (uint8_t& v : p) v = rng() % 2;
    const bool any = LogicalCombine(p, VoteRule::kLogicalOr);
    const bool all = LogicalCombine(p, VoteRule::kLogicalAnd);
    r.Check(any >= all && any == (std::count(p.begin(), p.end(), 1) > 0) &&
                all == (std::count(p.begin(), p.end(), 1) ==
                        static_cast<long>(p.size())),
            [] { return std::string("or/and mismatch"); });
  }
  return r.Done();
}

EmbeddingTable RandomTable(std::mt19937_64& rng, int dim, int words) {
  std::ostringstream s;
  s << words << " " << dim << "\n";
  std::uniform_real_distribution<double> u(-2, 2);
  for (int w = 0; w < words; ++w) {
    s << "w" << w;
    for (int d = 0; d < dim; ++d) s << " " << u(rng);
    s << "\n";
  }
  return EmbeddingTable::Parse(s.str(), "random");
}

PropertyResult EmbedAveragePermutation(int cases, std::mt19937_64& rng) {
  Recorder r("vectorize: embedding average ignores order and duplication");
  for (int c = 0; c < cases; ++c) {
    const int dim = 1 + static_cast<int>(rng() % 6);
    const int words = 1 + static_cast<int>(rng() % 10);
    const EmbeddingTable table = RandomTable(rng, dim, words);
    std::vector<std::string> tokens;
    const int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      tokens.push_back("w" + std::to_string(rng() % (words + 3)));
    }
    const std::vector<double> base = EmbedAverage(table, tokens);
    std::vector<std::string> shuffled = tokens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<std::string> doubled = tokens;
    doubled.insert(doubled.end(), tokens.begin(), tokens.end());
    const std::vector<double> a = EmbedAverage(table, shuffled);
    const std::vector<double> b = EmbedAverage(table, doubled);
    bool ok = base.size() == static_cast<size_t>(dim) && a.size() == base.size() &&
              b.size() == base.size();
    for (size_t d = 0; ok && d < base.size(); ++d) {
      ok = std::abs(a[d] - base[d]) <= 1e-12 && std::abs(b[d] - base[d]) <= 1e-12;
    }
    r.Check(ok, [&] { return "tokens=\"" + Join(tokens) + "\""; });
  }
  return r.Done();
}

PropertyResult TfIdfNorm(int cases, std::mt19937_64& rng) {
  Recorder r("vectorize: TF-IDF rows have norm 0 or 1");
  const Preprocessor hi = Preprocessor::Create(Language::kHindi);
  for (int c = 0; c < cases; ++c) {
    std::vector<TokenList> docs;
    for (int d = 0; d < 4; ++d) docs.push_back(hi.Clean(RandomPost(rng)).tokens);
    docs.push_back({"anchor"});
    const TfIdfModel model = TfIdfModel::Fit(docs);
    const TokenList query = hi.Clean(RandomPost(rng)).tokens;
    const double norm = model.Transform(query).Norm();
    r.Check(std::abs(norm) <= 1e-9 || std::abs(norm - 1) <= 1e-9,
            [&] { return "norm=" + std::to_string(norm); });
  }
  return r.Done();
}

PropertyResult MultilabelGating(int cases, std::mt19937_64& rng) {
  Recorder r("model: multilabel gating, threshold and fallback");
  std::uniform_real_distribution<double> u(-3, 3);
  for (int c = 0; c < cases; ++c) {
    const bool logistic = rng() % 2;
    const double threshold = 0.1 + 0.8 * (rng() % 100) / 100.0;
    std::vector<ClassScore> scores;
    for (FineLabel l : kAllFineLabels) {
      const double s = u(rng);
      scores.push_back({l, s,
                        logistic ? std::optional<double>(1 / (1 + std::exp(-s)))
                                 : std::nullopt});
    }
    const FineSet gated = DecideMultilabel(scores, false, threshold);
    const FineSet open = DecideMultilabel(scores, true, threshold);
    bool ok = gated.empty() && !open.empty();
    const ClassScore* best = &scores[0];
    bool any_pass = false;
    for (const ClassScore& s : scores) {
      if (s.score > best->score) best = &s;
      const bool pass = logistic ? *s.probability >= threshold : s.score > 0;
      any_pass |= pass;
      if (pass) ok &= open.contains(s.label);
    }
    if (!any_pass) ok &= open == FineSet{best->label};
    if (any_pass) {
      for (const ClassScore& s : scores) {
        const bool pass = logistic ? *s.probability >= threshold : s.score > 0;
        if (!pass) ok &= !open.contains(s.label);
      }
    }
    r.Check(ok, [&] { return "threshold=" + std::to_string(threshold); });
  }
  return r.Done();
}

PropertyResult ScalingInvariance(int cases, std::mt19937_64& rng) {
  Recorder r("model: label invariant under positive scaling of (w, b)");
  std::uniform_real_distribution<double> u(-1, 1);
  for (int c = 0; c < cases; ++c) {
    const FeatureLayout layout{3, 0, kMetaDim};
    std::vector<double> w(layout.total());
    for (double& v : w) v = u(rng);
    const double b = u(rng);
    const double k = 0.01 + 100 * std::abs(u(rng));
    std::vector<double> wk = w;
    for (double& v : wk) v *= k;
    const LinearModel m1(w, b, {}, layout), m2(wk, b * k, {}, layout);
    FeatureVector x;
    x.dense = {u(rng), u(rng), u(rng)};
    for (double& v : x.meta) v = u(rng);
    r.Check(m1.Predict(x).positive == m2.Predict(x).positive,
            [] { return std::string("sign changed"); });
  }
  return r.Done();
}

PropertyResult F1Identity(int cases, std::mt19937_64& rng) {
  Recorder r("evalreport: weighted F1 = 1 iff predictions equal truth");
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + static_cast<int>(rng() % 15);
    std::vector<int> t(n), p(n);
    for (int i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng() % 3);
      p[i] = rng() % 4 == 0 ? static_cast<int>(rng() % 3) : t[i];
    }
    const bool equal = t == p;
    const double f1 = WeightedF1(t, p);
    r.Check(equal == (std::abs(f1 - 1.0) <= 1e-12),
            [&] { return "f1=" + std::to_string(f1); });
  }
  return r.Done();
}

PropertyResult ConfusionAccounting(int cases, std::mt19937_64& rng) {
  Recorder r("evalreport: confusion total = N, dropping a sample drops one cell");
  const std::vector<int> classes = {0, 1, 2, 3};
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + static_cast<int>(rng() % 20);
    std::vector<int> t(n), p(n);
    for (int i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng() % 4);
      p[i] = static_cast<int>(rng() % 4);
    }
    const ConfusionMatrix full = Confusion(t, p, classes);
    size_t total = 0;
    for (const auto& row : full) for (size_t v : row) total += v;
    const int drop = static_cast<int>(rng() % n);
    std::vector<int> t2 = t, p2 = p;
    t2.erase(t2.begin() + drop);
    p2.erase(p2.begin() + drop);
    const ConfusionMatrix less = Confusion(t2, p2, classes);
    int changed = 0;
    bool right_cell = true;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (full[i][j] != less[i][j]) {
          ++changed;
          right_cell &= i == t[drop] && j == p[drop] && full[i][j] == less[i][j] + 1;
        }
      }
    }
    r.Check(total == static_cast<size_t>(n) && changed == 1 && right_cell,
            [&] { return "n=" + std::to_string(n); });
  }
  return r.Done();
}

PropertyResult RelabelInvariance(int cases, std::mt19937_64& rng) {
  Recorder r("evalreport: per-class F1 invariant under consistent relabeling");
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + static_cast<int>(rng() % 20);
    std::vector<int> t(n), p(n);
    for (int i = 0; i < n; ++i) {
      t[i] = static_cast<int>(rng() % 4);
      p[i] = static_cast<int>(rng() % 4);
    }
    std::vector<int> perm = {0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> t2(n), p2(n);
    for (int i = 0; i < n; ++i) {
      t2[i] = perm[t[i]];
      p2[i] = perm[p[i]];
    }
    const std::vector<int> classes = {0, 1, 2, 3};
    const std::vector<std::string> names = {"0", "1", "2", "3"};
    const ClassTable a = SingleLabelReport(t, p, classes, names);
    const ClassTable b = SingleLabelReport(t2, p2, classes, names);
    bool ok = std::abs(WeightedF1(t, p) - WeightedF1(t2, p2)) <= 1e-12;
    for (int k = 0; k < 4; ++k) {
      ok &= std::abs(a.rows[k].f1 - b.rows[perm[k]].f1) <= 1e-12;
    }
    r.Check(ok, [&] { return "n=" + std::to_string(n); });
  }
  return r.Done();
}

}  // namespace

std::string RandomPost(std::mt19937_64& rng) {
  std::string out;
  const int pieces = static_cast<int>(rng() % 12);
  for (int i = 0; i < pieces; ++i) {
    if (i) out += Pick(rng, kSeparators);
    switch (rng() % 10) {
      case 0: case 1: case 2: case 3: out += Pick(rng, kWords); break;
      case 4: case 5: out += Pick(rng, kEntities); break;
      case 6: out += Pick(rng, kEmoji); break;
      case 7: out += Pick(rng, kPunct); break;
      case 8: out += Pick(rng, kNumbers); break;
      default: {
        std::string w = Pick(rng, kWords);
        out += w + "\u200B" + Pick(rng, kWords);
      }
    }
  }
  return out;
}

std::vector<PropertyResult> RunPropertySuite(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return {CleanIdempotence(cases, rng),      CleanTokensAreClean(cases, rng),
          TokenizeConcatenation(cases, rng), EntityAdditivity(cases, rng),
          AbusiveMonotone(cases, rng),       VoteIdempotence(cases, rng),
          VotePermutation(cases, rng),       LogicalOrDominatesAnd(cases, rng),
          EmbedAveragePermutation(cases, rng), TfIdfNorm(cases, rng),
          MultilabelGating(cases, rng),      ScalingInvariance(cases, rng),
          F1Identity(cases, rng),            ConfusionAccounting(cases, rng),
          RelabelInvariance(cases, rng)};
}

}  // namespace hostility::testing
