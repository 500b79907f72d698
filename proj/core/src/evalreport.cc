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

#include "hostility/evalreport.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hostility {

namespace {

double SafeDiv(double num, double den) { return den > 0 ? num / den : 0.0; }

void CheckSizes(size_t a, size_t b) {
  if (a != b) throw std::invalid_argument("label vectors differ in length");
  if (a == 0) throw std::invalid_argument("label vectors are empty");
}

ClassMetrics WeightedAverage(const std::vector<ClassMetrics>& rows) {
  ClassMetrics avg;
  avg.name = "weighted_avg";
  for (const ClassMetrics& r : rows) avg.support += r.support;
  if (avg.support == 0) return avg;
  for (const ClassMetrics& r : rows) {
    const double w = static_cast<double>(r.support) / avg.support;
    avg.precision += w * r.precision;
    avg.recall += w * r.recall;
    avg.f1 += w * r.f1;
  }
  return avg;
}

std::string Fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

ClassMetrics MetricsFromCounts(std::string name, size_t true_pos,
                               size_t false_pos, size_t false_neg) {
  ClassMetrics m;
  m.name = std::move(name);
  m.support = true_pos + false_neg;
  m.precision = SafeDiv(true_pos, true_pos + false_pos);
  m.recall = SafeDiv(true_pos, true_pos + false_neg);
  m.f1 = SafeDiv(2 * m.precision * m.recall, m.precision + m.recall);
  return m;
}

double WeightedF1(std::span<const int> y_true, std::span<const int> y_pred) {
  CheckSizes(y_true.size(), y_pred.size());
  std::set<int> labels(y_true.begin(), y_true.end());
  labels.insert(y_pred.begin(), y_pred.end());
  double total = 0;
  for (int c : labels) {
    size_t tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < y_true.size(); ++i) {
      const bool t = y_true[i] == c, p = y_pred[i] == c;
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    const ClassMetrics m = MetricsFromCounts("", tp, fp, fn);
    total += m.f1 * static_cast<double>(m.support);
  }
  return total / static_cast<double>(y_true.size());
}

ConfusionMatrix Confusion(std::span<const int> y_true,
                          std::span<const int> y_pred,
                          std::span<const int> classes) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("label vectors differ in length");
  }
  std::map<int, size_t> index;
  for (size_t i = 0; i < classes.size(); ++i) index[classes[i]] = i;
  auto lookup = [&](int label) {
    auto it = index.find(label);
    if (it == index.end()) {
      throw std::invalid_argument("label " + std::to_string(label) +
                                  " is not a known class");
    }
    return it->second;
  };
  ConfusionMatrix m(classes.size(), std::vector<size_t>(classes.size(), 0));
  for (size_t i = 0; i < y_true.size(); ++i) {
    ++m[lookup(y_true[i])][lookup(y_pred[i])];
  }
  return m;
}

ClassTable PerClassReport(std::span<const FineSet> y_true,
                          std::span<const FineSet> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("label set vectors differ in length");
  }
  ClassTable table;
  for (FineLabel c : kAllFineLabels) {
    size_t tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < y_true.size(); ++i) {
      const bool t = y_true[i].contains(c), p = y_pred[i].contains(c);
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    table.rows.push_back(MetricsFromCounts(std::string(Name(c)), tp, fp, fn));
  }
  table.weighted = WeightedAverage(table.rows);
  return table;
}

ClassTable SingleLabelReport(std::span<const int> y_true,
                             std::span<const int> y_pred,
                             std::span<const int> classes,
                             std::span<const std::string> names) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("label vectors differ in length");
  }
  ClassTable table;
  for (size_t k = 0; k < classes.size(); ++k) {
    size_t tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < y_true.size(); ++i) {
      const bool t = y_true[i] == classes[k], p = y_pred[i] == classes[k];
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    table.rows.push_back(MetricsFromCounts(names[k], tp, fp, fn));
  }
  table.weighted = WeightedAverage(table.rows);
  return table;
}

EvalReport EvaluateCoarse(std::span<const CoarseLabel> y_true,
                          std::span<const CoarseLabel> y_pred, Task task,
                          Split split) {
  CheckSizes(y_true.size(), y_pred.size());
  std::vector<int> t(y_true.size()), p(y_pred.size());
  std::transform(y_true.begin(), y_true.end(), t.begin(),
                 [](CoarseLabel l) { return static_cast<int>(l); });
  std::transform(y_pred.begin(), y_pred.end(), p.begin(),
                 [](CoarseLabel l) { return static_cast<int>(l); });
  const std::vector<int> classes = {static_cast<int>(NegativeLabel(task)),
                                    static_cast<int>(PositiveLabel(task))};
  const std::vector<std::string> names = {
      std::string(Name(NegativeLabel(task))),
      std::string(Name(PositiveLabel(task)))};

  EvalReport report;
  report.task = std::string(Name(task)) + "/coarse";
  report.split = std::string(Name(split));
  report.weighted_f1 = WeightedF1(t, p);
  report.table = SingleLabelReport(t, p, classes, names);
  report.confusion_labels = names;
  report.confusion = Confusion(t, p, classes);
  return report;
}

EvalReport EvaluateFine(std::span<const FineSet> y_true,
                        std::span<const FineSet> y_pred, Split split) {
  EvalReport report;
  report.task = "hostility/fine";
  report.split = std::string(Name(split));
  report.table = PerClassReport(y_true, y_pred);
  report.weighted_f1 = report.table.weighted.f1;
  return report;
}

nlohmann::json ToJson(const EvalReport& report) {
  nlohmann::json classes = nlohmann::json::array();
  auto row = [](const ClassMetrics& m) {
    return nlohmann::json{{"name", m.name},
                          {"p", m.precision},
                          {"r", m.recall},
                          {"f1", m.f1},
                          {"support", m.support}};
  };
  for (const ClassMetrics& m : report.table.rows) classes.push_back(row(m));
  return {{"task", report.task},
          {"split", report.split},
          {"weighted_f1", report.weighted_f1},
          {"classes", classes},
          {"weighted", row(report.table.weighted)},
          {"confusion_labels", report.confusion_labels},
          {"confusion", report.confusion},
          {"config_hash", report.config_hash},
          {"seed", report.seed}};
}

std::string RenderText(const EvalReport& report) {
  std::ostringstream out;
  out << report.task << " on " << report.split
      << ": weighted F1 = " << Fixed(report.weighted_f1) << '\n';
  char line[160];
  std::snprintf(line, sizeof(line), "  %-14s %9s %9s %9s %9s\n", "class",
                "precision", "recall", "f1", "support");
  out << line;
  auto print = [&](const ClassMetrics& m) {
    std::snprintf(line, sizeof(line), "  %-14s %9.4f %9.4f %9.4f %9zu\n",
                  m.name.c_str(), m.precision, m.recall, m.f1, m.support);
    out << line;
  };
  for (const ClassMetrics& m : report.table.rows) print(m);
  print(report.table.weighted);
  if (!report.confusion.empty()) {
    out << "  confusion (rows = true, columns = predicted):\n";
    for (size_t i = 0; i < report.confusion.size(); ++i) {
      std::snprintf(line, sizeof(line), "  %-14s", report.confusion_labels[i].c_str());
      out << line;
      for (size_t v : report.confusion[i]) {
        std::snprintf(line, sizeof(line), " %9zu", v);
        out << line;
      }
      out << '\n';
    }
  }
  out << "  config " << report.config_hash << ", seed " << report.seed << '\n';
  return out.str();
}

std::string AblationTable(std::span<const AblationRun> runs,
                          std::string_view baseline_tag) {
  if (runs.size() < 2) {
    throw std::invalid_argument("ablation table needs at least two runs");
  }
  const AblationRun* baseline = nullptr;
  for (const AblationRun& r : runs) {
    if (r.tag == baseline_tag) baseline = &r;
  }
  if (baseline == nullptr) {
    throw std::invalid_argument("no run tagged '" + std::string(baseline_tag) + "'");
  }
  std::vector<const AblationRun*> sorted;
  for (const AblationRun& r : runs) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const AblationRun* a, const AblationRun* b) {
                     return a->tag < b->tag;
                   });
  std::ostringstream out;
  out << "tag\tsplit\tweighted_f1\tdelta\n";
  for (const AblationRun* r : sorted) {
    const double delta = r->report.weighted_f1 - baseline->report.weighted_f1;
    out << r->tag << '\t' << r->report.split << '\t'
        << Fixed(r->report.weighted_f1) << '\t' << (delta >= 0 ? "+" : "")
        << Fixed(delta) << '\n';
  }
  return out.str();
}

}  // namespace hostility
