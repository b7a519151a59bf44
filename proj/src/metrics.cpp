// Copyright 2026 The dualemo Authors.
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

#include "dualemo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dualemo/error.hpp"

namespace dualemo {

Regime parse_regime(std::string_view name) {
  if (name == "two_class") return Regime::kTwoClass;
  if (name == "three_class") return Regime::kThreeClass;
  throw ArgumentError("unknown regime: " + std::string(name));
}

std::vector<std::string> regime_classes(Regime regime) {
  if (regime == Regime::kTwoClass) return {"fake", "real"};
  return {"fake", "real", "unverified"};
}

namespace {

double f1_score(std::size_t tp, std::size_t fp, std::size_t fn) {
  const std::size_t denom = 2 * tp + fp + fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace

double macro_f1(std::span<const std::size_t> gold, std::span<const std::size_t> predicted,
                std::size_t classes) {
  if (gold.size() != predicted.size()) throw ArgumentError("macro_f1: length mismatch");
  std::vector<std::size_t> tp(classes, 0), fp(classes, 0), fn(classes, 0);
  std::vector<bool> present(classes, false);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    present[gold[i]] = true;
    if (gold[i] == predicted[i]) {
      ++tp[gold[i]];
    } else {
      ++fn[gold[i]];
      ++fp[predicted[i]];
    }
  }
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    if (!present[c]) continue;
    sum += f1_score(tp[c], fp[c], fn[c]);
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

Metrics compute_metrics(std::span<const Prediction> predictions, std::span<const std::string> gold,
                        Regime regime) {
  if (predictions.size() != gold.size()) {
    throw ArgumentError("metrics: " + std::to_string(predictions.size()) + " predictions for " +
                        std::to_string(gold.size()) + " gold labels");
  }
  const std::vector<std::string> classes = regime_classes(regime);
  auto index_of = [&](const std::string& label) {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) throw ArgumentError("metrics: unknown label '" + label + "'");
    return static_cast<std::size_t>(it - classes.begin());
  };
  std::vector<std::size_t> g, p;
  std::size_t correct = 0;
  double squared = 0.0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    g.push_back(index_of(gold[i]));
    p.push_back(index_of(predictions[i].label));
    const double conf = predictions[i].confidence;
    if (!(conf >= 0.0 && conf <= 1.0)) throw ArgumentError("metrics: confidence outside [0, 1]");
    const bool hit = g.back() == p.back();
    if (hit) ++correct;
    const double reference = (hit && gold[i] != "unverified") ? 1.0 : 0.0;
    squared += (conf - reference) * (conf - reference);
  }
  Metrics m;
  const auto n = static_cast<double>(gold.size());
  m.accuracy = gold.empty() ? 0.0 : static_cast<double>(correct) / n;
  m.macro_f1 = macro_f1(g, p, classes.size());
  std::set<std::size_t> seen(g.begin(), g.end());
  seen.insert(p.begin(), p.end());
  for (std::size_t c : seen) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == c && p[i] == c) ++tp;
      if (g[i] != c && p[i] == c) ++fp;
      if (g[i] == c && p[i] != c) ++fn;
    }
    m.per_class_f1[classes[c]] = f1_score(tp, fp, fn);
  }
  if (regime == Regime::kThreeClass) m.rmse = gold.empty() ? 0.0 : std::sqrt(squared / n);
  return m;
}

nlohmann::json metrics_to_json(const Metrics& metrics) {
  nlohmann::json j = {{"accuracy", metrics.accuracy},
                      {"macro_f1", metrics.macro_f1},
                      {"per_class_f1", metrics.per_class_f1}};
  if (metrics.rmse) j["rmse"] = *metrics.rmse;
  return j;
}

}  // namespace dualemo
