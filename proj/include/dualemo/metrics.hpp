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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dualemo {

enum class Regime { kTwoClass, kThreeClass };

Regime parse_regime(std::string_view name);
// fake, real (+ unverified in the three-class regime).
std::vector<std::string> regime_classes(Regime regime);

struct Prediction {
  std::string label;
  double confidence = 1.0;
};

struct Metrics {
  double accuracy = 0.0;
  // Unweighted mean of per-class F1 over classes present in the gold labels.
  double macro_f1 = 0.0;
  // Classes seen in gold or predictions.
  std::map<std::string, double> per_class_f1;
  // Three-class regime only. Reference confidence is 1 for a correctly
  // labeled fake/real item and 0 otherwise (every unverified gold item
  // included); the error is confidence minus reference.
  std::optional<double> rmse;
};

// Throws ArgumentError on length mismatch, labels outside the regime or
// confidences outside [0, 1].
Metrics compute_metrics(std::span<const Prediction> predictions, std::span<const std::string> gold,
                        Regime regime);

// Index-based macro F1 over the classes that occur in `gold`.
double macro_f1(std::span<const std::size_t> gold, std::span<const std::size_t> predicted,
                std::size_t classes);

nlohmann::json metrics_to_json(const Metrics& metrics);

}  // namespace dualemo
