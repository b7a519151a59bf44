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

// Dual emotion categories (argmax of the content distribution, soft-voted
// argmax over comments), the veracity x category contingency table, the
// Pearson chi-square independence test and row-normalized heatmaps.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualemo/dataset.hpp"
#include "dualemo/features.hpp"
#include "dualemo/resources.hpp"

namespace dualemo {

struct DualEmotionCategory {
  std::string publisher;
  std::string social;

  auto operator<=>(const DualEmotionCategory&) const = default;
};

// First index of the maximum; throws ArgumentError on empty input.
std::size_t argmax(std::span<const double> values);

// Coordinatewise mean of comment probability vectors (soft vote).
std::vector<double> soft_vote(std::span<const std::vector<double>> comment_probs);

// Category from raw probability vectors over `labels`. With no comment
// vectors the social label is "none".
DualEmotionCategory categorize(std::span<const double> content_probs,
                               std::span<const std::vector<double>> comment_probs,
                               const std::vector<std::string>& labels);

DualEmotionCategory dual_emotion_category(const NewsPiece& piece, const ClassifierAdapter& adapter,
                                          const ResourceBundle& bundle);

struct ContingencyTable {
  std::vector<Veracity> rows;
  std::vector<DualEmotionCategory> columns;
  std::vector<std::vector<std::uint64_t>> counts;
  // Category names in classifier coordinate order; orders heatmap axes.
  std::vector<std::string> category_labels;

  std::uint64_t total() const;
};

struct LabeledCategory {
  Veracity veracity;
  DualEmotionCategory category;
};

// Rows are fake then real (classes that occur); columns are the occurring
// pairs ordered by label index. Unverified items are skipped. With a
// whitelist, items whose publisher or social label is outside it are
// dropped.
ContingencyTable build_contingency_table(std::span<const LabeledCategory> items,
                                         const std::vector<std::string>& category_labels,
                                         const std::optional<std::set<std::string>>& whitelist = {});

// Throws ArgumentError when the dataset has no fake/real pieces.
ContingencyTable contingency_table(const Dataset& dataset, const ClassifierAdapter& adapter,
                                   const ResourceBundle& bundle,
                                   const std::optional<std::set<std::string>>& whitelist = {});

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  std::map<double, double> critical_values;
  std::map<double, bool> reject_at;
};

// Pearson statistic without continuity correction over the rows and
// columns with nonzero margins. Throws ArgumentError when fewer than two
// of either remain.
ChiSquareResult chi_square(const std::vector<std::vector<std::uint64_t>>& counts);
ChiSquareResult chi_square(const ContingencyTable& table);

// Critical value for confidence 0.95 or 0.99. Embedded table for dof
// 1..100, Wilson-Hilferty approximation above.
double chi_square_critical_value(int dof, double confidence);

nlohmann::json chi_square_to_json(const ChiSquareResult& result);

struct Heatmap {
  std::vector<std::string> publisher_labels;
  std::vector<std::string> social_labels;
  // percentages[r][c]; each nonzero row sums to 100.
  std::vector<std::vector<double>> percentages;
  std::vector<bool> zero_rows;
};

// Publisher x social percentages for one veracity class, rows normalized.
Heatmap heatmap_rows(const ContingencyTable& table, Veracity veracity);

// Header row of social labels, one row per publisher label, one decimal.
std::string heatmap_csv(const Heatmap& heatmap);

}  // namespace dualemo
