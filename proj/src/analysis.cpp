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

#include "dualemo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "chi_square_table.hpp"
#include "dualemo/error.hpp"

namespace dualemo {

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::vector<double> soft_vote(std::span<const std::vector<double>> comment_probs) {
  if (comment_probs.empty()) return {};
  std::vector<double> mean(comment_probs.front().size(), 0.0);
  for (const auto& probs : comment_probs) {
    if (probs.size() != mean.size()) throw DimensionError("soft_vote: ragged probability vectors");
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += probs[i];
  }
  for (double& m : mean) m /= static_cast<double>(comment_probs.size());
  return mean;
}

DualEmotionCategory categorize(std::span<const double> content_probs,
                               std::span<const std::vector<double>> comment_probs,
                               const std::vector<std::string>& labels) {
  if (content_probs.size() != labels.size()) {
    throw DimensionError("content probabilities do not match the category labels");
  }
  DualEmotionCategory category;
  category.publisher = labels[argmax(content_probs)];
  if (comment_probs.empty()) {
    category.social = kNoneCategory;
    return category;
  }
  const std::vector<double> mean = soft_vote(comment_probs);
  if (mean.size() != labels.size()) {
    throw DimensionError("comment probabilities do not match the category labels");
  }
  category.social = labels[argmax(mean)];
  return category;
}

DualEmotionCategory dual_emotion_category(const NewsPiece& piece, const ClassifierAdapter& adapter,
                                          const ResourceBundle& bundle) {
  auto probabilities = [&](const ScoredText& view) {
    const TokenSequence tokens = adapter.mode == CategoryMode::kLexiconVote
                                     ? tokenize(view.text, bundle)
                                     : TokenSequence{};
    return emotion_category(tokens, bundle, adapter, view.category_probs);
  };
  const std::vector<double> content = probabilities(content_view(piece));
  std::vector<std::vector<double>> comments;
  for (const ScoredText& view : comment_views(piece)) comments.push_back(probabilities(view));
  return categorize(content, comments, adapter.category_labels(bundle));
}

std::uint64_t ContingencyTable::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : counts) {
    for (auto c : row) sum += c;
  }
  return sum;
}

ContingencyTable build_contingency_table(std::span<const LabeledCategory> items,
                                         const std::vector<std::string>& category_labels,
                                         const std::optional<std::set<std::string>>& whitelist) {
  auto label_rank = [&](const std::string& label) {
    auto it = std::find(category_labels.begin(), category_labels.end(), label);
    return static_cast<std::size_t>(it - category_labels.begin());
  };
  auto column_less = [&](const DualEmotionCategory& a, const DualEmotionCategory& b) {
    const auto ka = std::make_tuple(label_rank(a.publisher), label_rank(a.social), a);
    const auto kb = std::make_tuple(label_rank(b.publisher), label_rank(b.social), b);
    return ka < kb;
  };
  std::map<DualEmotionCategory, std::map<Veracity, std::uint64_t>> cells;
  std::set<Veracity> present;
  for (const auto& item : items) {
    if (item.veracity == Veracity::kUnverified) continue;
    if (whitelist && (!whitelist->contains(item.category.publisher) ||
                      !whitelist->contains(item.category.social))) {
      continue;
    }
    ++cells[item.category][item.veracity];
    present.insert(item.veracity);
  }
  ContingencyTable table;
  table.category_labels = category_labels;
  for (Veracity v : {Veracity::kFake, Veracity::kReal}) {
    if (present.contains(v)) table.rows.push_back(v);
  }
  for (const auto& [category, _] : cells) table.columns.push_back(category);
  std::sort(table.columns.begin(), table.columns.end(), column_less);
  table.counts.assign(table.rows.size(), std::vector<std::uint64_t>(table.columns.size(), 0));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto& by_class = cells[table.columns[c]];
      auto it = by_class.find(table.rows[r]);
      if (it != by_class.end()) table.counts[r][c] = it->second;
    }
  }
  return table;
}

ContingencyTable contingency_table(const Dataset& dataset, const ClassifierAdapter& adapter,
                                   const ResourceBundle& bundle,
                                   const std::optional<std::set<std::string>>& whitelist) {
  std::vector<LabeledCategory> items;
  for (const auto& piece : dataset.pieces) {
    if (!piece.label || *piece.label == Veracity::kUnverified) continue;
    items.push_back({*piece.label, dual_emotion_category(piece, adapter, bundle)});
  }
  if (items.empty()) throw ArgumentError("contingency_table: no fake or real pieces");
  return build_contingency_table(items, adapter.category_labels(bundle), whitelist);
}

double chi_square_critical_value(int dof, double confidence) {
  if (dof < 1) throw ArgumentError("chi-square critical value needs dof >= 1");
  int column;
  double z;
  if (confidence == 0.95) {
    column = 0;
    z = 1.6448536269514722;
  } else if (confidence == 0.99) {
    column = 1;
    z = 2.3263478740408408;
  } else {
    throw ArgumentError("chi-square critical values exist for 0.95 and 0.99 only");
  }
  if (static_cast<std::size_t>(dof) <= detail::kChiSquareTableMaxDof) {
    return detail::kChiSquareCritical[static_cast<std::size_t>(dof - 1)][column];
  }
  const double k = static_cast<double>(dof);
  const double h = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
}

ChiSquareResult chi_square(const std::vector<std::vector<std::uint64_t>>& counts) {
  const std::size_t rows = counts.size();
  const std::size_t cols = rows == 0 ? 0 : counts.front().size();
  std::vector<double> row_total(rows, 0.0), col_total(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (counts[r].size() != cols) throw DimensionError("chi_square: ragged table");
    for (std::size_t c = 0; c < cols; ++c) {
      row_total[r] += static_cast<double>(counts[r][c]);
      col_total[c] += static_cast<double>(counts[r][c]);
    }
  }
  std::vector<std::size_t> used_rows, used_cols;
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_total[r] > 0.0) used_rows.push_back(r);
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_total[c] > 0.0) used_cols.push_back(c);
  }
  if (used_rows.size() < 2 || used_cols.size() < 2) {
    throw ArgumentError("chi_square: need at least two rows and two columns with nonzero totals");
  }
  double grand = 0.0;
  for (std::size_t r : used_rows) grand += row_total[r];
  ChiSquareResult result;
  for (std::size_t r : used_rows) {
    for (std::size_t c : used_cols) {
      const double expected = row_total[r] * col_total[c] / grand;
      const double diff = static_cast<double>(counts[r][c]) - expected;
      result.statistic += diff * diff / expected;
    }
  }
  result.degrees_of_freedom = static_cast<int>((used_rows.size() - 1) * (used_cols.size() - 1));
  for (double confidence : {0.95, 0.99}) {
    const double critical = chi_square_critical_value(result.degrees_of_freedom, confidence);
    result.critical_values[confidence] = critical;
    result.reject_at[confidence] = result.statistic > critical;
  }
  return result;
}

ChiSquareResult chi_square(const ContingencyTable& table) { return chi_square(table.counts); }

nlohmann::json chi_square_to_json(const ChiSquareResult& result) {
  nlohmann::json critical = nlohmann::json::object();
  nlohmann::json reject = nlohmann::json::object();
  for (const auto& [confidence, value] : result.critical_values) {
    char key[16];
    std::snprintf(key, sizeof key, "%.2f", confidence);
    critical[key] = value;
    reject[key] = result.reject_at.at(confidence);
  }
  return {{"statistic", result.statistic},
          {"degrees_of_freedom", result.degrees_of_freedom},
          {"critical_values", critical},
          {"reject_at", reject}};
}

Heatmap heatmap_rows(const ContingencyTable& table, Veracity veracity) {
  auto rank = [&](const std::string& label) {
    auto it = std::find(table.category_labels.begin(), table.category_labels.end(), label);
    return std::make_pair(static_cast<std::size_t>(it - table.category_labels.begin()), label);
  };
  std::set<std::pair<std::size_t, std::string>> publishers, socials;
  for (const auto& column : table.columns) {
    publishers.insert(rank(column.publisher));
    socials.insert(rank(column.social));
  }
  Heatmap heatmap;
  for (const auto& [_, label] : publishers) heatmap.publisher_labels.push_back(label);
  for (const auto& [_, label] : socials) heatmap.social_labels.push_back(label);
  const std::size_t rows = heatmap.publisher_labels.size();
  const std::size_t cols = heatmap.social_labels.size();
  std::vector<std::vector<double>> counts(rows, std::vector<double>(cols, 0.0));

  auto row_it = std::find(table.rows.begin(), table.rows.end(), veracity);
  if (row_it != table.rows.end()) {
    const auto& row = table.counts[static_cast<std::size_t>(row_it - table.rows.begin())];
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto& column = table.columns[c];
      auto pr = std::find(heatmap.publisher_labels.begin(), heatmap.publisher_labels.end(), column.publisher);
      auto sc = std::find(heatmap.social_labels.begin(), heatmap.social_labels.end(), column.social);
      counts[static_cast<std::size_t>(pr - heatmap.publisher_labels.begin())]
            [static_cast<std::size_t>(sc - heatmap.social_labels.begin())] += static_cast<double>(row[c]);
    }
  }
  heatmap.percentages.assign(rows, std::vector<double>(cols, 0.0));
  heatmap.zero_rows.assign(rows, false);
  for (std::size_t r = 0; r < rows; ++r) {
    double total = 0.0;
    for (double v : counts[r]) total += v;
    if (total == 0.0) {
      heatmap.zero_rows[r] = true;
      continue;
    }
    for (std::size_t c = 0; c < cols; ++c) heatmap.percentages[r][c] = 100.0 * counts[r][c] / total;
  }
  return heatmap;
}

std::string heatmap_csv(const Heatmap& heatmap) {
  std::ostringstream out;
  out << "publisher";
  for (const auto& label : heatmap.social_labels) out << ',' << label;
  out << '\n';
  char cell[32];
  for (std::size_t r = 0; r < heatmap.publisher_labels.size(); ++r) {
    out << heatmap.publisher_labels[r];
    for (double v : heatmap.percentages[r]) {
      std::snprintf(cell, sizeof cell, "%.1f", v);
      out << ',' << cell;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dualemo
