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

// Corpus ingestion, train/validation/test splits and near-duplicate removal.
//
// Dataset files are JSON Lines, one piece per line:
//   {"id": "p1", "content": "...", "language": "en", "label": "fake",
//    "timestamp": 1600000000,
//    "comments": [{"text": "...", "timestamp": 1600000100}, ...],
//    "publisher_emotion_probs": [...], "comment_emotion_probs": [[...], ...],
//    "publisher_sentiment": [...], "comment_sentiments": [[...], ...],
//    "detector_embedding": [...]}
// Only id and content are required. label may be null or absent.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dualemo/news_piece.hpp"

namespace dualemo {

struct Dataset {
  std::vector<NewsPiece> pieces;

  std::size_t size() const { return pieces.size(); }
  // nullptr when absent.
  const NewsPiece* find(std::string_view id) const;
};

NewsPiece piece_from_json(const nlohmann::json& j);
nlohmann::json piece_to_json(const NewsPiece& piece);

// Throws LoadError with the line number on parse or validation failure.
Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;
};

nlohmann::json split_to_json(const DatasetSplit& split);
DatasetSplit split_from_json(const nlohmann::json& j);

// Seeded shuffle, then validation and test take floor(n * r / sum) pieces
// and train takes the remainder. Ids keep dataset order inside each part.
DatasetSplit random_split(const Dataset& dataset, std::array<double, 3> ratios,
                          std::uint64_t seed);

// Sorted by (timestamp, id): the latest 20% become test, the latest 25% of
// the rest validation, everything earlier train.
DatasetSplit temporal_split(const Dataset& dataset);

struct ClusterReport {
  // Clusters with more than one member; the retained id comes first.
  std::vector<std::vector<std::string>> clusters;
  std::size_t removed = 0;
  std::size_t retained = 0;
};

nlohmann::json cluster_report_to_json(const ClusterReport& report);

struct DedupResult {
  Dataset dataset;
  ClusterReport report;
};

// Jaccard similarity of the character 3-gram sets of two texts.
double char_ngram_jaccard(std::string_view a, std::string_view b);

// Single-link clustering of pieces matching `label_filter` (nullopt: all
// pieces) at Jaccard >= threshold; each cluster keeps its earliest piece.
DedupResult deduplicate(const Dataset& dataset, std::optional<Veracity> label_filter,
                        double threshold);

}  // namespace dualemo
