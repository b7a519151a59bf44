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

// Extracted feature records and the feature subsets used for ablations.
//
// Feature files are JSON Lines, one record per piece:
//   {"id": ..., "label": ..., "dual": [5d floats],
//    "segments": {"publisher": d, "social_mean": d, "social_max": d,
//                 "gap_mean": d, "gap_max": d},
//    "baselines": {"emoratio": x, "emocred": [2 d_e floats]},
//    "detector_embedding": [...]}
// detector_embedding is written only when the piece carries one.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dualemo/dataset.hpp"
#include "dualemo/features.hpp"
#include "dualemo/resources.hpp"

namespace dualemo {

enum class FeatureSet { kDual, kPublisher, kSocial, kGap, kEmoratio, kEmocred };

FeatureSet parse_feature_set(std::string_view name);
std::string_view feature_set_name(FeatureSet set);

struct FeatureRecord {
  std::string id;
  std::optional<Veracity> label;
  std::vector<double> dual;
  // d, the length of each of the five dual segments.
  std::size_t segment_dim = 0;
  double emoratio = 0.0;
  std::vector<double> emocred;
  std::optional<std::vector<double>> detector_embedding;

  std::span<const double> segment(std::size_t index) const;
};

FeatureRecord extract_record(const NewsPiece& piece, const ResourceBundle& bundle,
                             const FeatureConfig& config);
std::vector<FeatureRecord> extract_records(const Dataset& dataset, const ResourceBundle& bundle,
                                           const FeatureConfig& config);

// publisher: segment 0; social: both pools; gap: both gaps; dual: all.
std::vector<double> select_features(const FeatureRecord& record, FeatureSet set);

nlohmann::json record_to_json(const FeatureRecord& record);
FeatureRecord record_from_json(const nlohmann::json& j);
void save_records(std::span<const FeatureRecord> records, const std::filesystem::path& path);
std::vector<FeatureRecord> load_records(const std::filesystem::path& path);

}  // namespace dualemo
