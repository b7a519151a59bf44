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

// Training/evaluation helpers shared by the CLI, and the staged pipeline
// (dedup -> split -> extract -> train -> eval -> analyze) driven by a JSON
// config file:
//
//   {"dataset": "corpus.jsonl", "resources": "data/resources/en", "lang": "en",
//    "out": "run", "seed": 42,
//    "stages": ["dedup", "split", "extract", "train", "eval", "analyze"],
//    "dedup": {"threshold": 0.8, "label": null},
//    "split": {"mode": "random", "ratios": [3, 1, 1]},
//    "features": {"window": 2, "comments_limit": 100,
//                 "category": {"mode": "lexicon_vote"},
//                 "sentiment": {"mode": "builtin"}},
//    "train": {"features": "dual", "epochs": 100, "lr": 0.05, "batch_size": 32,
//              "class_weights": "none", "patience": 10,
//              "hidden": [256, 128, 64, 32], "standardize": true,
//              "detector_embedding": true},
//    "eval": {"regime": "two_class"},
//    "analyze": {"whitelist": null}}
//
// Every key except dataset and resources is optional. Relative paths
// resolve against the config file's directory.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dualemo/dataset.hpp"
#include "dualemo/feature_io.hpp"
#include "dualemo/features.hpp"
#include "dualemo/metrics.hpp"
#include "dualemo/mlp.hpp"

namespace dualemo {

inline constexpr const char* kVersion = "1.0.0";

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

std::array<double, 3> parse_ratios(std::string_view text);
ClassWeighting parse_class_weighting(std::string_view name);

struct ClassifierOptions {
  FeatureSet features = FeatureSet::kDual;
  Regime regime = Regime::kTwoClass;
  TrainConfig train;
  std::vector<std::size_t> hidden = kDefaultHiddenDims;
  // Concatenate detector embeddings when the training records carry them.
  bool detector_embedding = true;
};

// Samples for the listed ids, skipping unlabeled records and labels
// outside the regime. Throws ArgumentError for unknown ids.
std::vector<Sample> make_samples(std::span<const FeatureRecord> records,
                                 std::span<const std::string> ids, FeatureSet set, Regime regime,
                                 std::size_t embedding_length);

TrainResult train_classifier(std::span<const FeatureRecord> records, const DatasetSplit& split,
                             const ClassifierOptions& options);

struct ScoredPrediction {
  std::string id;
  std::string gold;
  Prediction prediction;
  std::vector<double> probabilities;
};

struct Evaluation {
  Metrics metrics;
  std::vector<ScoredPrediction> predictions;
};

Evaluation evaluate_classifier(const MlpModel& model, std::span<const FeatureRecord> records,
                               std::span<const std::string> ids, Regime regime);

nlohmann::json history_to_json(const TrainResult& result);

enum class SplitMode { kRandom, kTemporal };

struct PipelineConfig {
  std::filesystem::path dataset;
  std::filesystem::path resources;
  std::filesystem::path out;
  Language language = Language::kEnglish;
  std::uint64_t seed = 42;
  std::vector<std::string> stages{"dedup", "split", "extract", "train", "eval", "analyze"};
  double dedup_threshold = 0.8;
  std::optional<Veracity> dedup_label;
  SplitMode split_mode = SplitMode::kRandom;
  std::array<double, 3> ratios{3.0, 1.0, 1.0};
  FeatureConfig features;
  ClassifierOptions classifier;
  std::optional<std::set<std::string>> whitelist;
  // The parsed config as written, recorded in the manifest.
  nlohmann::json source;

  bool has_stage(std::string_view stage) const;
};

// Throws LoadError for unreadable or malformed configs and ArgumentError
// for invalid values or stage lists.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct PipelineResult {
  // Written files relative to the output directory, in write order.
  std::vector<std::string> outputs;
  std::optional<Metrics> test_metrics;
};

// Runs the configured stages into config.out. Resources and dataset are
// checked before any stage runs. On failure the files written by this run
// are removed and an Error naming the stage is thrown.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace dualemo
