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

#include "dualemo/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "dualemo/analysis.hpp"
#include "dualemo/error.hpp"
#include "dualemo/resources.hpp"

namespace dualemo {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof buffer);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

std::array<double, 3> parse_ratios(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.emplace_back(text.substr(start, colon == std::string_view::npos ? text.size() - start : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw ArgumentError("ratios must look like a:b:c, got " + std::string(text));
  std::array<double, 3> ratios{};
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t used = 0;
    try {
      ratios[k] = std::stod(parts[k], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (parts[k].empty() || used != parts[k].size() || !(ratios[k] >= 0.0)) {
      throw ArgumentError("invalid ratio '" + parts[k] + "' in " + std::string(text));
    }
  }
  return ratios;
}

ClassWeighting parse_class_weighting(std::string_view name) {
  if (name == "none") return ClassWeighting::kNone;
  if (name == "inverse" || name == "inverse_frequency") return ClassWeighting::kInverseFrequency;
  throw ArgumentError("unknown class weighting '" + std::string(name) + "' (expected none or inverse)");
}

std::vector<Sample> make_samples(std::span<const FeatureRecord> records,
                                 std::span<const std::string> ids, FeatureSet set, Regime regime,
                                 std::size_t embedding_length) {
  std::unordered_map<std::string_view, const FeatureRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  const std::vector<std::string> classes = regime_classes(regime);
  std::vector<Sample> samples;
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ArgumentError("no feature record for id '" + id + "'");
    const FeatureRecord& r = *it->second;
    if (!r.label) continue;
    auto cls = std::find(classes.begin(), classes.end(), veracity_name(*r.label));
    if (cls == classes.end()) continue;
    Sample sample;
    sample.label = static_cast<std::size_t>(cls - classes.begin());
    if (embedding_length > 0) {
      if (r.detector_embedding) {
        if (r.detector_embedding->size() != embedding_length) {
          throw DimensionError("record " + r.id + " has a detector embedding of length " +
                               std::to_string(r.detector_embedding->size()) + ", expected " +
                               std::to_string(embedding_length));
        }
        sample.input = *r.detector_embedding;
      } else {
        sample.input.assign(embedding_length, 0.0);
      }
    }
    const std::vector<double> features = select_features(r, set);
    sample.input.insert(sample.input.end(), features.begin(), features.end());
    samples.push_back(std::move(sample));
  }
  return samples;
}

namespace {

std::size_t embedding_length_for(std::span<const FeatureRecord> records,
                                 std::span<const std::string> ids, bool enabled) {
  if (!enabled) return 0;
  std::unordered_map<std::string_view, const FeatureRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it != by_id.end() && it->second->detector_embedding) return it->second->detector_embedding->size();
  }
  return 0;
}

}  // namespace

TrainResult train_classifier(std::span<const FeatureRecord> records, const DatasetSplit& split,
                             const ClassifierOptions& options) {
  const std::size_t embedding = embedding_length_for(records, split.train, options.detector_embedding);
  const std::vector<Sample> train_set =
      make_samples(records, split.train, options.features, options.regime, embedding);
  const std::vector<Sample> validation_set =
      make_samples(records, split.validation, options.features, options.regime, embedding);
  if (train_set.empty()) throw ArgumentError("no labeled training records in the split");
  const std::vector<std::string> classes = regime_classes(options.regime);
  MlpModel model = build_mlp(train_set.front().input.size(), options.hidden, classes.size(),
                             options.train.seed);
  model.classes = classes;
  model.feature_spec.feature_set = std::string(feature_set_name(options.features));
  model.feature_spec.embedding_length = embedding;
  model.feature_spec.feature_length = model.input_dim() - embedding;
  return train(std::move(model), train_set, validation_set, options.train);
}

Evaluation evaluate_classifier(const MlpModel& model, std::span<const FeatureRecord> records,
                               std::span<const std::string> ids, Regime regime) {
  const FeatureSet set = parse_feature_set(model.feature_spec.feature_set);
  const std::vector<std::string> classes = regime_classes(regime);
  if (model.classes != classes) throw ArgumentError("model classes do not match the evaluation regime");
  std::unordered_map<std::string_view, const FeatureRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.id, &r);
  Evaluation evaluation;
  std::vector<Prediction> predictions;
  std::vector<std::string> gold;
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ArgumentError("no feature record for id '" + id + "'");
    const FeatureRecord& r = *it->second;
    if (!r.label) continue;
    const std::string label(veracity_name(*r.label));
    if (std::find(classes.begin(), classes.end(), label) == classes.end()) continue;
    const std::vector<double> features = select_features(r, set);
    std::optional<std::span<const double>> embedding;
    if (model.feature_spec.embedding_length > 0 && r.detector_embedding) embedding = *r.detector_embedding;
    ScoredPrediction scored;
    scored.id = r.id;
    scored.gold = label;
    scored.probabilities = predict(model, features, embedding);
    const std::size_t best = argmax(scored.probabilities);
    scored.prediction = {classes[best], scored.probabilities[best]};
    predictions.push_back(scored.prediction);
    gold.push_back(label);
    evaluation.predictions.push_back(std::move(scored));
  }
  if (gold.empty()) throw ArgumentError("no labeled records to evaluate");
  evaluation.metrics = compute_metrics(predictions, gold, regime);
  return evaluation;
}

json history_to_json(const TrainResult& result) {
  json epochs = json::array();
  for (const auto& e : result.history) {
    json row = {{"epoch", e.epoch}, {"loss", e.loss}};
    row["validation_macro_f1"] = std::isnan(e.validation_macro_f1) ? json(nullptr) : json(e.validation_macro_f1);
    epochs.push_back(row);
  }
  return {{"best_epoch", result.best_epoch}, {"epochs", epochs}};
}

bool PipelineConfig::has_stage(std::string_view stage) const {
  return std::find(stages.begin(), stages.end(), stage) != stages.end();
}

namespace {

const std::vector<std::string> kStageOrder{"dedup", "split", "extract", "train", "eval", "analyze"};

fs::path resolve(const fs::path& base, const fs::path& p) { return p.is_absolute() ? p : base / p; }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<T>();
}

ClassifierAdapter adapter_from_json(const json& j) {
  ClassifierAdapter adapter;
  const std::string mode = get_or<std::string>(j, "mode", "lexicon_vote");
  if (mode == "lexicon_vote") {
    adapter.mode = CategoryMode::kLexiconVote;
  } else if (mode == "precomputed") {
    adapter.mode = CategoryMode::kPrecomputed;
    adapter.dim = j.at("dim").get<std::size_t>();
    adapter.labels = get_or<std::vector<std::string>>(j, "labels", {});
  } else {
    throw ArgumentError("unknown category mode '" + mode + "'");
  }
  return adapter;
}

SentimentAdapter sentiment_from_json(const json& j) {
  SentimentAdapter adapter;
  const std::string mode = get_or<std::string>(j, "mode", "builtin");
  if (mode == "builtin") {
    adapter.mode = SentimentMode::kBuiltin;
  } else if (mode == "precomputed") {
    adapter.mode = SentimentMode::kPrecomputed;
    adapter.dim = j.at("dim").get<std::size_t>();
  } else {
    throw ArgumentError("unknown sentiment mode '" + mode + "'");
  }
  return adapter;
}

}  // namespace

PipelineConfig pipeline_config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw LoadError("pipeline config must be a JSON object");
  PipelineConfig config;
  config.source = j;
  try {
    config.dataset = resolve(base_dir, j.at("dataset").get<std::string>());
    config.resources = resolve(base_dir, j.at("resources").get<std::string>());
    config.out = resolve(base_dir, get_or<std::string>(j, "out", "out"));
    config.language = parse_language(get_or<std::string>(j, "lang", "en"));
    config.seed = get_or<std::uint64_t>(j, "seed", 42);
    config.stages = get_or<std::vector<std::string>>(j, "stages", config.stages);

    const json dedup = get_or<json>(j, "dedup", json::object());
    config.dedup_threshold = get_or<double>(dedup, "threshold", 0.8);
    if (dedup.contains("label") && !dedup["label"].is_null()) {
      config.dedup_label = parse_veracity(dedup["label"].get<std::string>());
      if (!config.dedup_label) throw ArgumentError("dedup.label must be fake, real or unverified");
    }

    const json split = get_or<json>(j, "split", json::object());
    const std::string mode = get_or<std::string>(split, "mode", "random");
    if (mode == "random") {
      config.split_mode = SplitMode::kRandom;
    } else if (mode == "temporal") {
      config.split_mode = SplitMode::kTemporal;
    } else {
      throw ArgumentError("split.mode must be random or temporal, not '" + mode + "'");
    }
    if (split.contains("ratios")) {
      const auto ratios = split["ratios"].get<std::vector<double>>();
      if (ratios.size() != 3) throw ArgumentError("split.ratios needs three numbers");
      std::copy(ratios.begin(), ratios.end(), config.ratios.begin());
    }

    const json features = get_or<json>(j, "features", json::object());
    config.features.window = get_or<std::size_t>(features, "window", 2);
    config.features.comments_limit = get_or<std::size_t>(features, "comments_limit", 100);
    if (features.contains("category")) config.features.category = adapter_from_json(features["category"]);
    if (features.contains("sentiment")) config.features.sentiment = sentiment_from_json(features["sentiment"]);

    const json train = get_or<json>(j, "train", json::object());
    ClassifierOptions& opt = config.classifier;
    opt.features = parse_feature_set(get_or<std::string>(train, "features", "dual"));
    opt.train.epochs = get_or<std::size_t>(train, "epochs", opt.train.epochs);
    opt.train.learning_rate = get_or<double>(train, "lr", opt.train.learning_rate);
    opt.train.batch_size = get_or<std::size_t>(train, "batch_size", opt.train.batch_size);
    opt.train.class_weights = parse_class_weighting(get_or<std::string>(train, "class_weights", "none"));
    opt.train.patience = get_or<std::size_t>(train, "patience", opt.train.patience);
    opt.train.standardize = get_or<bool>(train, "standardize", opt.train.standardize);
    opt.train.seed = config.seed;
    opt.hidden = get_or<std::vector<std::size_t>>(train, "hidden", opt.hidden);
    opt.detector_embedding = get_or<bool>(train, "detector_embedding", true);

    const json eval = get_or<json>(j, "eval", json::object());
    opt.regime = parse_regime(get_or<std::string>(eval, "regime", "two_class"));

    const json analyze = get_or<json>(j, "analyze", json::object());
    if (analyze.contains("whitelist") && !analyze["whitelist"].is_null()) {
      const auto names = analyze["whitelist"].get<std::vector<std::string>>();
      config.whitelist = std::set<std::string>(names.begin(), names.end());
    }
  } catch (const json::exception& e) {
    throw LoadError(std::string("pipeline config: ") + e.what());
  }

  std::size_t last = 0;
  for (const auto& stage : config.stages) {
    auto it = std::find(kStageOrder.begin(), kStageOrder.end(), stage);
    if (it == kStageOrder.end()) throw ArgumentError("unknown pipeline stage '" + stage + "'");
    const auto pos = static_cast<std::size_t>(it - kStageOrder.begin()) + 1;
    if (pos <= last) throw ArgumentError("pipeline stages must be unique and in order: dedup, split, extract, train, eval, analyze");
    last = pos;
  }
  auto require = [&](const char* stage, const char* needed) {
    if (config.has_stage(stage) && !config.has_stage(needed)) {
      throw ArgumentError(std::string("stage '") + stage + "' requires stage '" + needed + "'");
    }
  };
  require("train", "split");
  require("train", "extract");
  require("eval", "train");
  if (!(config.dedup_threshold > 0.0 && config.dedup_threshold <= 1.0)) {
    throw ArgumentError("dedup.threshold must be in (0, 1]");
  }
  return config;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open pipeline config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw LoadError("pipeline config " + path.string() + ": " + e.what());
  }
  return pipeline_config_from_json(j, path.parent_path());
}

namespace {

class OutputTracker {
 public:
  explicit OutputTracker(fs::path dir) : dir_(std::move(dir)) {}

  fs::path path(const std::string& name) {
    names_.push_back(name);
    return dir_ / name;
  }

  void write_text(const std::string& name, const std::string& text) {
    std::ofstream out(path(name), std::ios::binary);
    if (!out) throw Error("cannot write " + (dir_ / name).string());
    out << text;
  }

  void write_json(const std::string& name, const json& j) { write_text(name, j.dump(2) + "\n"); }

  const std::vector<std::string>& names() const { return names_; }

  void remove_all() {
    std::error_code ec;
    for (const auto& name : names_) fs::remove(dir_ / name, ec);
    names_.clear();
  }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

json resource_hashes(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  json out = json::object();
  for (const auto& f : files) out[f.filename().string()] = sha256_file(f);
  return out;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (!fs::is_directory(config.resources)) {
    throw LoadError("resources directory not found: " + config.resources.string());
  }
  const ResourceBundle bundle = load_resources(config.resources, config.language);
  if (!fs::is_regular_file(config.dataset)) throw LoadError("dataset not found: " + config.dataset.string());

  const bool created = !fs::exists(config.out);
  fs::create_directories(config.out);
  OutputTracker outputs(config.out);
  PipelineResult result;
  std::string stage = "load";
  try {
    Dataset dataset = load_dataset(config.dataset);

    if (config.has_stage("dedup")) {
      stage = "dedup";
      DedupResult dedup = deduplicate(dataset, config.dedup_label, config.dedup_threshold);
      save_dataset(dedup.dataset, outputs.path("deduped.jsonl"));
      outputs.write_json("clusters.json", cluster_report_to_json(dedup.report));
      dataset = std::move(dedup.dataset);
    }

    DatasetSplit split;
    if (config.has_stage("split")) {
      stage = "split";
      split = config.split_mode == SplitMode::kRandom ? random_split(dataset, config.ratios, config.seed)
                                                      : temporal_split(dataset);
      outputs.write_json("split.json", split_to_json(split));
    }

    std::vector<FeatureRecord> records;
    if (config.has_stage("extract")) {
      stage = "extract";
      records = extract_records(dataset, bundle, config.features);
      save_records(records, outputs.path("features.jsonl"));
    }

    MlpModel model;
    if (config.has_stage("train")) {
      stage = "train";
      TrainResult trained = train_classifier(records, split, config.classifier);
      save_model(trained.model, outputs.path("model.json"));
      outputs.write_json("history.json", history_to_json(trained));
      model = std::move(trained.model);
    }

    if (config.has_stage("eval")) {
      stage = "eval";
      const Evaluation evaluation = evaluate_classifier(model, records, split.test, config.classifier.regime);
      json metrics = metrics_to_json(evaluation.metrics);
      metrics["regime"] = config.classifier.regime == Regime::kTwoClass ? "two_class" : "three_class";
      metrics["features"] = model.feature_spec.feature_set;
      metrics["evaluated"] = evaluation.predictions.size();
      outputs.write_json("metrics.json", metrics);
      result.test_metrics = evaluation.metrics;
    }

    if (config.has_stage("analyze")) {
      stage = "analyze";
      const ContingencyTable table =
          contingency_table(dataset, config.features.category, bundle, config.whitelist);
      outputs.write_json("chisq.json", chi_square_to_json(chi_square(table)));
      for (Veracity v : table.rows) {
        outputs.write_text("heatmap_" + std::string(veracity_name(v)) + ".csv",
                           heatmap_csv(heatmap_rows(table, v)));
      }
    }

    stage = "manifest";
    json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = config.source;
    manifest["seeds"] = {{"split", config.seed}, {"init", config.classifier.train.seed},
                         {"shuffle", config.classifier.train.seed}};
    manifest["inputs"] = {{"dataset", {{"file", config.dataset.filename().string()},
                                       {"sha256", sha256_file(config.dataset)}}},
                          {"resources", resource_hashes(config.resources)}};
    json produced = json::object();
    for (const auto& name : outputs.names()) produced[name] = sha256_file(config.out / name);
    manifest["outputs"] = produced;
    result.outputs = outputs.names();
    outputs.write_json("manifest.json", manifest);
    result.outputs.push_back("manifest.json");
  } catch (const std::exception& e) {
    outputs.remove_all();
    std::error_code ec;
    if (created && fs::is_empty(config.out, ec)) fs::remove(config.out, ec);
    throw Error("pipeline stage '" + stage + "' failed: " + e.what());
  }
  return result;
}

}  // namespace dualemo
