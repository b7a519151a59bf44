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

// Command-line front end: feature extraction, analysis, splits, dedup,
// classifier training/evaluation, baselines and the staged pipeline.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dualemo/analysis.hpp"
#include "dualemo/dataset.hpp"
#include "dualemo/error.hpp"
#include "dualemo/feature_io.hpp"
#include "dualemo/pipeline.hpp"
#include "dualemo/resources.hpp"
#include "dualemo/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct FeatureFlags {
  std::string resources;
  std::string lang = "en";
  std::size_t window = 2;
  std::size_t comments_limit = 100;
  std::string category = "lexicon_vote";
  std::size_t category_dim = 0;
  std::string sentiment = "builtin";
  std::size_t sentiment_dim = 1;
  bool published = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--resources", resources, "Resource directory for the language")->required();
    cmd->add_option("--lang", lang, "Language code")->check(CLI::IsMember({"en", "zh"}));
    cmd->add_option("--window", window, "Left context window for negation/degree words")->check(CLI::PositiveNumber);
    cmd->add_option("--comments-limit", comments_limit, "Earliest comments pooled per piece")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--category", category, "Emotion category source")
        ->check(CLI::IsMember({"lexicon_vote", "precomputed"}));
    cmd->add_option("--category-dim", category_dim, "Classifier output dimension (precomputed)");
    cmd->add_option("--sentiment", sentiment, "Sentiment source")->check(CLI::IsMember({"builtin", "precomputed"}));
    cmd->add_option("--sentiment-dim", sentiment_dim, "Sentiment dimension (precomputed)");
    cmd->add_flag("--published", published, "Use the published external-model dimensions for the language");
  }

  dualemo::Language language() const { return dualemo::parse_language(lang); }

  dualemo::FeatureConfig config() const {
    dualemo::FeatureConfig c;
    if (published) {
      c = dualemo::FeatureConfig::published(language());
    } else {
      if (category == "precomputed") {
        if (category_dim == 0) throw dualemo::ArgumentError("--category precomputed needs --category-dim");
        c.category = {dualemo::CategoryMode::kPrecomputed, category_dim, {}};
      }
      if (sentiment == "precomputed") c.sentiment = {dualemo::SentimentMode::kPrecomputed, sentiment_dim};
    }
    c.window = window;
    c.comments_limit = comments_limit;
    return c;
  }
};

struct ClassifierFlags {
  std::string features = "dual";
  std::size_t epochs = 100;
  double lr = 0.05;
  std::size_t batch_size = 32;
  std::string class_weights = "none";
  std::size_t patience = 10;
  std::uint64_t seed = 42;
  std::string regime = "two_class";
  bool no_standardize = false;

  void add_to(CLI::App* cmd, std::vector<std::string> allowed_features) {
    cmd->add_option("--features", features, "Feature subset")->check(CLI::IsMember(allowed_features));
    cmd->add_option("--epochs", epochs, "Maximum training epochs")->check(CLI::PositiveNumber);
    cmd->add_option("--lr", lr, "Learning rate")->check(CLI::PositiveNumber);
    cmd->add_option("--batch-size", batch_size, "Mini-batch size")->check(CLI::PositiveNumber);
    cmd->add_option("--class-weights", class_weights, "Loss class weighting")
        ->check(CLI::IsMember({"none", "inverse"}));
    cmd->add_option("--patience", patience, "Early-stopping patience in epochs")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--regime", regime, "Label regime")->check(CLI::IsMember({"two_class", "three_class"}));
    cmd->add_flag("--no-standardize", no_standardize, "Feed raw features without standardization");
  }

  dualemo::ClassifierOptions options() const {
    dualemo::ClassifierOptions o;
    o.features = dualemo::parse_feature_set(features);
    o.regime = dualemo::parse_regime(regime);
    o.train.epochs = epochs;
    o.train.learning_rate = lr;
    o.train.batch_size = batch_size;
    o.train.class_weights = dualemo::parse_class_weighting(class_weights);
    o.train.patience = patience;
    o.train.seed = seed;
    o.train.standardize = !no_standardize;
    return o;
  }
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw dualemo::Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw dualemo::LoadError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw dualemo::LoadError(path.string() + ": " + e.what());
  }
}

std::optional<std::set<std::string>> parse_whitelist(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::set<std::string> names;
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (!name.empty()) names.insert(name);
  }
  return names;
}

json evaluation_json(const dualemo::Evaluation& evaluation, const dualemo::MlpModel& model, const std::string& regime) {
  json j = dualemo::metrics_to_json(evaluation.metrics);
  j["regime"] = regime;
  j["features"] = model.feature_spec.feature_set;
  j["evaluated"] = evaluation.predictions.size();
  return j;
}

const std::vector<std::string>& split_part(const dualemo::DatasetSplit& split, const std::string& part) {
  if (part == "train") return split.train;
  if (part == "validation") return split.validation;
  return split.test;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual emotion features for fake news detection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dualemo::kVersion);

  // extract
  auto* extract = app.add_subcommand("extract", "Write dual emotion feature records for a dataset");
  std::string dataset_path, out_path;
  FeatureFlags extract_flags;
  extract->add_option("--dataset", dataset_path, "Dataset (JSON Lines)")->required();
  extract->add_option("--out", out_path, "Feature file to write")->required();
  extract_flags.add_to(extract);
  extract->callback([&] {
    const auto bundle = dualemo::load_resources(extract_flags.resources, extract_flags.language());
    const auto dataset = dualemo::load_dataset(dataset_path);
    const auto records = dualemo::extract_records(dataset, bundle, extract_flags.config());
    dualemo::save_records(records, out_path);
    std::cout << "wrote " << records.size() << " records of dimension "
              << (records.empty() ? 0 : records.front().dual.size()) << " to " << out_path << '\n';
  });

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Chi-square test and heatmaps of dual emotion categories");
  FeatureFlags analyze_flags;
  std::string whitelist;
  analyze->add_option("--dataset", dataset_path, "Dataset (JSON Lines)")->required();
  analyze->add_option("--out", out_path, "Output directory")->required();
  analyze->add_option("--whitelist", whitelist, "Comma-separated emotion categories to keep");
  analyze_flags.add_to(analyze);
  analyze->callback([&] {
    const auto bundle = dualemo::load_resources(analyze_flags.resources, analyze_flags.language());
    const auto dataset = dualemo::load_dataset(dataset_path);
    const auto config = analyze_flags.config();
    const auto table = dualemo::contingency_table(dataset, config.category, bundle, parse_whitelist(whitelist));
    const auto result = dualemo::chi_square(table);
    fs::create_directories(out_path);
    write_json(fs::path(out_path) / "chisq.json", dualemo::chi_square_to_json(result));
    for (auto v : table.rows) {
      std::ofstream csv(fs::path(out_path) / ("heatmap_" + std::string(dualemo::veracity_name(v)) + ".csv"));
      csv << dualemo::heatmap_csv(dualemo::heatmap_rows(table, v));
    }
    std::cout << "chi-square " << result.statistic << " with " << result.degrees_of_freedom
              << " degrees of freedom; reject at 95%: " << (result.reject_at.at(0.95) ? "yes" : "no")
              << ", 99%: " << (result.reject_at.at(0.99) ? "yes" : "no") << '\n';
  });

  // split
  auto* split_cmd = app.add_subcommand("split", "Train/validation/test split of a dataset");
  std::string mode = "random", ratios = "3:1:1";
  std::uint64_t seed = 42;
  split_cmd->add_option("--dataset", dataset_path, "Dataset (JSON Lines)")->required();
  split_cmd->add_option("--out", out_path, "Split file to write (JSON)")->required();
  split_cmd->add_option("--mode", mode, "Split mode")->check(CLI::IsMember({"random", "temporal"}));
  split_cmd->add_option("--ratios", ratios, "train:validation:test ratios for random splits");
  split_cmd->add_option("--seed", seed, "Random seed");
  split_cmd->callback([&] {
    const auto dataset = dualemo::load_dataset(dataset_path);
    const auto split = mode == "random" ? dualemo::random_split(dataset, dualemo::parse_ratios(ratios), seed)
                                        : dualemo::temporal_split(dataset);
    write_json(out_path, dualemo::split_to_json(split));
    std::cout << "train " << split.train.size() << ", validation " << split.validation.size() << ", test "
              << split.test.size() << '\n';
  });

  // dedup
  auto* dedup = app.add_subcommand("dedup", "Remove near-duplicate pieces");
  double threshold = 0.8;
  std::string label_filter, report_path;
  dedup->add_option("--dataset", dataset_path, "Dataset (JSON Lines)")->required();
  dedup->add_option("--out", out_path, "Deduplicated dataset to write")->required();
  dedup->add_option("--threshold", threshold, "Character 3-gram Jaccard threshold")->check(CLI::Range(0.0, 1.0));
  dedup->add_option("--label", label_filter, "Only deduplicate pieces with this label")
      ->check(CLI::IsMember({"fake", "real", "unverified"}));
  dedup->add_option("--report", report_path, "Cluster report to write (JSON)");
  dedup->callback([&] {
    const auto dataset = dualemo::load_dataset(dataset_path);
    std::optional<dualemo::Veracity> label;
    if (!label_filter.empty()) label = dualemo::parse_veracity(label_filter);
    const auto result = dualemo::deduplicate(dataset, label, threshold);
    dualemo::save_dataset(result.dataset, out_path);
    if (!report_path.empty()) write_json(report_path, dualemo::cluster_report_to_json(result.report));
    std::cout << "retained " << result.report.retained << ", removed " << result.report.removed << '\n';
  });

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the MLP classifier on extracted features");
  std::string feature_file, split_path, history_path;
  ClassifierFlags train_flags;
  train_cmd->add_option("--feature-file", feature_file, "Feature records (JSON Lines)")->required();
  train_cmd->add_option("--split", split_path, "Split file (JSON)")->required();
  train_cmd->add_option("--out", out_path, "Model file to write")->required();
  train_cmd->add_option("--history", history_path, "Training history to write (JSON)");
  train_flags.add_to(train_cmd, {"dual", "publisher", "social", "gap", "emoratio", "emocred"});
  train_cmd->callback([&] {
    const auto records = dualemo::load_records(feature_file);
    const auto split = dualemo::split_from_json(read_json(split_path));
    const auto result = dualemo::train_classifier(records, split, train_flags.options());
    dualemo::save_model(result.model, out_path);
    if (!history_path.empty()) write_json(history_path, dualemo::history_to_json(result));
    std::cout << "trained " << result.history.size() << " epochs, best epoch " << result.best_epoch << '\n';
  });

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a trained model on a split part");
  std::string model_path, part = "test", regime = "two_class";
  eval_cmd->add_option("--model", model_path, "Model file")->required();
  eval_cmd->add_option("--feature-file", feature_file, "Feature records (JSON Lines)")->required();
  eval_cmd->add_option("--split", split_path, "Split file (JSON)")->required();
  eval_cmd->add_option("--part", part, "Split part to score")->check(CLI::IsMember({"train", "validation", "test"}));
  eval_cmd->add_option("--regime", regime, "Label regime")->check(CLI::IsMember({"two_class", "three_class"}));
  eval_cmd->add_option("--out", out_path, "Metrics file to write (JSON)");
  eval_cmd->callback([&] {
    const auto model = dualemo::load_model(model_path);
    const auto records = dualemo::load_records(feature_file);
    const auto split = dualemo::split_from_json(read_json(split_path));
    const auto evaluation =
        dualemo::evaluate_classifier(model, records, split_part(split, part), dualemo::parse_regime(regime));
    const json j = evaluation_json(evaluation, model, regime);
    if (!out_path.empty()) write_json(out_path, j);
    std::cout << j.dump(2) << '\n';
  });

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Train and evaluate on Emoratio or EmoCred features");
  ClassifierFlags baseline_flags;
  baseline_flags.features = "emocred";
  baseline->add_option("--feature-file", feature_file, "Feature records (JSON Lines)")->required();
  baseline->add_option("--split", split_path, "Split file (JSON)")->required();
  baseline->add_option("--out", out_path, "Metrics file to write (JSON)");
  baseline_flags.add_to(baseline, {"emoratio", "emocred"});
  baseline->callback([&] {
    const auto records = dualemo::load_records(feature_file);
    const auto split = dualemo::split_from_json(read_json(split_path));
    const auto options = baseline_flags.options();
    const auto result = dualemo::train_classifier(records, split, options);
    const auto evaluation = dualemo::evaluate_classifier(result.model, records, split.test, options.regime);
    const json j = evaluation_json(evaluation, result.model, baseline_flags.regime);
    if (!out_path.empty()) write_json(out_path, j);
    std::cout << j.dump(2) << '\n';
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Run the staged pipeline from a config file");
  std::string config_path, features_override;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::size_t> epochs_override;
  std::optional<double> lr_override;
  pipeline->add_option("--config", config_path, "Pipeline config (JSON)")->required();
  pipeline->add_option("--out", out_path, "Output directory (overrides the config)");
  pipeline->add_option("--features", features_override, "Feature subset (overrides the config)")
      ->check(CLI::IsMember({"dual", "publisher", "social", "gap", "emoratio", "emocred"}));
  pipeline->add_option("--seed", seed_override, "Seed (overrides the config)");
  pipeline->add_option("--epochs", epochs_override, "Epochs (overrides the config)");
  pipeline->add_option("--lr", lr_override, "Learning rate (overrides the config)");
  pipeline->callback([&] {
    auto config = dualemo::load_pipeline_config(config_path);
    if (!out_path.empty()) config.out = out_path;
    if (!features_override.empty()) {
      config.classifier.features = dualemo::parse_feature_set(features_override);
      config.source["train"]["features"] = features_override;
    }
    if (seed_override) {
      config.seed = *seed_override;
      config.classifier.train.seed = *seed_override;
      config.source["seed"] = *seed_override;
    }
    if (epochs_override) {
      config.classifier.train.epochs = *epochs_override;
      config.source["train"]["epochs"] = *epochs_override;
    }
    if (lr_override) {
      config.classifier.train.learning_rate = *lr_override;
      config.source["train"]["lr"] = *lr_override;
    }
    const auto result = dualemo::run_pipeline(config);
    for (const auto& name : result.outputs) std::cout << (config.out / name).string() << '\n';
    if (result.test_metrics) {
      std::cout << "test accuracy " << result.test_metrics->accuracy << ", macro F1 "
                << result.test_metrics->macro_f1 << '\n';
    }
  });

  // synth
  auto* synth = app.add_subcommand("synth", "Generate the synthetic English corpus");
  dualemo::SynthConfig synth_config;
  synth->add_option("--out", out_path, "Dataset to write (JSON Lines)")->required();
  synth->add_option("--pieces", synth_config.pieces, "Number of pieces")->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_config.seed, "Random seed");
  synth->callback([&] {
    const auto dataset = dualemo::synthesize_corpus(synth_config);
    dualemo::save_dataset(dataset, out_path);
    std::cout << "wrote " << dataset.size() << " pieces to " << out_path << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const dualemo::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
