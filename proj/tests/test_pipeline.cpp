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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "dualemo/analysis.hpp"
#include "dualemo/error.hpp"
#include "dualemo/feature_io.hpp"
#include "dualemo/pipeline.hpp"
#include "dualemo/synth.hpp"
#include "support.hpp"

using namespace dualemo;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) out[entry.path().filename().string()] = read_file(entry.path());
  return out;
}

fs::path small_corpus(const fs::path& dir, std::size_t pieces = 200) {
  SynthConfig synth;
  synth.pieces = pieces;
  synth.seed = 5;
  save_dataset(synthesize_corpus(synth), dir / "corpus.jsonl");
  return dir / "corpus.jsonl";
}

nlohmann::json small_config() {
  return {{"dataset", "corpus.jsonl"},
          {"resources", testing::resource_dir(Language::kEnglish).string()},
          {"out", "run"},
          {"seed", 3},
          {"train", {{"epochs", 3}, {"hidden", {16, 8}}}}};
}

}  // namespace

TEST_CASE("synthetic corpus") {
  SynthConfig config;
  config.pieces = 300;
  const auto d = synthesize_corpus(config);
  REQUIRE(d.size() == 300);
  std::size_t fake = 0;
  for (const auto& p : d.pieces) {
    fake += p.label == Veracity::kFake;
    CHECK(p.comments.size() >= 3);
    CHECK(p.comments.size() <= 10);
    for (std::size_t c = 1; c < p.comments.size(); ++c) CHECK(p.comments[c].timestamp > p.comments[c - 1].timestamp);
  }
  CHECK(fake == 150);
  const auto again = synthesize_corpus(config);
  CHECK(piece_to_json(again.pieces[17]) == piece_to_json(d.pieces[17]));
}

TEST_CASE("synthetic categories come out as planted") {
  SynthConfig config;
  config.pieces = 400;
  const auto d = synthesize_corpus(config);
  const auto& bundle = testing::bundle(Language::kEnglish);
  std::set<std::pair<std::string, std::string>> fake_pairs, real_pairs;
  for (const auto& p : config.fake) fake_pairs.insert({p.publisher, p.social});
  for (const auto& p : config.real) real_pairs.insert({p.publisher, p.social});
  for (const auto& piece : d.pieces) {
    const auto c = dual_emotion_category(piece, ClassifierAdapter{}, bundle);
    const auto& allowed = piece.label == Veracity::kFake ? fake_pairs : real_pairs;
    CHECK(allowed.count({c.publisher, c.social}) == 1);
  }
}

TEST_CASE("feature records") {
  const auto& bundle = testing::bundle(Language::kEnglish);
  SynthConfig synth;
  synth.pieces = 6;
  auto d = synthesize_corpus(synth);
  d.pieces[0].detector_embedding = std::vector<double>{0.25, 0.5, 0.75};
  const FeatureConfig config;
  const auto records = extract_records(d, bundle, config);
  REQUIRE(records.size() == 6);
  const std::size_t dim = feature_layout(bundle, config).total();
  const auto& r = records[0];
  CHECK(r.segment_dim == dim);
  CHECK(r.dual.size() == 5 * dim);
  CHECK(select_features(r, FeatureSet::kDual).size() == 5 * dim);
  CHECK(select_features(r, FeatureSet::kPublisher).size() == dim);
  CHECK(select_features(r, FeatureSet::kSocial).size() == 2 * dim);
  CHECK(select_features(r, FeatureSet::kGap).size() == 2 * dim);
  CHECK(select_features(r, FeatureSet::kEmoratio).size() == 1);
  CHECK(select_features(r, FeatureSet::kEmocred).size() == 2 * bundle.emotion_count());
  const auto pub = select_features(r, FeatureSet::kPublisher);
  CHECK(std::equal(pub.begin(), pub.end(), r.dual.begin()));

  const auto dir = testing::scratch_dir("feature_io");
  save_records(records, dir / "f.jsonl");
  const auto back = load_records(dir / "f.jsonl");
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(record_to_json(back[i]) == record_to_json(records[i]));
    CHECK(back[i].dual == records[i].dual);
  }
  CHECK(back[0].detector_embedding == d.pieces[0].detector_embedding);
  CHECK_FALSE(back[1].detector_embedding.has_value());

  CHECK(parse_feature_set("gap") == FeatureSet::kGap);
  CHECK(feature_set_name(FeatureSet::kEmocred) == "emocred");
  CHECK_THROWS_AS(parse_feature_set("all"), ArgumentError);
}

TEST_CASE("pipeline writes every output and a manifest") {
  const auto dir = testing::scratch_dir("pipeline_full");
  small_corpus(dir);
  const auto config = pipeline_config_from_json(small_config(), dir);
  const auto result = run_pipeline(config);
  for (const char* name : {"deduped.jsonl", "clusters.json", "split.json", "features.jsonl", "model.json",
                           "history.json", "metrics.json", "chisq.json", "heatmap_fake.csv",
                           "heatmap_real.csv", "manifest.json"}) {
    CAPTURE(name);
    CHECK(fs::is_regular_file(dir / "run" / name));
  }
  REQUIRE(result.test_metrics.has_value());
  const auto manifest = nlohmann::json::parse(read_file(dir / "run" / "manifest.json"));
  CHECK(manifest.at("version") == kVersion);
  CHECK(manifest.at("seeds").at("split") == 3);
  CHECK(manifest.at("inputs").at("dataset").at("sha256") == sha256_file(dir / "corpus.jsonl"));
  CHECK(manifest.at("inputs").at("resources").contains("lexicon.tsv"));
  CHECK(manifest.at("outputs").at("model.json") == sha256_file(dir / "run" / "model.json"));
  CHECK(manifest.at("config") == small_config());

  const auto metrics = nlohmann::json::parse(read_file(dir / "run" / "metrics.json"));
  CHECK(metrics.at("regime") == "two_class");
  CHECK(metrics.at("features") == "dual");
}

TEST_CASE("pipeline reruns are byte-identical") {
  const auto dir = testing::scratch_dir("pipeline_rerun");
  small_corpus(dir);
  const auto config = pipeline_config_from_json(small_config(), dir);
  run_pipeline(config);
  const auto first = snapshot(dir / "run");
  fs::remove_all(dir / "run");
  run_pipeline(config);
  CHECK(snapshot(dir / "run") == first);
}

TEST_CASE("missing resources abort before any output is written") {
  const auto dir = testing::scratch_dir("pipeline_missing");
  small_corpus(dir, 20);
  auto j = small_config();
  j["resources"] = (dir / "no_such_dir").string();
  const auto config = pipeline_config_from_json(j, dir);
  CHECK_THROWS_AS(run_pipeline(config), LoadError);
  CHECK_FALSE(fs::exists(dir / "run"));

  j = small_config();
  j["dataset"] = "absent.jsonl";
  CHECK_THROWS_AS(run_pipeline(pipeline_config_from_json(j, dir)), LoadError);
  CHECK_FALSE(fs::exists(dir / "run"));
}

TEST_CASE("a failing stage removes the outputs of the run") {
  const auto dir = testing::scratch_dir("pipeline_fail");
  {
    // Pieces without timestamps make the temporal split fail.
    std::ofstream out(dir / "corpus.jsonl");
    out << R"({"id": "a", "content": "angry", "label": "fake"})" << "\n"
        << R"({"id": "b", "content": "happy", "label": "real"})" << "\n";
  }
  auto j = small_config();
  j["split"] = {{"mode", "temporal"}};
  CHECK_THROWS_WITH(run_pipeline(pipeline_config_from_json(j, dir)), doctest::Contains("pipeline stage 'split' failed"));
  CHECK_FALSE(fs::exists(dir / "run"));
}

TEST_CASE("pipeline config validation") {
  const fs::path base = "/base";
  nlohmann::json j{{"dataset", "d.jsonl"}, {"resources", "res"}};
  const auto config = pipeline_config_from_json(j, base);
  CHECK(config.dataset == base / "d.jsonl");
  CHECK(config.out == base / "out");
  CHECK(config.has_stage("analyze"));

  j["stages"] = {"train", "split"};
  CHECK_THROWS_AS(pipeline_config_from_json(j, base), ArgumentError);
  j["stages"] = {"split", "train"};
  CHECK_THROWS_WITH_AS(pipeline_config_from_json(j, base), doctest::Contains("requires stage 'extract'"), ArgumentError);
  j["stages"] = {"dedup", "dedup"};
  CHECK_THROWS_AS(pipeline_config_from_json(j, base), ArgumentError);
  CHECK_THROWS_AS(pipeline_config_from_json(nlohmann::json{{"resources", "r"}}, base), LoadError);
  CHECK_THROWS_AS(pipeline_config_from_json(nlohmann::json::array(), base), LoadError);
}

TEST_CASE("small helpers") {
  CHECK(parse_ratios("3:1:1") == std::array<double, 3>{3, 1, 1});
  CHECK(parse_ratios("0.6:0.2:0.2")[0] == doctest::Approx(0.6));
  CHECK_THROWS_AS(parse_ratios("3:1"), ArgumentError);
  CHECK_THROWS_AS(parse_ratios("3:x:1"), ArgumentError);
  CHECK_THROWS_AS(parse_ratios("3:1:1:"), ArgumentError);
  CHECK(parse_class_weighting("inverse") == ClassWeighting::kInverseFrequency);
  CHECK_THROWS_AS(parse_class_weighting("balanced"), ArgumentError);

  const auto dir = testing::scratch_dir("sha");
  {
    std::ofstream out(dir / "abc.txt", std::ios::binary);
    out << "abc";
  }
  CHECK(sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
