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

#include "dualemo/feature_io.hpp"

#include <array>
#include <fstream>

#include "dualemo/error.hpp"
#include "dualemo/textproc.hpp"

namespace dualemo {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 5> kSegmentNames{"publisher", "social_mean", "social_max",
                                                   "gap_mean", "gap_max"};

}  // namespace

FeatureSet parse_feature_set(std::string_view name) {
  if (name == "dual") return FeatureSet::kDual;
  if (name == "publisher") return FeatureSet::kPublisher;
  if (name == "social") return FeatureSet::kSocial;
  if (name == "gap") return FeatureSet::kGap;
  if (name == "emoratio") return FeatureSet::kEmoratio;
  if (name == "emocred") return FeatureSet::kEmocred;
  throw ArgumentError("unknown feature set '" + std::string(name) +
                      "' (expected dual, publisher, social, gap, emoratio or emocred)");
}

std::string_view feature_set_name(FeatureSet set) {
  switch (set) {
    case FeatureSet::kDual:
      return "dual";
    case FeatureSet::kPublisher:
      return "publisher";
    case FeatureSet::kSocial:
      return "social";
    case FeatureSet::kGap:
      return "gap";
    case FeatureSet::kEmoratio:
      return "emoratio";
    case FeatureSet::kEmocred:
      return "emocred";
  }
  return "?";
}

std::span<const double> FeatureRecord::segment(std::size_t index) const {
  if (index >= kSegmentNames.size()) throw ArgumentError("segment index out of range");
  return std::span(dual).subspan(index * segment_dim, segment_dim);
}

FeatureRecord extract_record(const NewsPiece& piece, const ResourceBundle& bundle,
                             const FeatureConfig& config) {
  FeatureRecord record;
  record.id = piece.id;
  record.label = piece.label;
  const DualEmotionVector dual = dual_emotion_features(piece, bundle, config);
  record.dual = dual.flat();
  record.segment_dim = dual.publisher.dim();
  const TokenSequence tokens = tokenize(piece.content, bundle);
  record.emoratio = emoratio(tokens, bundle);
  record.emocred = emocred_features(tokens, bundle);
  record.detector_embedding = piece.detector_embedding;
  return record;
}

std::vector<FeatureRecord> extract_records(const Dataset& dataset, const ResourceBundle& bundle,
                                           const FeatureConfig& config) {
  std::vector<FeatureRecord> records;
  records.reserve(dataset.size());
  for (const auto& piece : dataset.pieces) records.push_back(extract_record(piece, bundle, config));
  return records;
}

std::vector<double> select_features(const FeatureRecord& record, FeatureSet set) {
  auto segments = [&](std::size_t first, std::size_t count) {
    const auto span = std::span(record.dual).subspan(first * record.segment_dim, count * record.segment_dim);
    return std::vector<double>(span.begin(), span.end());
  };
  switch (set) {
    case FeatureSet::kDual:
      return record.dual;
    case FeatureSet::kPublisher:
      return segments(0, 1);
    case FeatureSet::kSocial:
      return segments(1, 2);
    case FeatureSet::kGap:
      return segments(3, 2);
    case FeatureSet::kEmoratio:
      return {record.emoratio};
    case FeatureSet::kEmocred:
      return record.emocred;
  }
  return {};
}

json record_to_json(const FeatureRecord& record) {
  json segments = json::object();
  for (const char* name : kSegmentNames) segments[name] = record.segment_dim;
  json j = {{"id", record.id},
            {"label", record.label ? json(veracity_name(*record.label)) : json(nullptr)},
            {"dual", record.dual},
            {"segments", segments},
            {"baselines", {{"emoratio", record.emoratio}, {"emocred", record.emocred}}}};
  if (record.detector_embedding) j["detector_embedding"] = *record.detector_embedding;
  return j;
}

FeatureRecord record_from_json(const json& j) {
  FeatureRecord record;
  record.id = j.at("id").get<std::string>();
  if (j.contains("label") && !j["label"].is_null()) {
    record.label = parse_veracity(j["label"].get<std::string>());
    if (!record.label) throw LoadError("record " + record.id + ": unknown label " + j["label"].dump());
  }
  record.dual = j.at("dual").get<std::vector<double>>();
  const json& segments = j.at("segments");
  record.segment_dim = segments.at("publisher").get<std::size_t>();
  for (const char* name : kSegmentNames) {
    if (segments.at(name).get<std::size_t>() != record.segment_dim) {
      throw LoadError("record " + record.id + ": segments have unequal lengths");
    }
  }
  if (record.dual.size() != 5 * record.segment_dim) {
    throw LoadError("record " + record.id + ": dual vector length " + std::to_string(record.dual.size()) +
                    " does not match segments");
  }
  const json& baselines = j.at("baselines");
  record.emoratio = baselines.at("emoratio").get<double>();
  record.emocred = baselines.at("emocred").get<std::vector<double>>();
  if (j.contains("detector_embedding")) {
    record.detector_embedding = j["detector_embedding"].get<std::vector<double>>();
  }
  return record;
}

void save_records(std::span<const FeatureRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write features " + path.string());
  for (const auto& record : records) out << record_to_json(record).dump() << '\n';
}

std::vector<FeatureRecord> load_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open features " + path.string());
  std::vector<FeatureRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw LoadError(path.filename().string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace dualemo
