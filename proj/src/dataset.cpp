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

#include "dualemo/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "dualemo/error.hpp"
#include "dualemo/random.hpp"
#include "dualemo/utf8.hpp"

namespace dualemo {

using nlohmann::json;

std::optional<Veracity> parse_veracity(std::string_view name) {
  if (name == "fake") return Veracity::kFake;
  if (name == "real") return Veracity::kReal;
  if (name == "unverified") return Veracity::kUnverified;
  return std::nullopt;
}

std::string_view veracity_name(Veracity veracity) {
  switch (veracity) {
    case Veracity::kFake:
      return "fake";
    case Veracity::kReal:
      return "real";
    case Veracity::kUnverified:
      return "unverified";
  }
  return "?";
}

const NewsPiece* Dataset::find(std::string_view id) const {
  for (const auto& piece : pieces) {
    if (piece.id == id) return &piece;
  }
  return nullptr;
}

namespace {

std::vector<double> real_vector(const json& j, const char* field) {
  if (!j.is_array()) throw Error(std::string(field) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(std::string(field) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> real_matrix(const json& j, const char* field) {
  if (!j.is_array()) throw Error(std::string(field) + " must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const auto& row : j) out.push_back(real_vector(row, field));
  return out;
}

std::int64_t timestamp_value(const json& j, const char* field) {
  if (!j.is_number_integer()) throw Error(std::string(field) + " must be an integer");
  const auto value = j.get<std::int64_t>();
  if (value < 0) throw Error(std::string(field) + " must be nonnegative");
  return value;
}

}  // namespace

NewsPiece piece_from_json(const json& j) {
  if (!j.is_object()) throw Error("piece must be a JSON object");
  NewsPiece piece;
  if (!j.contains("id") || !j["id"].is_string()) throw Error("missing string field 'id'");
  piece.id = j["id"].get<std::string>();
  if (piece.id.empty()) throw Error("empty id");
  if (!j.contains("content") || !j["content"].is_string()) {
    throw Error("piece " + piece.id + ": missing string field 'content'");
  }
  piece.content = j["content"].get<std::string>();
  if (j.contains("language")) piece.language = parse_language(j["language"].get<std::string>());
  if (j.contains("label") && !j["label"].is_null()) {
    auto label = parse_veracity(j["label"].get<std::string>());
    if (!label) throw Error("piece " + piece.id + ": unknown label " + j["label"].dump());
    piece.label = label;
  }
  if (j.contains("timestamp") && !j["timestamp"].is_null()) {
    piece.timestamp = timestamp_value(j["timestamp"], "timestamp");
  }
  if (j.contains("comments")) {
    for (const auto& c : j["comments"]) {
      Comment comment;
      if (c.is_string()) {
        comment.text = c.get<std::string>();
      } else {
        comment.text = c.at("text").get<std::string>();
        if (c.contains("timestamp")) comment.timestamp = timestamp_value(c["timestamp"], "comment timestamp");
      }
      piece.comments.push_back(std::move(comment));
    }
  }
  if (j.contains("publisher_emotion_probs") && !j["publisher_emotion_probs"].is_null()) {
    piece.publisher_emotion_probs = real_vector(j["publisher_emotion_probs"], "publisher_emotion_probs");
  }
  if (j.contains("comment_emotion_probs") && !j["comment_emotion_probs"].is_null()) {
    piece.comment_emotion_probs = real_matrix(j["comment_emotion_probs"], "comment_emotion_probs");
    if (piece.comment_emotion_probs->size() != piece.comments.size()) {
      throw Error("piece " + piece.id + ": comment_emotion_probs has " +
                  std::to_string(piece.comment_emotion_probs->size()) + " rows for " +
                  std::to_string(piece.comments.size()) + " comments");
    }
  }
  if (j.contains("publisher_sentiment") && !j["publisher_sentiment"].is_null()) {
    piece.publisher_sentiment = real_vector(j["publisher_sentiment"], "publisher_sentiment");
  }
  if (j.contains("comment_sentiments") && !j["comment_sentiments"].is_null()) {
    piece.comment_sentiments = real_matrix(j["comment_sentiments"], "comment_sentiments");
    if (piece.comment_sentiments->size() != piece.comments.size()) {
      throw Error("piece " + piece.id + ": comment_sentiments has " +
                  std::to_string(piece.comment_sentiments->size()) + " rows for " +
                  std::to_string(piece.comments.size()) + " comments");
    }
  }
  if (j.contains("detector_embedding") && !j["detector_embedding"].is_null()) {
    piece.detector_embedding = real_vector(j["detector_embedding"], "detector_embedding");
  }
  return piece;
}

json piece_to_json(const NewsPiece& piece) {
  json j;
  j["id"] = piece.id;
  j["content"] = piece.content;
  j["language"] = std::string(language_code(piece.language));
  j["label"] = piece.label ? json(std::string(veracity_name(*piece.label))) : json(nullptr);
  if (piece.timestamp) j["timestamp"] = *piece.timestamp;
  json comments = json::array();
  for (const auto& c : piece.comments) comments.push_back({{"text", c.text}, {"timestamp", c.timestamp}});
  j["comments"] = std::move(comments);
  if (piece.publisher_emotion_probs) j["publisher_emotion_probs"] = *piece.publisher_emotion_probs;
  if (piece.comment_emotion_probs) j["comment_emotion_probs"] = *piece.comment_emotion_probs;
  if (piece.publisher_sentiment) j["publisher_sentiment"] = *piece.publisher_sentiment;
  if (piece.comment_sentiments) j["comment_sentiments"] = *piece.comment_sentiments;
  if (piece.detector_embedding) j["detector_embedding"] = *piece.detector_embedding;
  return j;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open dataset " + path.string());
  Dataset dataset;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    NewsPiece piece;
    try {
      piece = piece_from_json(json::parse(line));
    } catch (const std::exception& e) {
      throw LoadError(path.filename().string() + ":" + std::to_string(number) + ": " + e.what());
    }
    if (!ids.insert(piece.id).second) {
      throw LoadError(path.filename().string() + ":" + std::to_string(number) +
                      ": duplicate id '" + piece.id + "'");
    }
    dataset.pieces.push_back(std::move(piece));
  }
  return dataset;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write dataset " + path.string());
  for (const auto& piece : dataset.pieces) out << piece_to_json(piece).dump() << '\n';
}

json split_to_json(const DatasetSplit& split) {
  return {{"train", split.train}, {"validation", split.validation}, {"test", split.test}};
}

DatasetSplit split_from_json(const json& j) {
  DatasetSplit split;
  split.train = j.at("train").get<std::vector<std::string>>();
  split.validation = j.at("validation").get<std::vector<std::string>>();
  split.test = j.at("test").get<std::vector<std::string>>();
  return split;
}

DatasetSplit random_split(const Dataset& dataset, std::array<double, 3> ratios,
                          std::uint64_t seed) {
  if (dataset.pieces.empty()) throw ArgumentError("random_split: empty dataset");
  for (double r : ratios) {
    if (!(r > 0.0)) throw ArgumentError("random_split: ratios must be positive");
  }
  const std::size_t n = dataset.size();
  const double total = ratios[0] + ratios[1] + ratios[2];
  const auto n_val = static_cast<std::size_t>(static_cast<double>(n) * ratios[1] / total);
  const auto n_test = static_cast<std::size_t>(static_cast<double>(n) * ratios[2] / total);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span(order));

  // 0 = train, 1 = validation, 2 = test, assigned along the shuffled order.
  std::vector<int> part(n, 0);
  for (std::size_t k = 0; k < n_val; ++k) part[order[k]] = 1;
  for (std::size_t k = n_val; k < n_val + n_test; ++k) part[order[k]] = 2;

  DatasetSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = dataset.pieces[i].id;
    (part[i] == 0 ? split.train : part[i] == 1 ? split.validation : split.test).push_back(id);
  }
  return split;
}

DatasetSplit temporal_split(const Dataset& dataset) {
  std::vector<const NewsPiece*> sorted;
  for (const auto& piece : dataset.pieces) {
    if (!piece.timestamp) throw ArgumentError("temporal_split: piece " + piece.id + " has no timestamp");
    sorted.push_back(&piece);
  }
  std::sort(sorted.begin(), sorted.end(), [](const NewsPiece* a, const NewsPiece* b) {
    if (*a->timestamp != *b->timestamp) return *a->timestamp < *b->timestamp;
    return a->id < b->id;
  });
  const std::size_t n = sorted.size();
  const std::size_t n_test = n / 5;
  const std::size_t rest = n - n_test;
  const std::size_t n_val = rest / 4;
  const std::size_t n_train = rest - n_val;
  DatasetSplit split;
  for (std::size_t k = 0; k < n; ++k) {
    auto& part = k < n_train ? split.train : k < rest ? split.validation : split.test;
    part.push_back(sorted[k]->id);
  }
  return split;
}

json cluster_report_to_json(const ClusterReport& report) {
  return {{"clusters", report.clusters}, {"removed", report.removed}, {"retained", report.retained}};
}

namespace {

std::vector<std::string> char_trigrams(std::string_view text) {
  std::vector<std::size_t> starts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    starts.push_back(pos);
    pos += utf8::char_length(text, pos);
  }
  starts.push_back(text.size());
  const std::size_t chars = starts.size() - 1;
  std::vector<std::string> grams;
  if (chars == 0) return grams;
  if (chars < 3) {
    grams.emplace_back(text);
    return grams;
  }
  for (std::size_t i = 0; i + 3 <= chars; ++i) {
    grams.emplace_back(text.substr(starts[i], starts[i + 3] - starts[i]));
  }
  std::sort(grams.begin(), grams.end());
  grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
  return grams;
}

double sorted_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    const int cmp = a[i].compare(b[j]);
    if (cmp == 0) {
      ++common;
      ++i;
      ++j;
    } else if (cmp < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

double char_ngram_jaccard(std::string_view a, std::string_view b) {
  return sorted_jaccard(char_trigrams(a), char_trigrams(b));
}

DedupResult deduplicate(const Dataset& dataset, std::optional<Veracity> label_filter,
                        double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ArgumentError("deduplicate: threshold must be in (0, 1]");
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (!label_filter || dataset.pieces[i].label == label_filter) candidates.push_back(i);
  }
  std::vector<std::vector<std::string>> grams;
  grams.reserve(candidates.size());
  for (std::size_t idx : candidates) grams.push_back(char_trigrams(dataset.pieces[idx].content));

  std::vector<std::size_t> parent(candidates.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      // |A ∩ B| / |A ∪ B| <= min / max bounds the similarity from set sizes.
      const auto [small, large] = std::minmax(grams[a].size(), grams[b].size());
      if (large > 0 && static_cast<double>(small) < threshold * static_cast<double>(large) * (1.0 - 1e-12)) continue;
      if (find_root(parent, a) == find_root(parent, b)) continue;
      if (sorted_jaccard(grams[a], grams[b]) >= threshold) {
        parent[find_root(parent, b)] = find_root(parent, a);
      }
    }
  }

  std::vector<std::vector<std::size_t>> members(candidates.size());
  for (std::size_t a = 0; a < candidates.size(); ++a) members[find_root(parent, a)].push_back(candidates[a]);

  auto earlier = [&](std::size_t x, std::size_t y) {
    const auto tx = dataset.pieces[x].timestamp.value_or(std::numeric_limits<std::int64_t>::max());
    const auto ty = dataset.pieces[y].timestamp.value_or(std::numeric_limits<std::int64_t>::max());
    if (tx != ty) return tx < ty;
    return dataset.pieces[x].id < dataset.pieces[y].id;
  };

  std::vector<bool> drop(dataset.size(), false);
  DedupResult result;
  for (auto& cluster : members) {
    if (cluster.size() < 2) continue;
    std::sort(cluster.begin(), cluster.end(), earlier);
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      ids.push_back(dataset.pieces[cluster[k]].id);
      if (k > 0) drop[cluster[k]] = true;
    }
    result.report.clusters.push_back(std::move(ids));
  }
  std::sort(result.report.clusters.begin(), result.report.clusters.end());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (drop[i]) {
      ++result.report.removed;
    } else {
      result.dataset.pieces.push_back(dataset.pieces[i]);
    }
  }
  result.report.retained = result.dataset.size();
  return result;
}

}  // namespace dualemo
