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

#include "dualemo/synth.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <span>

#include "dualemo/error.hpp"
#include "dualemo/random.hpp"

namespace dualemo {

namespace {

constexpr std::array<const char*, 10> kAngryWords{"angry",  "furious", "outrage", "outraged", "rage",
                                                  "mad",    "annoyed", "betray",  "scandal",  "disgrace"};
constexpr std::array<const char*, 10> kHappyWords{"happy",   "joyful",    "glad",  "delighted", "ecstatic",
                                                  "celebrate", "wonderful", "cheer", "smile",     "love"};
constexpr std::array<const char*, 24> kFiller{
    "the",    "city",  "council", "report", "weather", "road",   "market", "today",
    "people", "said",  "on",      "at",     "in",      "street", "school", "bridge",
    "team",   "river", "week",    "local",  "update",  "price",  "water",  "park"};
constexpr std::array<const char*, 4> kDegree{"very", "so", "really", "extremely"};
constexpr std::array<const char*, 5> kTails{"", "", "!", "?", " :)"};

template <std::size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& words) {
  return words[static_cast<std::size_t>(rng.below(N))];
}

std::string sentence(Rng& rng, const std::string& emotion, std::size_t filler, std::size_t hits) {
  std::vector<std::string> words;
  for (std::size_t i = 0; i < filler; ++i) words.emplace_back(pick(rng, kFiller));
  for (std::size_t h = 0; h < hits; ++h) {
    std::string word;
    if (emotion == "angry") {
      word = pick(rng, kAngryWords);
    } else if (emotion == "happy") {
      word = pick(rng, kHappyWords);
    } else {
      throw ArgumentError("synthetic corpus supports angry, happy and none, not " + emotion);
    }
    if (rng.bernoulli(0.3)) word = std::string(pick(rng, kDegree)) + " " + word;
    const std::size_t at = static_cast<std::size_t>(rng.below(words.size() + 1));
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), word);
  }
  std::string text;
  for (const auto& w : words) {
    if (!text.empty()) text += ' ';
    text += w;
  }
  return text + pick(rng, kTails);
}

std::string text_for(Rng& rng, const std::string& emotion, std::size_t min_filler, std::size_t max_filler) {
  const std::size_t filler = min_filler + static_cast<std::size_t>(rng.below(max_filler - min_filler + 1));
  const std::size_t hits = emotion == "none" ? 0 : 1 + static_cast<std::size_t>(rng.below(3));
  return sentence(rng, emotion, filler, hits);
}

const PlantedPair& draw_pair(Rng& rng, const std::vector<PlantedPair>& pairs) {
  double u = rng.uniform();
  for (const auto& pair : pairs) {
    if (u < pair.probability) return pair;
    u -= pair.probability;
  }
  return pairs.back();
}

void check_pairs(const std::vector<PlantedPair>& pairs) {
  if (pairs.empty()) throw ArgumentError("synthetic corpus: empty category distribution");
  double total = 0.0;
  for (const auto& pair : pairs) {
    if (pair.probability < 0.0) throw ArgumentError("synthetic corpus: negative probability");
    total += pair.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ArgumentError("synthetic corpus: probabilities must sum to 1");
}

}  // namespace

Dataset synthesize_corpus(const SynthConfig& config) {
  check_pairs(config.fake);
  check_pairs(config.real);
  if (config.min_comments > config.max_comments) {
    throw ArgumentError("synthetic corpus: min_comments exceeds max_comments");
  }
  Rng rng(config.seed);
  std::vector<Veracity> labels(config.pieces, Veracity::kReal);
  for (std::size_t i = 0; i < config.pieces / 2; ++i) labels[i] = Veracity::kFake;
  rng.shuffle(std::span(labels));

  Dataset dataset;
  dataset.pieces.reserve(config.pieces);
  const std::int64_t base = 1600000000;
  for (std::size_t i = 0; i < config.pieces; ++i) {
    const PlantedPair& pair = draw_pair(rng, labels[i] == Veracity::kFake ? config.fake : config.real);
    NewsPiece piece;
    char id[32];
    std::snprintf(id, sizeof id, "syn%05zu", i);
    piece.id = id;
    piece.label = labels[i];
    piece.language = Language::kEnglish;
    piece.timestamp = base + static_cast<std::int64_t>(i) * 3600 + static_cast<std::int64_t>(rng.below(1800));
    piece.content = text_for(rng, pair.publisher, 6, 14);

    const std::size_t count =
        config.min_comments + static_cast<std::size_t>(rng.below(config.max_comments - config.min_comments + 1));
    // At most a third of the comments are neutral, so the soft-voted
    // social category stays the planted one.
    const std::size_t neutral = pair.social == "none" ? count : static_cast<std::size_t>(rng.below(count / 3 + 1));
    std::vector<char> is_neutral(count, 0);
    for (std::size_t c = 0; c < neutral; ++c) is_neutral[c] = 1;
    rng.shuffle(std::span(is_neutral));
    std::int64_t when = *piece.timestamp;
    for (std::size_t c = 0; c < count; ++c) {
      when += 1 + static_cast<std::int64_t>(rng.below(600));
      piece.comments.push_back({text_for(rng, is_neutral[c] ? "none" : pair.social, 2, 8), when});
    }
    dataset.pieces.push_back(std::move(piece));
  }
  return dataset;
}

}  // namespace dualemo
