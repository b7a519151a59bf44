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

// Publisher emotion, social emotion, emotion gap and the baseline feature
// sets. Every function here is pure given an immutable ResourceBundle.
//
// Publisher emotion layout (dimension d):
//   category (d_f) | lexicon (d_e) | intensity (d_e) | sentiment (d_s) | auxiliary (d_a)
// Dual emotion layout (dimension 5d):
//   publisher | social mean | social max | publisher - mean | publisher - max

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dualemo/news_piece.hpp"
#include "dualemo/resources.hpp"
#include "dualemo/textproc.hpp"

namespace dualemo {

enum class CategoryMode { kPrecomputed, kLexiconVote };
enum class SentimentMode { kBuiltin, kPrecomputed };

// Source of the emotion-category block. kPrecomputed consumes classifier
// probabilities stored with the text; kLexiconVote derives a distribution
// from lexicon hits over the bundle emotions plus a trailing "none".
struct ClassifierAdapter {
  CategoryMode mode = CategoryMode::kLexiconVote;
  // d_f in precomputed mode; ignored for lexicon votes (d_e + 1).
  std::size_t dim = 0;
  // Coordinate names in precomputed mode. Empty means c0, c1, ...
  std::vector<std::string> labels;

  std::size_t output_dim(const ResourceBundle& bundle) const;
  std::vector<std::string> category_labels(const ResourceBundle& bundle) const;
};

struct SentimentAdapter {
  SentimentMode mode = SentimentMode::kBuiltin;
  // d_s in precomputed mode; the built-in scorer is one-dimensional.
  std::size_t dim = 1;

  std::size_t output_dim() const { return mode == SentimentMode::kBuiltin ? 1 : dim; }
};

inline constexpr const char* kNoneCategory = "none";

struct FeatureConfig {
  std::size_t window = 2;
  std::size_t comments_limit = 100;
  ClassifierAdapter category;
  SentimentAdapter sentiment;

  // External-model dimensions used for the published configuration:
  // 16-way classifier and 4-way sentiment for English, 8-way classifier
  // and the built-in scorer for Chinese.
  static FeatureConfig published(Language language);
};

struct FeatureLayout {
  std::size_t category = 0;
  std::size_t lexicon = 0;
  std::size_t intensity = 0;
  std::size_t sentiment = 0;
  std::size_t auxiliary = 0;

  std::size_t total() const { return category + lexicon + intensity + sentiment + auxiliary; }
};

FeatureLayout feature_layout(const ResourceBundle& bundle, const FeatureConfig& config);

// d_a: 16 with the uppercase coordinate (English), 15 without.
std::size_t auxiliary_dim(Language language);

struct EmotionVector {
  FeatureLayout layout;
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  std::span<const double> category() const;
  std::span<const double> lexicon() const;
  std::span<const double> intensity() const;
  std::span<const double> sentiment() const;
  std::span<const double> auxiliary() const;
};

struct SocialEmotionVector {
  std::vector<double> mean_pool;
  std::vector<double> max_pool;
  // Number of comments that entered the pools.
  std::size_t pooled = 0;

  std::vector<double> concatenated() const;
};

struct DualEmotionVector {
  EmotionVector publisher;
  SocialEmotionVector social;
  std::vector<double> gap;

  std::vector<double> flat() const;
};

// Text with optional scores from external models.
struct ScoredText {
  std::string_view text;
  std::int64_t timestamp = 0;
  std::optional<std::span<const double>> category_probs;
  std::optional<std::span<const double>> sentiment;
};

// 1[t_i in lexicon(e)] * prod neg(t_j) * prod deg(t_j) / L over the `window`
// tokens left of i. Throws ArgumentError when i is out of range.
double word_emotion_score(const TokenSequence& tokens, std::size_t i, std::size_t emotion,
                          const ResourceBundle& bundle, std::size_t window);

std::vector<double> lexicon_features(const TokenSequence& tokens, const ResourceBundle& bundle,
                                     std::size_t window);
std::vector<double> intensity_features(const TokenSequence& tokens, const ResourceBundle& bundle,
                                       std::size_t window);

// Built-in mode: sum of sentiment scores / L. Precomputed mode: the
// external vector, checked against the adapter dimension.
std::vector<double> sentiment_score(const TokenSequence& tokens, const ResourceBundle& bundle,
                                    const SentimentAdapter& adapter,
                                    std::optional<std::span<const double>> external = {});

std::vector<double> auxiliary_features(const TokenSequence& tokens, const SurfaceStats& surface,
                                       const ResourceBundle& bundle);

std::vector<double> emotion_category(const TokenSequence& tokens, const ResourceBundle& bundle,
                                     const ClassifierAdapter& adapter,
                                     std::optional<std::span<const double>> precomputed = {});

// Scales a classifier output to sum 1. Negative, non-finite or all-zero
// inputs are rejected; a sum off by more than 1e-6 is logged.
std::vector<double> normalize_probabilities(std::span<const double> probs);

EmotionVector publisher_emotion(const ScoredText& text, const ResourceBundle& bundle,
                                const FeatureConfig& config);

// Componentwise mean and max over equally sized rows, folded left to right.
// No rows gives zero pools of length `dim`.
SocialEmotionVector pool_emotions(std::span<const std::vector<double>> rows, std::size_t dim);

// Pools over the `comments_limit` earliest comments (stable on ties).
SocialEmotionVector social_emotion(std::span<const ScoredText> comments,
                                   const ResourceBundle& bundle, const FeatureConfig& config);

std::vector<double> emotion_gap(std::span<const double> publisher, const SocialEmotionVector& social);

DualEmotionVector dual_emotion_features(const NewsPiece& piece, const ResourceBundle& bundle,
                                        const FeatureConfig& config);

// (negative sentiment words + 1) / (positive sentiment words + 1)
double emoratio(const TokenSequence& tokens, const ResourceBundle& bundle);

// Per-emotion lexicon frequency followed by per-emotion intensity-weighted
// frequency, without negation or degree modifiers.
std::vector<double> emocred_features(const TokenSequence& tokens, const ResourceBundle& bundle);

// Scored views of a piece's content and comments.
ScoredText content_view(const NewsPiece& piece);
std::vector<ScoredText> comment_views(const NewsPiece& piece);

}  // namespace dualemo
