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

#include "dualemo/features.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "dualemo/error.hpp"
#include "dualemo/simd.hpp"

namespace dualemo {

std::size_t ClassifierAdapter::output_dim(const ResourceBundle& bundle) const {
  return mode == CategoryMode::kLexiconVote ? bundle.emotion_count() + 1 : dim;
}

std::vector<std::string> ClassifierAdapter::category_labels(const ResourceBundle& bundle) const {
  if (mode == CategoryMode::kLexiconVote) {
    std::vector<std::string> out = bundle.emotions();
    out.emplace_back(kNoneCategory);
    return out;
  }
  if (!labels.empty()) {
    if (labels.size() != dim) {
      throw DimensionError("classifier adapter has " + std::to_string(labels.size()) +
                           " labels for dimension " + std::to_string(dim));
    }
    return labels;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back("c" + std::to_string(i));
  return out;
}

FeatureConfig FeatureConfig::published(Language language) {
  FeatureConfig config;
  config.category.mode = CategoryMode::kPrecomputed;
  if (language == Language::kEnglish) {
    config.category.dim = 16;
    config.sentiment = {SentimentMode::kPrecomputed, 4};
  } else {
    config.category.dim = 8;
    config.sentiment = {SentimentMode::kBuiltin, 1};
  }
  return config;
}

std::size_t auxiliary_dim(Language language) {
  return language == Language::kEnglish ? 16 : 15;
}

FeatureLayout feature_layout(const ResourceBundle& bundle, const FeatureConfig& config) {
  FeatureLayout layout;
  layout.category = config.category.output_dim(bundle);
  layout.lexicon = bundle.emotion_count();
  layout.intensity = bundle.emotion_count();
  layout.sentiment = config.sentiment.output_dim();
  layout.auxiliary = auxiliary_dim(bundle.language());
  return layout;
}

std::span<const double> EmotionVector::category() const {
  return std::span(values).subspan(0, layout.category);
}
std::span<const double> EmotionVector::lexicon() const {
  return std::span(values).subspan(layout.category, layout.lexicon);
}
std::span<const double> EmotionVector::intensity() const {
  return std::span(values).subspan(layout.category + layout.lexicon, layout.intensity);
}
std::span<const double> EmotionVector::sentiment() const {
  return std::span(values).subspan(layout.category + layout.lexicon + layout.intensity,
                                   layout.sentiment);
}
std::span<const double> EmotionVector::auxiliary() const {
  return std::span(values).subspan(layout.total() - layout.auxiliary, layout.auxiliary);
}

std::vector<double> SocialEmotionVector::concatenated() const {
  std::vector<double> out(mean_pool);
  out.insert(out.end(), max_pool.begin(), max_pool.end());
  return out;
}

std::vector<double> DualEmotionVector::flat() const {
  std::vector<double> out;
  out.reserve(publisher.dim() * 5);
  out.insert(out.end(), publisher.values.begin(), publisher.values.end());
  out.insert(out.end(), social.mean_pool.begin(), social.mean_pool.end());
  out.insert(out.end(), social.max_pool.begin(), social.max_pool.end());
  out.insert(out.end(), gap.begin(), gap.end());
  return out;
}

namespace {

// Product of negation and degree values over the left context window.
double modifier_product(const TokenSequence& tokens, std::size_t i, const ResourceBundle& bundle,
                        std::size_t window) {
  const std::size_t begin = i >= window ? i - window : 0;
  double neg = 1.0;
  double deg = 1.0;
  for (std::size_t j = begin; j < i; ++j) {
    neg *= bundle.negation(tokens[j]);
    deg *= bundle.degree(tokens[j]);
  }
  return neg * deg;
}

}  // namespace

double word_emotion_score(const TokenSequence& tokens, std::size_t i, std::size_t emotion,
                          const ResourceBundle& bundle, std::size_t window) {
  if (i >= tokens.length()) {
    throw ArgumentError("word_emotion_score: index " + std::to_string(i) + " out of range for " +
                        std::to_string(tokens.length()) + " tokens");
  }
  if (emotion >= bundle.emotion_count()) {
    throw ArgumentError("word_emotion_score: unknown emotion index " + std::to_string(emotion));
  }
  if (!bundle.in_lexicon(tokens[i], emotion)) return 0.0;
  return modifier_product(tokens, i, bundle, window) / static_cast<double>(tokens.length());
}

std::vector<double> lexicon_features(const TokenSequence& tokens, const ResourceBundle& bundle,
                                     std::size_t window) {
  std::vector<double> out(bundle.emotion_count(), 0.0);
  const auto length = static_cast<double>(tokens.length());
  for (std::size_t i = 0; i < tokens.length(); ++i) {
    auto emotions = bundle.emotions_of(tokens[i]);
    if (emotions.empty()) continue;
    const double score = modifier_product(tokens, i, bundle, window) / length;
    for (std::size_t e : emotions) out[e] += score;
  }
  return out;
}

std::vector<double> intensity_features(const TokenSequence& tokens, const ResourceBundle& bundle,
                                       std::size_t window) {
  std::vector<double> out(bundle.emotion_count(), 0.0);
  const auto length = static_cast<double>(tokens.length());
  for (std::size_t i = 0; i < tokens.length(); ++i) {
    auto emotions = bundle.emotions_of(tokens[i]);
    if (emotions.empty()) continue;
    const double score = modifier_product(tokens, i, bundle, window) / length;
    for (std::size_t e : emotions) out[e] += bundle.intensity(tokens[i], e) * score;
  }
  return out;
}

std::vector<double> sentiment_score(const TokenSequence& tokens, const ResourceBundle& bundle,
                                    const SentimentAdapter& adapter,
                                    std::optional<std::span<const double>> external) {
  if (adapter.mode == SentimentMode::kPrecomputed) {
    if (!external) throw ArgumentError("precomputed sentiment requested but none supplied");
    if (external->size() != adapter.dim) {
      throw DimensionError("sentiment vector has dimension " + std::to_string(external->size()) +
                           ", expected " + std::to_string(adapter.dim));
    }
    return {external->begin(), external->end()};
  }
  if (tokens.empty()) return {0.0};
  double sum = 0.0;
  for (const auto& token : tokens.tokens) sum += bundle.sentiment_score(token);
  return {sum / static_cast<double>(tokens.length())};
}

std::vector<double> auxiliary_features(const TokenSequence& tokens, const SurfaceStats& surface,
                                       const ResourceBundle& bundle) {
  const bool english = bundle.language() == Language::kEnglish;
  std::vector<double> out(auxiliary_dim(bundle.language()), 0.0);
  if (surface.char_count > 0) {
    const auto chars = static_cast<double>(surface.char_count);
    for (std::size_t c = 0; c < kEmoticonClassCount; ++c) {
      out[c] = static_cast<double>(surface.emoticon_counts[c]) / chars;
    }
    out[5] = static_cast<double>(surface.exclamation) / chars;
    out[6] = static_cast<double>(surface.question) / chars;
    out[7] = static_cast<double>(surface.ellipsis) / chars;
    if (english) out[15] = static_cast<double>(surface.uppercase_letters) / chars;
  }
  if (!tokens.empty()) {
    std::size_t positive = 0, negative = 0, degree = 0, negation = 0;
    std::array<std::size_t, kPersonCount> persons{};
    for (const auto& token : tokens.tokens) {
      if (auto p = bundle.polarity(token)) {
        (*p == Polarity::kPositive ? positive : negative) += 1;
      }
      if (bundle.is_degree(token)) ++degree;
      if (bundle.is_negation(token)) ++negation;
      if (auto person = bundle.pronoun(token)) ++persons[static_cast<std::size_t>(*person)];
    }
    const auto length = static_cast<double>(tokens.length());
    out[8] = static_cast<double>(positive) / length;
    out[9] = static_cast<double>(negative) / length;
    out[10] = static_cast<double>(degree) / length;
    out[11] = static_cast<double>(negation) / length;
    for (std::size_t p = 0; p < kPersonCount; ++p) {
      out[12 + p] = static_cast<double>(persons[p]) / length;
    }
  }
  return out;
}

std::vector<double> normalize_probabilities(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw ArgumentError("probability vector has a negative or non-finite entry");
    }
    sum += p;
  }
  if (!(sum > 0.0)) throw ArgumentError("probability vector sums to zero");
  std::vector<double> out(probs.begin(), probs.end());
  if (sum == 1.0) return out;
  if (std::abs(sum - 1.0) > 1e-6) {
    std::cerr << "warning: classifier probabilities sum to " << sum << "; renormalizing\n";
  }
  for (double& p : out) p /= sum;
  return out;
}

std::vector<double> emotion_category(const TokenSequence& tokens, const ResourceBundle& bundle,
                                     const ClassifierAdapter& adapter,
                                     std::optional<std::span<const double>> precomputed) {
  if (adapter.mode == CategoryMode::kPrecomputed) {
    if (!precomputed) throw ArgumentError("precomputed emotion probabilities missing");
    if (precomputed->size() != adapter.dim) {
      throw DimensionError("emotion probability vector has dimension " +
                           std::to_string(precomputed->size()) + ", expected " +
                           std::to_string(adapter.dim));
    }
    return normalize_probabilities(*precomputed);
  }
  const std::size_t emotions = bundle.emotion_count();
  std::vector<double> out(emotions + 1, 0.0);
  std::size_t hits = 0;
  for (const auto& token : tokens.tokens) {
    for (std::size_t e : bundle.emotions_of(token)) {
      out[e] += 1.0;
      ++hits;
    }
  }
  if (hits == 0) {
    out[emotions] = 1.0;
    return out;
  }
  for (std::size_t e = 0; e < emotions; ++e) out[e] /= static_cast<double>(hits);
  return out;
}

EmotionVector publisher_emotion(const ScoredText& text, const ResourceBundle& bundle,
                                const FeatureConfig& config) {
  const TokenSequence tokens = tokenize(text.text, bundle);
  const SurfaceStats surface = scan_surface(text.text, bundle);
  EmotionVector vec;
  vec.layout = feature_layout(bundle, config);
  vec.values.reserve(vec.layout.total());
  auto append = [&](const std::vector<double>& part, std::size_t expected) {
    if (part.size() != expected) throw DimensionError("feature segment has unexpected dimension");
    vec.values.insert(vec.values.end(), part.begin(), part.end());
  };
  append(emotion_category(tokens, bundle, config.category, text.category_probs),
         vec.layout.category);
  append(lexicon_features(tokens, bundle, config.window), vec.layout.lexicon);
  append(intensity_features(tokens, bundle, config.window), vec.layout.intensity);
  append(sentiment_score(tokens, bundle, config.sentiment, text.sentiment), vec.layout.sentiment);
  append(auxiliary_features(tokens, surface, bundle), vec.layout.auxiliary);
  return vec;
}

SocialEmotionVector pool_emotions(std::span<const std::vector<double>> rows, std::size_t dim) {
  SocialEmotionVector social;
  social.mean_pool.assign(dim, 0.0);
  social.max_pool.assign(dim, 0.0);
  social.pooled = rows.size();
  if (rows.empty()) return social;
  for (const auto& row : rows) {
    if (row.size() != dim) throw DimensionError("pool_emotions: ragged rows");
  }
  social.max_pool = rows.front();
  social.mean_pool = rows.front();
  // Running mean: identical rows pool to exactly that row.
  for (std::size_t k = 1; k < rows.size(); ++k) {
    simd::max(rows[k], social.max_pool);
    simd::mean_update(rows[k], social.mean_pool, static_cast<double>(k + 1));
  }
  return social;
}

SocialEmotionVector social_emotion(std::span<const ScoredText> comments,
                                   const ResourceBundle& bundle, const FeatureConfig& config) {
  std::vector<std::size_t> order(comments.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return comments[a].timestamp < comments[b].timestamp;
  });
  if (order.size() > config.comments_limit) order.resize(config.comments_limit);
  std::vector<std::vector<double>> rows;
  rows.reserve(order.size());
  for (std::size_t idx : order) {
    rows.push_back(publisher_emotion(comments[idx], bundle, config).values);
  }
  return pool_emotions(rows, feature_layout(bundle, config).total());
}

std::vector<double> emotion_gap(std::span<const double> publisher,
                                const SocialEmotionVector& social) {
  const std::size_t d = publisher.size();
  if (social.mean_pool.size() != d || social.max_pool.size() != d) {
    throw DimensionError("emotion_gap: publisher has dimension " + std::to_string(d) +
                         " but social pools have " + std::to_string(social.mean_pool.size()) +
                         "/" + std::to_string(social.max_pool.size()));
  }
  std::vector<double> gap(2 * d);
  simd::sub(publisher, social.mean_pool, std::span(gap).subspan(0, d));
  simd::sub(publisher, social.max_pool, std::span(gap).subspan(d, d));
  return gap;
}

ScoredText content_view(const NewsPiece& piece) {
  ScoredText view;
  view.text = piece.content;
  view.timestamp = piece.timestamp.value_or(0);
  if (piece.publisher_emotion_probs) view.category_probs = std::span(*piece.publisher_emotion_probs);
  if (piece.publisher_sentiment) view.sentiment = std::span(*piece.publisher_sentiment);
  return view;
}

std::vector<ScoredText> comment_views(const NewsPiece& piece) {
  std::vector<ScoredText> views;
  views.reserve(piece.comments.size());
  for (std::size_t i = 0; i < piece.comments.size(); ++i) {
    ScoredText view;
    view.text = piece.comments[i].text;
    view.timestamp = piece.comments[i].timestamp;
    if (piece.comment_emotion_probs) view.category_probs = std::span((*piece.comment_emotion_probs)[i]);
    if (piece.comment_sentiments) view.sentiment = std::span((*piece.comment_sentiments)[i]);
    views.push_back(view);
  }
  return views;
}

DualEmotionVector dual_emotion_features(const NewsPiece& piece, const ResourceBundle& bundle,
                                        const FeatureConfig& config) {
  if (piece.language != bundle.language()) {
    throw ArgumentError("piece " + piece.id + " is " + std::string(language_code(piece.language)) +
                        " but resources are " + std::string(language_code(bundle.language())));
  }
  if (piece.comment_emotion_probs && piece.comment_emotion_probs->size() != piece.comments.size()) {
    throw DimensionError("piece " + piece.id + ": comment probabilities misaligned");
  }
  if (piece.comment_sentiments && piece.comment_sentiments->size() != piece.comments.size()) {
    throw DimensionError("piece " + piece.id + ": comment sentiments misaligned");
  }
  DualEmotionVector dual;
  dual.publisher = publisher_emotion(content_view(piece), bundle, config);
  const std::vector<ScoredText> comments = comment_views(piece);
  dual.social = social_emotion(comments, bundle, config);
  dual.gap = emotion_gap(dual.publisher.values, dual.social);
  return dual;
}

double emoratio(const TokenSequence& tokens, const ResourceBundle& bundle) {
  std::size_t positive = 0, negative = 0;
  for (const auto& token : tokens.tokens) {
    if (auto p = bundle.polarity(token)) (*p == Polarity::kPositive ? positive : negative) += 1;
  }
  return static_cast<double>(negative + 1) / static_cast<double>(positive + 1);
}

std::vector<double> emocred_features(const TokenSequence& tokens, const ResourceBundle& bundle) {
  const std::size_t emotions = bundle.emotion_count();
  std::vector<double> out(2 * emotions, 0.0);
  if (tokens.empty()) return out;
  std::vector<std::size_t> counts(emotions, 0);
  std::vector<double> weighted(emotions, 0.0);
  for (const auto& token : tokens.tokens) {
    for (std::size_t e : bundle.emotions_of(token)) {
      ++counts[e];
      weighted[e] += bundle.intensity(token, e);
    }
  }
  const auto length = static_cast<double>(tokens.length());
  for (std::size_t e = 0; e < emotions; ++e) {
    out[e] = static_cast<double>(counts[e]) / length;
    out[emotions + e] = weighted[e] / length;
  }
  return out;
}

}  // namespace dualemo
