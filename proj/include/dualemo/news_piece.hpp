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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualemo/resources.hpp"

namespace dualemo {

enum class Veracity { kFake, kReal, kUnverified };

std::optional<Veracity> parse_veracity(std::string_view name);
std::string_view veracity_name(Veracity veracity);

struct Comment {
  std::string text;
  std::int64_t timestamp = 0;
};

// One post with its comment stream. The optional vectors carry outputs of
// external models: emotion-classifier probabilities, sentiment-tool scores
// and a detector embedding to be concatenated at the classifier input.
struct NewsPiece {
  std::string id;
  std::string content;
  Language language = Language::kEnglish;
  std::optional<Veracity> label;
  std::optional<std::int64_t> timestamp;
  std::vector<Comment> comments;
  std::optional<std::vector<double>> publisher_emotion_probs;
  std::optional<std::vector<std::vector<double>>> comment_emotion_probs;
  std::optional<std::vector<double>> publisher_sentiment;
  std::optional<std::vector<std::vector<double>>> comment_sentiments;
  std::optional<std::vector<double>> detector_embedding;
};

}  // namespace dualemo
