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

// Language-specific emotion resources: emotion lexicons, intensity and
// sentiment dictionaries, negation/degree modifiers, emoticons and pronouns.
//
// A resource directory holds eight UTF-8 text files (lines starting with
// '#' are comments):
//
//   emotions.txt    emotion name per line; file order fixes coordinate order
//   lexicon.tsv     emotion<TAB>word
//   intensity.tsv   word<TAB>emotion<TAB>score   (score in [0,1])
//   sentiment.tsv   word<TAB>pos|neg[<TAB>score]
//   negation.txt    word  or  word<TAB>value     (value defaults to -1)
//   degree.tsv      word<TAB>multiplier          (multiplier > 0)
//   emoticons.tsv   emoticon<TAB>happy|angry|surprised|sad|neutral
//   pronouns.tsv    word<TAB>first|second|third

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace dualemo {

enum class Language { kEnglish, kChinese };

Language parse_language(std::string_view code);
std::string_view language_code(Language language);

enum class Polarity { kPositive, kNegative };

// Order matches the emoticon rows of the auxiliary feature block.
enum class EmoticonClass { kHappy, kAngry, kSurprised, kSad, kNeutral };
inline constexpr std::size_t kEmoticonClassCount = 5;

enum class Person { kFirst, kSecond, kThird };
inline constexpr std::size_t kPersonCount = 3;

std::optional<EmoticonClass> parse_emoticon_class(std::string_view name);
std::optional<Person> parse_person(std::string_view name);

// Raw resource tables, exactly as loaded. Plain data so that invalid
// bundles can be assembled in tests and checked with validate_resources().
struct ResourceData {
  Language language = Language::kEnglish;
  std::vector<std::string> emotions;
  // Indexed like `emotions`.
  std::vector<std::unordered_set<std::string>> emotion_lexicon;
  // word -> emotion index -> intensity
  std::unordered_map<std::string, std::map<std::size_t, double>> intensity;
  std::unordered_map<std::string, Polarity> sentiment_words;
  std::unordered_map<std::string, double> sentiment_scores;
  std::unordered_map<std::string, double> negation_words;
  std::unordered_map<std::string, double> degree_words;
  std::vector<std::pair<std::string, EmoticonClass>> emoticons;
  std::array<std::unordered_set<std::string>, kPersonCount> pronouns;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_resources(const ResourceData& data);

// Immutable, validated resources with lookup indices. Safe to share
// between threads.
class ResourceBundle {
 public:
  // Throws LoadError listing every violation when `data` is invalid.
  explicit ResourceBundle(ResourceData data);

  const ResourceData& data() const { return data_; }
  Language language() const { return data_.language; }
  std::size_t emotion_count() const { return data_.emotions.size(); }
  const std::vector<std::string>& emotions() const { return data_.emotions; }
  std::optional<std::size_t> emotion_index(std::string_view name) const;

  // Emotion indices whose lexicon contains `word`, ascending.
  std::span<const std::size_t> emotions_of(const std::string& word) const;
  bool in_lexicon(const std::string& word, std::size_t emotion) const;
  // 0 when the word has no intensity entry for the emotion.
  double intensity(const std::string& word, std::size_t emotion) const;

  // Multiplicative modifiers; 1 for words not in the table.
  double negation(const std::string& word) const;
  double degree(const std::string& word) const;
  bool is_negation(const std::string& word) const;
  bool is_degree(const std::string& word) const;

  std::optional<Polarity> polarity(const std::string& word) const;
  // 0 for words without a sentiment entry.
  double sentiment_score(const std::string& word) const;
  std::optional<Person> pronoun(const std::string& word) const;

  // Emoticons sorted longest first (by bytes), ties lexicographic.
  const std::vector<std::pair<std::string, EmoticonClass>>& emoticons() const {
    return emoticons_by_length_;
  }

  // Union of all word lists, used for lexicon-driven segmentation.
  bool in_vocabulary(std::string_view word) const;
  std::size_t max_word_code_points() const { return max_word_code_points_; }

 private:
  ResourceData data_;
  std::unordered_map<std::string, std::vector<std::size_t>> word_emotions_;
  std::unordered_map<std::string, Person> pronoun_index_;
  std::vector<std::pair<std::string, EmoticonClass>> emoticons_by_length_;
  std::unordered_set<std::string> vocabulary_;
  std::size_t max_word_code_points_ = 0;
};

// Loads and validates a resource directory. Errors name the file and line.
ResourceBundle load_resources(const std::filesystem::path& dir, Language language);

}  // namespace dualemo
