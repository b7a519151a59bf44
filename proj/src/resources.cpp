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

#include "dualemo/resources.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dualemo/error.hpp"
#include "dualemo/utf8.hpp"

namespace dualemo {
namespace fs = std::filesystem;

Language parse_language(std::string_view code) {
  if (code == "en") return Language::kEnglish;
  if (code == "zh") return Language::kChinese;
  throw ArgumentError("unknown language code: " + std::string(code));
}

std::string_view language_code(Language language) {
  return language == Language::kEnglish ? "en" : "zh";
}

std::optional<EmoticonClass> parse_emoticon_class(std::string_view name) {
  if (name == "happy") return EmoticonClass::kHappy;
  if (name == "angry") return EmoticonClass::kAngry;
  if (name == "surprised") return EmoticonClass::kSurprised;
  if (name == "sad") return EmoticonClass::kSad;
  if (name == "neutral") return EmoticonClass::kNeutral;
  return std::nullopt;
}

std::optional<Person> parse_person(std::string_view name) {
  if (name == "first") return Person::kFirst;
  if (name == "second") return Person::kSecond;
  if (name == "third") return Person::kThird;
  return std::nullopt;
}

namespace {

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

// Tab-separated rows with comments and blank lines removed. A trailing
// carriage return is stripped so files edited on Windows still load.
std::vector<Row> read_rows(const fs::path& path, std::string_view missing_message) {
  std::ifstream in(path);
  if (!in) throw LoadError(std::string(missing_message) + " (" + path.string() + ")");
  std::vector<Row> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    Row row{number, {}};
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      row.fields.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void fail(const fs::path& path, std::size_t line, const std::string& what) {
  throw LoadError(path.filename().string() + ":" + std::to_string(line) + ": " + what);
}

double parse_real(const fs::path& path, const Row& row, const std::string& text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    fail(path, row.line, "malformed number '" + text + "'");
  }
  return value;
}

void expect_fields(const fs::path& path, const Row& row, std::size_t min, std::size_t max) {
  if (row.fields.size() < min || row.fields.size() > max) {
    fail(path, row.line, "expected " + std::to_string(min) +
                             (min == max ? "" : "-" + std::to_string(max)) + " fields, got " +
                             std::to_string(row.fields.size()));
  }
  for (const auto& f : row.fields) {
    if (f.empty()) fail(path, row.line, "empty field");
  }
}

}  // namespace

ValidationReport validate_resources(const ResourceData& data) {
  ValidationReport report;
  auto& v = report.violations;
  if (data.emotions.empty()) v.push_back("emotion list is empty");
  std::unordered_set<std::string> seen;
  for (const auto& e : data.emotions) {
    if (!seen.insert(e).second) v.push_back("duplicate emotion '" + e + "'");
  }
  if (data.emotion_lexicon.size() != data.emotions.size()) {
    v.push_back("emotion lexicon has " + std::to_string(data.emotion_lexicon.size()) +
                " entries for " + std::to_string(data.emotions.size()) + " emotions");
  }
  std::vector<std::string> intensity_words;
  for (const auto& [word, _] : data.intensity) intensity_words.push_back(word);
  std::sort(intensity_words.begin(), intensity_words.end());
  for (const auto& word : intensity_words) {
    for (const auto& [emotion, score] : data.intensity.at(word)) {
      if (emotion >= data.emotion_lexicon.size()) {
        v.push_back("intensity for '" + word + "' refers to unknown emotion index " +
                    std::to_string(emotion));
        continue;
      }
      if (!data.emotion_lexicon[emotion].contains(word)) {
        v.push_back("intensity word '" + word + "' is not in the lexicon of emotion '" +
                    (emotion < data.emotions.size() ? data.emotions[emotion] : "?") + "'");
      }
      if (!(score >= 0.0 && score <= 1.0)) {
        v.push_back("intensity for '" + word + "' outside [0,1]");
      }
    }
  }
  for (const auto& [word, mult] : data.degree_words) {
    if (!(mult > 0.0) || !std::isfinite(mult)) {
      v.push_back("degree multiplier of '" + word + "' is not strictly positive");
    }
  }
  for (const auto& [word, value] : data.negation_words) {
    if (value == 0.0 || !std::isfinite(value)) {
      v.push_back("negation value of '" + word + "' is zero");
    }
  }
  for (const auto& [word, polarity] : data.sentiment_words) {
    (void)polarity;
    if (!data.sentiment_scores.contains(word)) {
      v.push_back("sentiment word '" + word + "' has no score");
    }
  }
  return report;
}

ResourceBundle::ResourceBundle(ResourceData data) : data_(std::move(data)) {
  ValidationReport report = validate_resources(data_);
  if (!report.ok()) {
    std::ostringstream msg;
    msg << "invalid resource bundle:";
    for (const auto& violation : report.violations) msg << "\n  " << violation;
    throw LoadError(msg.str());
  }
  for (std::size_t e = 0; e < data_.emotion_lexicon.size(); ++e) {
    for (const auto& word : data_.emotion_lexicon[e]) {
      word_emotions_[word].push_back(e);
      vocabulary_.insert(word);
    }
  }
  for (auto& [word, ids] : word_emotions_) std::sort(ids.begin(), ids.end());
  for (std::size_t p = 0; p < kPersonCount; ++p) {
    for (const auto& word : data_.pronouns[p]) {
      pronoun_index_.emplace(word, static_cast<Person>(p));
      vocabulary_.insert(word);
    }
  }
  for (const auto& [word, _] : data_.intensity) vocabulary_.insert(word);
  for (const auto& [word, _] : data_.sentiment_words) vocabulary_.insert(word);
  for (const auto& [word, _] : data_.negation_words) vocabulary_.insert(word);
  for (const auto& [word, _] : data_.degree_words) vocabulary_.insert(word);
  for (const auto& word : vocabulary_) {
    max_word_code_points_ = std::max(max_word_code_points_, utf8::count_code_points(word));
  }
  emoticons_by_length_ = data_.emoticons;
  std::sort(emoticons_by_length_.begin(), emoticons_by_length_.end(),
            [](const auto& a, const auto& b) {
              if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
              return a.first < b.first;
            });
}

std::optional<std::size_t> ResourceBundle::emotion_index(std::string_view name) const {
  auto it = std::find(data_.emotions.begin(), data_.emotions.end(), name);
  if (it == data_.emotions.end()) return std::nullopt;
  return static_cast<std::size_t>(it - data_.emotions.begin());
}

std::span<const std::size_t> ResourceBundle::emotions_of(const std::string& word) const {
  auto it = word_emotions_.find(word);
  if (it == word_emotions_.end()) return {};
  return it->second;
}

bool ResourceBundle::in_lexicon(const std::string& word, std::size_t emotion) const {
  return emotion < data_.emotion_lexicon.size() && data_.emotion_lexicon[emotion].contains(word);
}

double ResourceBundle::intensity(const std::string& word, std::size_t emotion) const {
  auto it = data_.intensity.find(word);
  if (it == data_.intensity.end()) return 0.0;
  auto jt = it->second.find(emotion);
  return jt == it->second.end() ? 0.0 : jt->second;
}

double ResourceBundle::negation(const std::string& word) const {
  auto it = data_.negation_words.find(word);
  return it == data_.negation_words.end() ? 1.0 : it->second;
}

double ResourceBundle::degree(const std::string& word) const {
  auto it = data_.degree_words.find(word);
  return it == data_.degree_words.end() ? 1.0 : it->second;
}

bool ResourceBundle::is_negation(const std::string& word) const {
  return data_.negation_words.contains(word);
}

bool ResourceBundle::is_degree(const std::string& word) const {
  return data_.degree_words.contains(word);
}

std::optional<Polarity> ResourceBundle::polarity(const std::string& word) const {
  auto it = data_.sentiment_words.find(word);
  if (it == data_.sentiment_words.end()) return std::nullopt;
  return it->second;
}

double ResourceBundle::sentiment_score(const std::string& word) const {
  auto it = data_.sentiment_scores.find(word);
  return it == data_.sentiment_scores.end() ? 0.0 : it->second;
}

std::optional<Person> ResourceBundle::pronoun(const std::string& word) const {
  auto it = pronoun_index_.find(word);
  if (it == pronoun_index_.end()) return std::nullopt;
  return it->second;
}

bool ResourceBundle::in_vocabulary(std::string_view word) const {
  return vocabulary_.contains(std::string(word));
}

ResourceBundle load_resources(const fs::path& dir, Language language) {
  ResourceData data;
  data.language = language;
  // English lookups are case-folded; Chinese has no case.
  auto norm = [&](const std::string& word) {
    return language == Language::kEnglish ? utf8::fold_case(word) : word;
  };

  const fs::path emotions_path = dir / "emotions.txt";
  for (const Row& row : read_rows(emotions_path, "emotion list not found")) {
    expect_fields(emotions_path, row, 1, 1);
    const std::string& name = row.fields[0];
    if (std::find(data.emotions.begin(), data.emotions.end(), name) != data.emotions.end()) {
      fail(emotions_path, row.line, "duplicate emotion '" + name + "'");
    }
    data.emotions.push_back(name);
  }
  if (data.emotions.empty()) throw LoadError(emotions_path.filename().string() + ": no emotions");
  data.emotion_lexicon.resize(data.emotions.size());
  auto emotion_id = [&](const fs::path& path, const Row& row, const std::string& name) {
    auto it = std::find(data.emotions.begin(), data.emotions.end(), name);
    if (it == data.emotions.end()) fail(path, row.line, "unknown emotion '" + name + "'");
    return static_cast<std::size_t>(it - data.emotions.begin());
  };

  const fs::path lexicon_path = dir / "lexicon.tsv";
  for (const Row& row : read_rows(lexicon_path, "emotion lexicon not found")) {
    expect_fields(lexicon_path, row, 2, 2);
    data.emotion_lexicon[emotion_id(lexicon_path, row, row.fields[0])].insert(norm(row.fields[1]));
  }

  const fs::path intensity_path = dir / "intensity.tsv";
  for (const Row& row : read_rows(intensity_path, "intensity dictionary not found")) {
    expect_fields(intensity_path, row, 3, 3);
    const std::string word = norm(row.fields[0]);
    const std::size_t e = emotion_id(intensity_path, row, row.fields[1]);
    const double score = parse_real(intensity_path, row, row.fields[2]);
    if (score < 0.0 || score > 1.0) fail(intensity_path, row.line, "intensity outside [0,1]");
    if (!data.emotion_lexicon[e].contains(word)) {
      fail(intensity_path, row.line,
           "intensity word '" + word + "' absent from the lexicon of '" + row.fields[1] + "'");
    }
    data.intensity[word][e] = score;
  }

  const fs::path sentiment_path = dir / "sentiment.tsv";
  for (const Row& row : read_rows(sentiment_path, "sentiment dictionary not found")) {
    expect_fields(sentiment_path, row, 2, 3);
    const std::string word = norm(row.fields[0]);
    Polarity polarity;
    if (row.fields[1] == "pos" || row.fields[1] == "positive") {
      polarity = Polarity::kPositive;
    } else if (row.fields[1] == "neg" || row.fields[1] == "negative") {
      polarity = Polarity::kNegative;
    } else {
      fail(sentiment_path, row.line, "polarity must be pos or neg");
    }
    double score = polarity == Polarity::kPositive ? 1.0 : -1.0;
    if (row.fields.size() == 3) score = parse_real(sentiment_path, row, row.fields[2]);
    if (!data.sentiment_words.emplace(word, polarity).second) {
      fail(sentiment_path, row.line, "duplicate sentiment word '" + word + "'");
    }
    data.sentiment_scores[word] = score;
  }

  const fs::path negation_path = dir / "negation.txt";
  for (const Row& row : read_rows(negation_path, "negation word list not found")) {
    expect_fields(negation_path, row, 1, 2);
    double value = row.fields.size() == 2 ? parse_real(negation_path, row, row.fields[1]) : -1.0;
    if (value == 0.0) fail(negation_path, row.line, "negation value must be nonzero");
    data.negation_words[norm(row.fields[0])] = value;
  }

  const fs::path degree_path = dir / "degree.tsv";
  for (const Row& row : read_rows(degree_path, "degree word list not found")) {
    expect_fields(degree_path, row, 2, 2);
    double mult = parse_real(degree_path, row, row.fields[1]);
    if (!(mult > 0.0)) fail(degree_path, row.line, "degree multiplier must be positive");
    data.degree_words[norm(row.fields[0])] = mult;
  }

  const fs::path emoticon_path = dir / "emoticons.tsv";
  std::unordered_set<std::string> seen_emoticons;
  for (const Row& row : read_rows(emoticon_path, "emoticon table not found")) {
    expect_fields(emoticon_path, row, 2, 2);
    auto cls = parse_emoticon_class(row.fields[1]);
    if (!cls) fail(emoticon_path, row.line, "unknown emoticon class '" + row.fields[1] + "'");
    if (!seen_emoticons.insert(row.fields[0]).second) {
      fail(emoticon_path, row.line, "duplicate emoticon '" + row.fields[0] + "'");
    }
    // Emoticons are matched on raw text, so their case is kept.
    data.emoticons.emplace_back(row.fields[0], *cls);
  }

  const fs::path pronoun_path = dir / "pronouns.tsv";
  for (const Row& row : read_rows(pronoun_path, "pronoun list not found")) {
    expect_fields(pronoun_path, row, 2, 2);
    auto person = parse_person(row.fields[1]);
    if (!person) fail(pronoun_path, row.line, "unknown person '" + row.fields[1] + "'");
    data.pronouns[static_cast<std::size_t>(*person)].insert(norm(row.fields[0]));
  }

  return ResourceBundle(std::move(data));
}

}  // namespace dualemo
