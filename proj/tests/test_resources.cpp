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

#include "dualemo/error.hpp"
#include "dualemo/resources.hpp"
#include "support.hpp"

using namespace dualemo;
namespace fs = std::filesystem;

namespace {

fs::path copy_resources(const std::string& name, Language lang) {
  const fs::path dir = testing::scratch_dir(name);
  fs::copy(testing::resource_dir(lang), dir, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  return dir;
}

void append(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::app);
  out << text;
}

std::string load_error(const fs::path& dir) {
  try {
    load_resources(dir, Language::kEnglish);
  } catch (const LoadError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("shipped English bundle") {
  const auto& b = testing::bundle(Language::kEnglish);
  CHECK(b.emotion_count() == 8);
  CHECK(b.emotions().front() == "angry");
  const auto happy = *b.emotion_index("happy");
  CHECK(b.in_lexicon("joyful", happy));
  CHECK(b.intensity("joyful", happy) == doctest::Approx(0.6));
  CHECK(b.intensity("celebrate", happy) == 0.0);
  CHECK(b.negation("not") == -1.0);
  CHECK(b.negation("table") == 1.0);
  CHECK(b.degree("very") == 2.0);
  CHECK(b.degree("table") == 1.0);
  CHECK(b.is_negation("never"));
  CHECK_FALSE(b.is_degree("not"));
  CHECK(b.polarity("good") == Polarity::kPositive);
  CHECK(b.polarity("bad") == Polarity::kNegative);
  CHECK_FALSE(b.polarity("table").has_value());
  CHECK(b.sentiment_score("excellent") == 1.5);
  CHECK(b.sentiment_score("good") == 1.0);
  CHECK(b.pronoun("we") == Person::kFirst);
  CHECK(b.pronoun("you") == Person::kSecond);
  CHECK(b.pronoun("they") == Person::kThird);
  // Longest emoticons first.
  const auto& emo = b.emoticons();
  for (std::size_t i = 1; i < emo.size(); ++i) CHECK(emo[i - 1].first.size() >= emo[i].first.size());
}

TEST_CASE("shipped Chinese bundle") {
  const auto& b = testing::bundle(Language::kChinese);
  CHECK(b.emotion_count() == 21);
  CHECK(b.language() == Language::kChinese);
  CHECK(b.in_vocabulary("开心"));
  CHECK(b.negation("不") == -1.0);
  CHECK(b.degree("非常") == 2.5);
  CHECK(b.max_word_code_points() >= 2);
}

TEST_CASE("missing files are named in the error") {
  const auto dir = copy_resources("res_missing", Language::kEnglish);
  fs::remove(dir / "negation.txt");
  const std::string message = load_error(dir);
  CHECK(message.find("negation word list not found") != std::string::npos);
  CHECK(message.find("negation.txt") != std::string::npos);
}

TEST_CASE("malformed rows report file and line") {
  const auto dir = copy_resources("res_malformed", Language::kEnglish);
  {
    std::ofstream out(dir / "degree.tsv");
    out << "# header\nvery\t2\nslightly\tlots\n";
  }
  CHECK(load_error(dir).find("degree.tsv:3: malformed number 'lots'") != std::string::npos);
}

TEST_CASE("duplicate emotion names are rejected") {
  const auto dir = copy_resources("res_duplicate", Language::kEnglish);
  append(dir / "emotions.txt", "happy\n");
  CHECK(load_error(dir).find("duplicate emotion 'happy'") != std::string::npos);
}

TEST_CASE("intensity words must be in the lexicon") {
  const auto dir = copy_resources("res_intensity", Language::kEnglish);
  append(dir / "intensity.tsv", "banana\thappy\t0.5\n");
  const std::string message = load_error(dir);
  CHECK(message.find("intensity.tsv") != std::string::npos);
  CHECK(message.find("banana") != std::string::npos);
}

TEST_CASE("English words are case-folded at load time") {
  const auto dir = copy_resources("res_case", Language::kEnglish);
  append(dir / "lexicon.tsv", "happy\tHooray\n");
  const auto b = load_resources(dir, Language::kEnglish);
  CHECK(b.in_lexicon("hooray", *b.emotion_index("happy")));
}

TEST_CASE("validate_resources lists violations of hand-built data") {
  ResourceData data;
  data.emotions = {"a", "a"};
  data.emotion_lexicon.resize(2);
  data.intensity["w"][0] = 2.0;
  data.degree_words["x"] = 0.0;
  const auto report = validate_resources(data);
  CHECK_FALSE(report.ok());
  CHECK(report.violations.size() >= 3);
  CHECK_THROWS_AS(ResourceBundle{data}, LoadError);
}

TEST_CASE("language codes") {
  CHECK(parse_language("en") == Language::kEnglish);
  CHECK(parse_language("zh") == Language::kChinese);
  CHECK_THROWS_AS(parse_language("fr"), ArgumentError);
  CHECK(language_code(Language::kChinese) == "zh");
}
