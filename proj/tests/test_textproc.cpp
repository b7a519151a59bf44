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

#include <random>
#include <sstream>

#include "dualemo/error.hpp"
#include "dualemo/textproc.hpp"
#include "dualemo/utf8.hpp"
#include "support.hpp"

using namespace dualemo;

namespace {

const ResourceBundle& en() { return testing::bundle(Language::kEnglish); }
const ResourceBundle& zh() { return testing::bundle(Language::kChinese); }

std::vector<std::string> words(const TokenSequence& seq) { return seq.tokens; }

}  // namespace

TEST_CASE("English tokenization") {
  CHECK(tokenize("I am not very joyful today", en()).length() == 6);
  CHECK(words(tokenize("I am not very joyful today", en())) ==
        std::vector<std::string>{"i", "am", "not", "very", "joyful", "today"});
  CHECK(tokenize("", en()).empty());
  CHECK(words(tokenize("Don't STOP, now!", en())) == std::vector<std::string>{"don't", "stop", "now"});
  CHECK(words(tokenize("'quoted' words", en())) == std::vector<std::string>{"quoted", "words"});
  CHECK(words(tokenize("great :) day", en())) == std::vector<std::string>{"great", "day"});
  CHECK(words(tokenize("wait... what?!", en())) == std::vector<std::string>{"wait", "what"});
  CHECK_THROWS_AS(tokenize("x", Language::kChinese, en()), ArgumentError);
}

TEST_CASE("whitespace-split oracle on punctuation-free ASCII") {
  std::mt19937_64 gen(3);
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int n = static_cast<int>(gen() % 12);
    for (int w = 0; w < n; ++w) {
      if (w) text += std::string(1 + gen() % 3, ' ');
      const int len = 1 + static_cast<int>(gen() % 7);
      for (int c = 0; c < len; ++c) text += letters[gen() % letters.size()];
    }
    std::istringstream split(text);
    std::size_t count = 0;
    for (std::string w; split >> w;) ++count;
    CHECK(tokenize(text, en()).length() == count);
  }
}

TEST_CASE("English tokenization is idempotent under re-joining") {
  const std::string text = "Wow!! They didn't SEE it... :( so very SAD, honestly?";
  const auto first = tokenize(text, en());
  std::string joined;
  for (const auto& t : first.tokens) joined += t + " ";
  CHECK(tokenize(joined, en()).tokens == first.tokens);
}

TEST_CASE("Chinese forward maximum match") {
  CHECK(words(tokenize("我非常开心", zh())) == std::vector<std::string>{"我", "非常", "开心"});
  CHECK(words(tokenize("他们不快乐！", zh())) == std::vector<std::string>{"他们", "不", "快乐"});
  // Unknown characters fall back to single characters; ASCII runs stay whole.
  CHECK(words(tokenize("的ABC开心", zh())) == std::vector<std::string>{"的", "abc", "开心"});
  CHECK(words(tokenize("[哈哈]开心", zh())) == std::vector<std::string>{"开心"});
  CHECK(tokenize("", zh()).empty());
}

TEST_CASE("surface scan") {
  auto s = scan_surface("great :) !!", en());
  CHECK(s.emoticon_counts[static_cast<std::size_t>(EmoticonClass::kHappy)] == 1);
  CHECK(s.exclamation == 2);

  s = scan_surface("WHY?", en());
  CHECK(s.uppercase_letters == 3);
  CHECK(s.question == 1);
  CHECK(s.char_count == 4);

  s = scan_surface("bad :( really :(", en());
  CHECK(s.emoticon_counts[static_cast<std::size_t>(EmoticonClass::kSad)] == 2);

  s = scan_surface("well...... ok…", en());
  CHECK(s.ellipsis == 3);

  s = scan_surface("真的吗？！[哈哈]", zh());
  CHECK(s.question == 1);
  CHECK(s.exclamation == 1);
  CHECK(s.emoticon_counts[static_cast<std::size_t>(EmoticonClass::kHappy)] == 1);
  CHECK(s.char_count == 9);
  CHECK(s.uppercase_letters == 0);
}

TEST_CASE("longest emoticon wins") {
  // ">:(" is angry even though ":(" (sad) is a suffix.
  const auto s = scan_surface(">:(", en());
  CHECK(s.emoticon_counts[static_cast<std::size_t>(EmoticonClass::kAngry)] == 1);
  CHECK(s.emoticon_counts[static_cast<std::size_t>(EmoticonClass::kSad)] == 0);
}

TEST_CASE("surface counts are monotone under concatenation") {
  const std::vector<std::string> parts{"WOW! :)", "really?? ...", "sad :( T_T", "ok", "NO!!!"};
  for (const auto& a : parts) {
    for (const auto& b : parts) {
      const auto sa = scan_surface(a, en());
      const auto sab = scan_surface(a + " " + b, en());
      for (std::size_t c = 0; c < kEmoticonClassCount; ++c) CHECK(sab.emoticon_counts[c] >= sa.emoticon_counts[c]);
      CHECK(sab.exclamation >= sa.exclamation);
      CHECK(sab.question >= sa.question);
      CHECK(sab.ellipsis >= sa.ellipsis);
      CHECK(sab.uppercase_letters >= sa.uppercase_letters);
      CHECK(sab.uppercase_letters <= sab.char_count);
    }
  }
}

TEST_CASE("utf8 helpers") {
  CHECK(utf8::count_code_points("abc") == 3);
  CHECK(utf8::count_code_points("开心") == 2);
  CHECK(utf8::count_code_points("") == 0);
  CHECK(utf8::fold_case("AbC1") == "abc1");
  std::size_t pos = 0;
  CHECK(utf8::next("开", pos) == U'开');
  CHECK(pos == 3);
  CHECK(utf8::is_punct(U'！'));
  CHECK_FALSE(utf8::is_punct(U'开'));
}
