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

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dualemo/resources.hpp"

namespace dualemo {

// Lexicon-matchable word tokens. Standalone punctuation and emoticons are
// never tokens, so size() is the text length L used for frequencies.
struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t length() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens[i]; }
};

struct SurfaceStats {
  // Indexed by EmoticonClass.
  std::array<std::size_t, kEmoticonClassCount> emoticon_counts{};
  std::size_t exclamation = 0;
  std::size_t question = 0;
  std::size_t ellipsis = 0;
  // ASCII uppercase letters in the raw text; always 0 for Chinese.
  std::size_t uppercase_letters = 0;
  // Code points in the raw text, whitespace included.
  std::size_t char_count = 0;
};

// English: split on whitespace and punctuation (apostrophes inside words
// are kept), ASCII case-folded. Chinese: greedy forward maximum match
// against the bundle vocabulary with single-character fallback; ASCII
// alphanumeric runs stay whole. Emoticons are removed first.
TokenSequence tokenize(std::string_view text, const ResourceBundle& bundle);

// Same, but throws ArgumentError when `language` differs from the bundle's.
TokenSequence tokenize(std::string_view text, Language language, const ResourceBundle& bundle);

// Emoticons are matched longest first on the raw text; punctuation is
// counted outside emoticon matches, with full-width variants folded in and
// "..." counted per non-overlapping run of three dots.
SurfaceStats scan_surface(std::string_view text, const ResourceBundle& bundle);

}  // namespace dualemo
