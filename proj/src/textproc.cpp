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

#include "dualemo/textproc.hpp"

#include <algorithm>

#include "dualemo/error.hpp"
#include "dualemo/utf8.hpp"

namespace dualemo {
namespace {

// Replaces every emoticon occurrence with a single space and reports the
// class of each match through `on_match`.
template <typename OnMatch>
std::string mask_emoticons(std::string_view text, const ResourceBundle& bundle, OnMatch on_match) {
  std::string out;
  out.reserve(text.size());
  const auto& emoticons = bundle.emoticons();
  std::size_t pos = 0;
  while (pos < text.size()) {
    bool matched = false;
    for (const auto& [emoticon, cls] : emoticons) {
      if (text.compare(pos, emoticon.size(), emoticon) == 0) {
        on_match(cls);
        out.push_back(' ');
        pos += emoticon.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    const std::size_t len = utf8::char_length(text, pos);
    out.append(text.substr(pos, len));
    pos += len;
  }
  return out;
}

bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

bool is_word_char(char32_t c) { return !utf8::is_space(c) && !utf8::is_punct(c); }

void append_code_point(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> cps;
  std::size_t pos = 0;
  while (pos < text.size()) cps.push_back(utf8::next(text, pos));
  return cps;
}

TokenSequence tokenize_english(std::string_view masked) {
  TokenSequence seq;
  const std::vector<char32_t> cps = decode(masked);
  std::string current;
  auto flush = [&] {
    if (!current.empty()) seq.tokens.push_back(utf8::fold_case(current));
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (is_word_char(c)) {
      append_code_point(current, c);
    } else if (is_apostrophe(c) && !current.empty() && i + 1 < cps.size() &&
               is_word_char(cps[i + 1])) {
      current.push_back('\'');
    } else {
      flush();
    }
  }
  flush();
  return seq;
}

// Forward maximum match over one run of non-ASCII word characters.
void match_run(const std::vector<char32_t>& run, const ResourceBundle& bundle, TokenSequence& seq) {
  const std::size_t max_len = std::max<std::size_t>(1, bundle.max_word_code_points());
  std::size_t i = 0;
  while (i < run.size()) {
    std::size_t take = 1;
    std::string best;
    for (std::size_t len = std::min(max_len, run.size() - i); len >= 1; --len) {
      std::string candidate;
      for (std::size_t k = 0; k < len; ++k) append_code_point(candidate, run[i + k]);
      if (len == 1 || bundle.in_vocabulary(candidate)) {
        take = len;
        best = std::move(candidate);
        break;
      }
    }
    seq.tokens.push_back(std::move(best));
    i += take;
  }
}

TokenSequence tokenize_chinese(std::string_view masked, const ResourceBundle& bundle) {
  TokenSequence seq;
  const std::vector<char32_t> cps = decode(masked);
  std::string ascii;
  std::vector<char32_t> run;
  auto flush_ascii = [&] {
    if (!ascii.empty()) seq.tokens.push_back(utf8::fold_case(ascii));
    ascii.clear();
  };
  auto flush_run = [&] {
    if (!run.empty()) match_run(run, bundle, seq);
    run.clear();
  };
  for (char32_t c : cps) {
    if (!is_word_char(c)) {
      flush_ascii();
      flush_run();
    } else if (utf8::is_ascii_alnum(c)) {
      flush_run();
      ascii.push_back(static_cast<char>(c));
    } else {
      flush_ascii();
      run.push_back(c);
    }
  }
  flush_ascii();
  flush_run();
  return seq;
}

}  // namespace

TokenSequence tokenize(std::string_view text, const ResourceBundle& bundle) {
  const std::string masked = mask_emoticons(text, bundle, [](EmoticonClass) {});
  if (bundle.language() == Language::kEnglish) return tokenize_english(masked);
  return tokenize_chinese(masked, bundle);
}

TokenSequence tokenize(std::string_view text, Language language, const ResourceBundle& bundle) {
  if (language != bundle.language()) {
    throw ArgumentError("tokenize: requested language " + std::string(language_code(language)) +
                        " but bundle is " + std::string(language_code(bundle.language())));
  }
  return tokenize(text, bundle);
}

SurfaceStats scan_surface(std::string_view text, const ResourceBundle& bundle) {
  SurfaceStats stats;
  const std::string masked = mask_emoticons(text, bundle, [&](EmoticonClass cls) {
    ++stats.emoticon_counts[static_cast<std::size_t>(cls)];
  });
  std::size_t pos = 0;
  while (pos < masked.size()) {
    if (masked.compare(pos, 3, "...") == 0) {
      ++stats.ellipsis;
      pos += 3;
      continue;
    }
    const char32_t c = utf8::next(masked, pos);
    if (c == U'!' || c == 0xFF01) {
      ++stats.exclamation;
    } else if (c == U'?' || c == 0xFF1F) {
      ++stats.question;
    } else if (c == 0x2026) {
      ++stats.ellipsis;
    }
  }
  if (bundle.language() == Language::kEnglish) {
    stats.uppercase_letters =
        static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char ch) {
          return ch >= 'A' && ch <= 'Z';
        }));
  }
  stats.char_count = utf8::count_code_points(text);
  return stats;
}

}  // namespace dualemo
