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

#include <cstddef>
#include <string>
#include <string_view>

namespace dualemo::utf8 {

// Decodes the code point starting at text[pos] and advances pos past it.
// Malformed sequences decode to U+FFFD and consume a single byte.
char32_t next(std::string_view text, std::size_t& pos);

// Byte length of the code point starting at text[pos].
std::size_t char_length(std::string_view text, std::size_t pos);

std::size_t count_code_points(std::string_view text);

bool is_space(char32_t c);

// ASCII punctuation and the general/CJK/full-width punctuation blocks.
bool is_punct(char32_t c);

bool is_ascii_alnum(char32_t c);

// ASCII case folding; non-ASCII bytes are left untouched.
std::string fold_case(std::string_view text);

}  // namespace dualemo::utf8
