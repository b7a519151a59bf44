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

// Synthetic English corpus with planted (publisher, social) emotion
// categories. Texts draw emotion words from a single lexicon emotion plus
// neutral filler, so lexicon-vote categories come out exactly as planted.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dualemo/dataset.hpp"

namespace dualemo {

struct PlantedPair {
  std::string publisher;
  std::string social;
  double probability = 0.0;
};

struct SynthConfig {
  std::size_t pieces = 2000;
  std::uint64_t seed = 42;
  std::size_t min_comments = 3;
  std::size_t max_comments = 10;
  // Category distributions per label; probabilities sum to 1.
  std::vector<PlantedPair> fake{{"angry", "angry", 0.40}, {"happy", "angry", 0.30}, {"none", "angry", 0.30}};
  std::vector<PlantedPair> real{{"angry", "angry", 0.10}, {"happy", "happy", 0.45}, {"none", "none", 0.45}};
};

// Half the pieces (rounded down) are fake, in shuffled order.
Dataset synthesize_corpus(const SynthConfig& config);

}  // namespace dualemo
