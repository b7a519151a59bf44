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

namespace dualemo::detail {

inline constexpr std::size_t kChiSquareTableMaxDof = 100;

// Row k holds the critical values for k + 1 degrees of freedom.
extern const std::array<std::array<double, 2>, kChiSquareTableMaxDof> kChiSquareCritical;

}  // namespace dualemo::detail
