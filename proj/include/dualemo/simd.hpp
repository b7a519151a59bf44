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

// Dense double-precision kernels used by pooling, the emotion gap and the
// MLP. Every level (scalar reference, AVX2, NEON) produces bitwise-identical
// results: the dot product uses four interleaved partial sums in all
// variants and no variant contracts multiply-add.

#include <cstddef>
#include <span>
#include <string_view>

namespace dualemo::simd {

enum class Level { kScalar, kAvx2, kNeon };

struct KernelTable {
  Level level;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y += x
  void (*add)(const double* x, double* y, std::size_t n);
  // out = a - b
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  // y = (x > y) ? x : y
  void (*max)(const double* x, double* y, std::size_t n);
  // running mean: m += (x - m) / count
  void (*mean_update)(const double* x, double* m, double count, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(DUALEMO_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(DUALEMO_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

// True when the level was compiled in and the running CPU supports it.
bool level_supported(Level level);

// Kernel table for a level; throws std::invalid_argument if unsupported.
const KernelTable& kernels_for(Level level);

// Active table. Chosen once from CPU features, overridable with the
// DUALEMO_SIMD environment variable (scalar|avx2|neon) or set_level().
const KernelTable& kernels();
Level active_level();
void set_level(Level level);

std::string_view level_name(Level level);
Level parse_level(std::string_view name);

// Span conveniences over the active table. Lengths must agree.
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void add(std::span<const double> x, std::span<double> y);
void sub(std::span<const double> a, std::span<const double> b, std::span<double> out);
void max(std::span<const double> x, std::span<double> y);
void mean_update(std::span<const double> x, std::span<double> m, double count);

}  // namespace dualemo::simd
