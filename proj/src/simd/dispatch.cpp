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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dualemo/simd.hpp"

namespace dualemo::simd {
namespace {

bool cpu_has_avx2() {
#if defined(DUALEMO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Level detect_level() {
  if (const char* env = std::getenv("DUALEMO_SIMD")) {
    Level requested = parse_level(env);
    if (!level_supported(requested)) {
      throw std::runtime_error(std::string("DUALEMO_SIMD=") + env + " is not supported on this CPU");
    }
    return requested;
  }
  if (level_supported(Level::kAvx2)) return Level::kAvx2;
  if (level_supported(Level::kNeon)) return Level::kNeon;
  return Level::kScalar;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernels_for(detect_level())};
  return table;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd kernel: length mismatch");
}

}  // namespace

bool level_supported(Level level) {
  switch (level) {
    case Level::kScalar:
      return true;
    case Level::kAvx2:
      return cpu_has_avx2();
    case Level::kNeon:
#if defined(DUALEMO_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Level level) {
  if (!level_supported(level)) {
    throw std::invalid_argument("simd level " + std::string(level_name(level)) + " unavailable");
  }
  switch (level) {
#if defined(DUALEMO_HAVE_AVX2)
    case Level::kAvx2:
      return avx2_kernels();
#endif
#if defined(DUALEMO_HAVE_NEON)
    case Level::kNeon:
      return neon_kernels();
#endif
    default:
      return scalar_kernels();
  }
}

const KernelTable& kernels() { return *active_table().load(std::memory_order_acquire); }

Level active_level() { return kernels().level; }

void set_level(Level level) { active_table().store(&kernels_for(level), std::memory_order_release); }

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kScalar:
      return "scalar";
    case Level::kAvx2:
      return "avx2";
    case Level::kNeon:
      return "neon";
  }
  return "unknown";
}

Level parse_level(std::string_view name) {
  if (name == "scalar") return Level::kScalar;
  if (name == "avx2") return Level::kAvx2;
  if (name == "neon") return Level::kNeon;
  throw std::invalid_argument("unknown simd level: " + std::string(name));
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_lengths(a.size(), b.size());
  return kernels().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_lengths(x.size(), y.size());
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

void add(std::span<const double> x, std::span<double> y) {
  check_lengths(x.size(), y.size());
  kernels().add(x.data(), y.data(), x.size());
}

void sub(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_lengths(a.size(), b.size());
  check_lengths(a.size(), out.size());
  kernels().sub(a.data(), b.data(), out.data(), a.size());
}

void max(std::span<const double> x, std::span<double> y) {
  check_lengths(x.size(), y.size());
  kernels().max(x.data(), y.data(), x.size());
}

void mean_update(std::span<const double> x, std::span<double> m, double count) {
  check_lengths(x.size(), m.size());
  kernels().mean_update(x.data(), m.data(), count, x.size());
}

}  // namespace dualemo::simd
