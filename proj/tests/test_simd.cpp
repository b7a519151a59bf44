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

#include <cstring>
#include <random>
#include <vector>

#include "dualemo/simd.hpp"

using namespace dualemo::simd;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

std::vector<Level> available_levels() {
  std::vector<Level> out;
  for (Level l : {Level::kScalar, Level::kAvx2, Level::kNeon}) {
    if (level_supported(l)) out.push_back(l);
  }
  return out;
}

}  // namespace

TEST_CASE("every available kernel level matches the scalar reference bitwise") {
  const KernelTable& ref = scalar_kernels();
  std::mt19937_64 gen(7);
  for (Level level : available_levels()) {
    CAPTURE(level_name(level));
    const KernelTable& k = kernels_for(level);
    for (std::size_t n = 0; n <= 67; ++n) {
      for (std::size_t offset : {0, 1, 3}) {
        // Offsets exercise unaligned loads.
        auto a_store = random_vector(gen, n + offset);
        auto b_store = random_vector(gen, n + offset);
        const double* a = a_store.data() + offset;
        const double* b = b_store.data() + offset;

        CHECK(same_bits(k.dot(a, b, n), ref.dot(a, b, n)));

        std::vector<double> y1(b, b + n), y2(b, b + n);
        k.axpy(0.37, a, y1.data(), n);
        ref.axpy(0.37, a, y2.data(), n);
        CHECK(same_bits(y1, y2));

        y1.assign(b, b + n);
        y2.assign(b, b + n);
        k.add(a, y1.data(), n);
        ref.add(a, y2.data(), n);
        CHECK(same_bits(y1, y2));

        std::vector<double> o1(n), o2(n);
        k.sub(a, b, o1.data(), n);
        ref.sub(a, b, o2.data(), n);
        CHECK(same_bits(o1, o2));

        y1.assign(b, b + n);
        y2.assign(b, b + n);
        k.max(a, y1.data(), n);
        ref.max(a, y2.data(), n);
        CHECK(same_bits(y1, y2));

        y1.assign(b, b + n);
        y2.assign(b, b + n);
        k.mean_update(a, y1.data(), 3.0, n);
        ref.mean_update(a, y2.data(), 3.0, n);
        CHECK(same_bits(y1, y2));
      }
    }
  }
}

TEST_CASE("scalar kernels compute the documented operations") {
  const KernelTable& k = scalar_kernels();
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{5, 4, 3, 2, 1};
  CHECK(k.dot(a.data(), b.data(), 5) == 35.0);
  std::vector<double> y = b;
  k.axpy(2.0, a.data(), y.data(), 5);
  CHECK(y == std::vector<double>{7, 8, 9, 10, 11});
  y = b;
  k.max(a.data(), y.data(), 5);
  CHECK(y == std::vector<double>{5, 4, 3, 4, 5});
  std::vector<double> out(5);
  k.sub(a.data(), b.data(), out.data(), 5);
  CHECK(out == std::vector<double>{-4, -2, 0, 2, 4});
  std::vector<double> m{0, 0, 0, 0, 0};
  k.mean_update(a.data(), m.data(), 1.0, 5);
  k.mean_update(b.data(), m.data(), 2.0, 5);
  CHECK(m == std::vector<double>{3, 3, 3, 3, 3});
}

TEST_CASE("running mean of identical rows reproduces the row exactly") {
  std::mt19937_64 gen(11);
  const auto row = random_vector(gen, 33);
  for (Level level : available_levels()) {
    std::vector<double> m(row.size(), 0.0);
    for (int count = 1; count <= 100; ++count) {
      kernels_for(level).mean_update(row.data(), m.data(), count, row.size());
    }
    CHECK(same_bits(m, row));
  }
}

TEST_CASE("level selection") {
  CHECK(parse_level("scalar") == Level::kScalar);
  CHECK(parse_level("avx2") == Level::kAvx2);
  CHECK(parse_level("neon") == Level::kNeon);
  CHECK_THROWS(parse_level("sse9"));
  CHECK(level_supported(Level::kScalar));

  const Level before = active_level();
  set_level(Level::kScalar);
  CHECK(active_level() == Level::kScalar);
  std::vector<double> a{1, 2}, b{3, 4};
  CHECK(dot(a, b) == 11.0);
  std::vector<double> short_vec{1.0};
  CHECK_THROWS(dot(a, short_vec));
  set_level(before);
}
