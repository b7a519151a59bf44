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

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include "dualemo/dataset.hpp"
#include "dualemo/error.hpp"
#include "support.hpp"

using namespace dualemo;

namespace {

std::set<std::string> as_set(const std::vector<std::string>& ids) { return {ids.begin(), ids.end()}; }

NewsPiece make_piece(std::string id, std::string content, std::optional<std::int64_t> timestamp = {}) {
  NewsPiece p;
  p.id = std::move(id);
  p.content = std::move(content);
  p.timestamp = timestamp;
  return p;
}

// All-pairs single-link clustering by depth-first search.
std::vector<std::set<std::string>> brute_force_clusters(const Dataset& d, double threshold) {
  const std::size_t n = d.size();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (comp[b] < 0 && char_ngram_jaccard(d.pieces[a].content, d.pieces[b].content) >= threshold) {
          comp[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  std::vector<std::set<std::string>> clusters(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < n; ++i) clusters[static_cast<std::size_t>(comp[i])].insert(d.pieces[i].id);
  return clusters;
}

}  // namespace

TEST_CASE("loading the three-piece fixture") {
  const auto d = load_dataset(testing::fixture("three_pieces.jsonl"));
  REQUIRE(d.size() == 3);
  const auto* a = d.find("a");
  REQUIRE(a);
  CHECK(a->label == Veracity::kFake);
  CHECK(a->comments.size() == 2);
  CHECK(a->comments[1].timestamp == 3);
  CHECK_FALSE(d.find("b")->label.has_value());
  CHECK(d.find("c")->language == Language::kChinese);
  CHECK(d.find("c")->label == Veracity::kUnverified);
  CHECK(d.find("c")->comments.front().text == "不快乐");
  CHECK(d.find("zzz") == nullptr);
}

TEST_CASE("dataset round trip and 150-comment ingest") {
  Dataset d;
  NewsPiece p;
  p.id = "many";
  p.content = "lots of comments";
  p.label = Veracity::kReal;
  p.timestamp = 10;
  for (int c = 0; c < 150; ++c) p.comments.push_back({"c" + std::to_string(c), c});
  p.detector_embedding = std::vector<double>{0.5, -1.25};
  d.pieces.push_back(p);
  const auto dir = testing::scratch_dir("dataset_roundtrip");
  save_dataset(d, dir / "d.jsonl");
  const auto back = load_dataset(dir / "d.jsonl");
  REQUIRE(back.size() == 1);
  CHECK(back.pieces[0].comments.size() == 150);
  CHECK(back.pieces[0].detector_embedding == p.detector_embedding);
  CHECK(piece_to_json(back.pieces[0]) == piece_to_json(p));
}

TEST_CASE("malformed datasets name the line") {
  const auto dir = testing::scratch_dir("dataset_bad");
  {
    std::ofstream out(dir / "bad.jsonl");
    out << R"({"id": "x", "content": "ok"})" << "\n" << R"({"id": "y"})" << "\n";
  }
  CHECK_THROWS_WITH_AS(load_dataset(dir / "bad.jsonl"), doctest::Contains("bad.jsonl:2"), LoadError);
  {
    std::ofstream out(dir / "dup.jsonl");
    out << R"({"id": "x", "content": "a"})" << "\n" << R"({"id": "x", "content": "b"})" << "\n";
  }
  CHECK_THROWS_WITH_AS(load_dataset(dir / "dup.jsonl"), doctest::Contains("duplicate id"), LoadError);
  {
    std::ofstream out(dir / "label.jsonl");
    out << R"({"id": "x", "content": "a", "label": "maybe"})" << "\n";
  }
  CHECK_THROWS_AS(load_dataset(dir / "label.jsonl"), LoadError);
  CHECK_THROWS_AS(load_dataset(dir / "missing.jsonl"), LoadError);
}

TEST_CASE("temporal split of the ten-piece fixture") {
  const auto d = load_dataset(testing::fixture("temporal10.jsonl"));
  const auto split = temporal_split(d);
  CHECK(split.train.size() == 6);
  CHECK(split.validation.size() == 2);
  CHECK(split.test.size() == 2);
  auto ts = [&](const std::string& id) { return *d.find(id)->timestamp; };
  auto max_ts = [&](const std::vector<std::string>& ids) {
    std::int64_t m = INT64_MIN;
    for (const auto& id : ids) m = std::max(m, ts(id));
    return m;
  };
  auto min_ts = [&](const std::vector<std::string>& ids) {
    std::int64_t m = INT64_MAX;
    for (const auto& id : ids) m = std::min(m, ts(id));
    return m;
  };
  CHECK(max_ts(split.train) <= min_ts(split.validation));
  CHECK(max_ts(split.validation) <= min_ts(split.test));
  CHECK(as_set(split.test) == std::set<std::string>{"t01", "t05"});
}

TEST_CASE("random split") {
  Dataset d;
  for (int i = 0; i < 103; ++i) d.pieces.push_back(make_piece("p" + std::to_string(i), "x"));
  const auto split = random_split(d, {3, 1, 1}, 42);
  CHECK(split.validation.size() == 20);
  CHECK(split.test.size() == 20);
  CHECK(split.train.size() == 63);
  std::set<std::string> all = as_set(split.train);
  for (const auto& id : split.validation) CHECK(all.insert(id).second);
  for (const auto& id : split.test) CHECK(all.insert(id).second);
  CHECK(all.size() == 103);
  // Ids keep dataset order inside each part.
  auto position = [&](const std::string& id) { return std::stoi(id.substr(1)); };
  CHECK(std::is_sorted(split.train.begin(), split.train.end(),
                       [&](auto& a, auto& b) { return position(a) < position(b); }));
  const auto again = random_split(d, {3, 1, 1}, 42);
  CHECK(again.train == split.train);
  CHECK(again.test == split.test);
  CHECK(random_split(d, {3, 1, 1}, 43).test != split.test);
  CHECK_THROWS_AS(random_split(d, {3, 0, 1}, 1), ArgumentError);

  const auto j = split_to_json(split);
  const auto back = split_from_json(j);
  CHECK(back.train == split.train);
  CHECK(back.validation == split.validation);
}

TEST_CASE("character trigram Jaccard") {
  CHECK(char_ngram_jaccard("abcd", "abcd") == 1.0);
  CHECK(char_ngram_jaccard("", "") == 1.0);
  CHECK(char_ngram_jaccard("abc", "xyz") == 0.0);
  // {abc, bcd} vs {abc, bce}: 1 shared of 3.
  CHECK(char_ngram_jaccard("abcd", "abce") == doctest::Approx(1.0 / 3.0));
  CHECK(char_ngram_jaccard("ab", "ab") == 1.0);
  CHECK(char_ngram_jaccard("开心快乐", "开心快乐") == 1.0);
  CHECK(char_ngram_jaccard("开心快乐", "开心快") == doctest::Approx(0.5));
}

TEST_CASE("dedup on the planted-duplicate fixture") {
  const auto d = load_dataset(testing::fixture("dedup10.jsonl"));
  const auto result = deduplicate(d, std::nullopt, 0.8);
  CHECK(result.report.retained == 7);
  CHECK(result.report.removed == 3);
  CHECK(result.dataset.size() == 7);
  CHECK(result.report.clusters.size() == 3);
  // The earliest piece of each cluster survives.
  CHECK(result.dataset.find("d08") != nullptr);
  CHECK(result.dataset.find("d01") == nullptr);
  for (const auto& cluster : result.report.clusters) {
    if (std::find(cluster.begin(), cluster.end(), "d01") != cluster.end()) CHECK(cluster.front() == "d08");
  }

  // Brute-force clustering oracle.
  std::vector<std::set<std::string>> expected;
  for (const auto& c : brute_force_clusters(d, 0.8)) {
    if (c.size() > 1) expected.push_back(c);
  }
  std::vector<std::set<std::string>> actual;
  for (const auto& c : result.report.clusters) actual.push_back(as_set(c));
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  CHECK(actual == expected);

  const auto twice = deduplicate(result.dataset, std::nullopt, 0.8);
  CHECK(twice.report.removed == 0);
  CHECK(twice.dataset.size() == 7);

  // A label filter leaves other labels alone.
  CHECK(deduplicate(d, Veracity::kReal, 0.8).report.removed == 1);
  CHECK_THROWS_AS(deduplicate(d, std::nullopt, 0.0), ArgumentError);
}

TEST_CASE("dedup matches the brute-force oracle on random near-duplicates") {
  std::uint64_t state = 17;
  auto draw = [&](std::uint64_t bound) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 33) % bound;
  };
  const std::vector<std::string> stems{"alpha beta gamma delta epsilon", "the quick brown fox jumps",
                                       "lorem ipsum dolor sit amet", "seven silver swans swam south"};
  for (int trial = 0; trial < 20; ++trial) {
    Dataset d;
    for (int i = 0; i < 15; ++i) {
      std::string text = stems[draw(stems.size())];
      const auto edits = draw(6);
      for (std::uint64_t e = 0; e < edits; ++e) text[draw(text.size())] = static_cast<char>('a' + draw(26));
      d.pieces.push_back(make_piece("r" + std::to_string(i), text, static_cast<std::int64_t>(draw(5))));
    }
    const auto result = deduplicate(d, std::nullopt, 0.7);
    std::size_t expected_removed = 0;
    for (const auto& c : brute_force_clusters(d, 0.7)) expected_removed += c.size() - 1;
    CHECK(result.report.removed == expected_removed);
    CHECK(deduplicate(result.dataset, std::nullopt, 0.7).report.removed == 0);
  }
}
