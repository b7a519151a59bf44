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

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "dualemo/error.hpp"
#include "dualemo/mlp.hpp"
#include "support.hpp"

using namespace dualemo;

namespace {

std::vector<double> random_input(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

TEST_CASE("default architecture") {
  const auto model = build_mlp(260, 2, 42);
  CHECK(model.layer_dims == std::vector<std::size_t>{260, 256, 128, 64, 32, 2});
  CHECK(model.layers.size() == 5);
  CHECK(model.parameter_count() == 260 * 256 + 256 + 256 * 128 + 128 + 128 * 64 + 64 + 64 * 32 + 32 + 32 * 2 + 2);
  const double limit = std::sqrt(6.0 / 260.0);
  for (double w : model.layers[0].weights) CHECK(std::abs(w) <= limit);
  for (double b : model.layers[0].bias) CHECK(b == 0.0);
  CHECK_THROWS_AS(build_mlp(0, 2, 1), ArgumentError);
}

TEST_CASE("initialization is deterministic in the seed") {
  const auto a = build_mlp(20, {8, 4}, 3, 7);
  const auto b = build_mlp(20, {8, 4}, 3, 7);
  const auto c = build_mlp(20, {8, 4}, 3, 8);
  CHECK(a.layers[1].weights == b.layers[1].weights);
  CHECK(a.layers[1].weights != c.layers[1].weights);
}

TEST_CASE("forward pass") {
  std::mt19937_64 gen(1);
  const auto model = build_mlp(10, {6}, 3, 5);
  const auto p = forward(model, random_input(gen, 10));
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : p) CHECK(v > 0.0);

  auto zero = model;
  for (auto& layer : zero.layers) {
    std::fill(layer.weights.begin(), layer.weights.end(), 0.0);
  }
  for (double v : forward(zero, random_input(gen, 10))) CHECK(v == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(forward(model, std::vector<double>(9, 0.0)), DimensionError);
}

TEST_CASE("hand-computed two-layer network") {
  auto model = build_mlp(2, {2}, 2, 1);
  model.layers[0].weights = {1, 0, 0, -1};
  model.layers[0].bias = {0, 0};
  model.layers[1].weights = {1, 1, 0, 0};
  model.layers[1].bias = {0, 0.5};
  // Hidden relu([1, -2]) = [1, 0]; logits [1, 0.5].
  const auto p = forward(model, std::vector<double>{1, 2});
  CHECK(p[0] == doctest::Approx(1.0 / (1.0 + std::exp(-0.5))).epsilon(1e-12));
  const double loss = loss_and_gradient(model, std::vector<double>{1, 2}, 0, 2.0, nullptr);
  CHECK(loss == doctest::Approx(-2.0 * std::log(p[0])).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = build_mlp(3, {4}, 2, 100 + trial);
    const auto input = random_input(gen, 3);
    CHECK(gradient_check(model, input, trial % 2, 1e-5) < 1e-4);
  }
  // Zero input: only the biases drive the network, so they must be nonzero
  // to stay off the kink.
  auto biased = build_mlp(3, {4}, 2, 77);
  for (auto& layer : biased.layers) {
    for (double& b : layer.bias) b = 0.3 * random_input(gen, 1)[0];
  }
  CHECK(gradient_check(biased, std::vector<double>(3, 0.0), 1, 1e-5) < 1e-4);
  // Positive inputs and biases keep every unit away from the ReLU kink.
  auto smooth = build_mlp(4, {5, 3}, 3, 9);
  for (auto& layer : smooth.layers) {
    for (double& w : layer.weights) w = std::abs(w);
    std::fill(layer.bias.begin(), layer.bias.end(), 0.1);
  }
  CHECK(gradient_check(smooth, std::vector<double>{0.5, 1.0, 0.2, 0.7}, 1, 1e-5) < 1e-6);
}

TEST_CASE("units on the ReLU kink get a zero subgradient") {
  // A dead first layer with zero biases leaves the second layer at z = 0.
  auto model = build_mlp(2, {2, 3}, 2, 4);
  std::fill(model.layers[0].weights.begin(), model.layers[0].weights.end(), -1.0);
  const std::vector<double> x{1.0, 1.0};
  Gradients grads(model);
  loss_and_gradient(model, x, 0, 1.0, &grads);
  for (double g : grads.layers[1].bias) CHECK(g == 0.0);
  // Central differences see half the one-sided slope there, so the check
  // reports a full mismatch; it is only meaningful away from kinks.
  CHECK(gradient_check(model, x, 0, 1e-6) > 0.5);
}

TEST_CASE("training fits a separable problem") {
  std::mt19937_64 gen(4);
  std::vector<Sample> data;
  for (int i = 0; i < 200; ++i) {
    auto x = random_input(gen, 2);
    const std::size_t label = x[0] + x[1] > 0 ? 1 : 0;
    x[0] += label ? 0.5 : -0.5;
    data.push_back({x, label});
  }
  TrainConfig config;
  config.epochs = 200;
  config.learning_rate = 0.1;
  const auto result = train(build_mlp(2, {16}, 2, 3), data, {}, config);
  std::size_t correct = 0;
  for (const auto& s : data) correct += argmax(forward(result.model, s.input)) == s.label;
  CHECK(correct == data.size());
  CHECK(result.history.size() == 200);
  CHECK(std::isnan(result.history.front().validation_macro_f1));
  CHECK(result.history.back().loss < result.history.front().loss);

  const auto again = train(build_mlp(2, {16}, 2, 3), data, {}, config);
  CHECK(model_to_json(again.model) == model_to_json(result.model));
}

TEST_CASE("inverse-frequency weights raise minority recall") {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Sample> data;
  for (int i = 0; i < 400; ++i) {
    const std::size_t label = i % 10 == 0 ? 1 : 0;
    data.push_back({{noise(gen) + (label ? 1.0 : 0.0), noise(gen)}, label});
  }
  const auto weights = inverse_frequency_weights(data, 2);
  CHECK(weights[0] == doctest::Approx(400.0 / (2 * 360)));
  CHECK(weights[1] == doctest::Approx(400.0 / (2 * 40)));

  auto recall = [&](ClassWeighting weighting) {
    TrainConfig config;
    config.epochs = 30;
    config.class_weights = weighting;
    const auto model = train(build_mlp(2, {8}, 2, 11), data, {}, config).model;
    std::size_t hit = 0, total = 0;
    for (const auto& s : data) {
      if (s.label != 1) continue;
      ++total;
      hit += argmax(forward(model, s.input)) == 1;
    }
    return static_cast<double>(hit) / static_cast<double>(total);
  };
  CHECK(recall(ClassWeighting::kInverseFrequency) > recall(ClassWeighting::kNone));
}

TEST_CASE("early stopping restores the best validation epoch") {
  std::mt19937_64 gen(8);
  std::vector<Sample> train_set, validation;
  for (int i = 0; i < 60; ++i) {
    // Labels unrelated to inputs: validation F1 peaks by chance.
    train_set.push_back({random_input(gen, 5), static_cast<std::size_t>(gen() % 2)});
    validation.push_back({random_input(gen, 5), static_cast<std::size_t>(gen() % 2)});
  }
  TrainConfig config;
  config.epochs = 200;
  config.patience = 5;
  const auto result = train(build_mlp(5, {32}, 2, 1), train_set, validation, config);
  CHECK(result.history.size() <= 200);
  CHECK((result.history.size() == result.best_epoch + 5 || result.history.size() == 200));
  double best = 0.0;
  for (const auto& e : result.history) best = std::max(best, e.validation_macro_f1);
  CHECK(result.history[result.best_epoch - 1].validation_macro_f1 == best);
}

TEST_CASE("divergent training asks for a lower learning rate") {
  std::vector<Sample> data{{{1e200, -1e200}, 0}, {{-1e200, 1e200}, 1}};
  TrainConfig config;
  config.standardize = false;
  config.learning_rate = 1e10;
  CHECK_THROWS_WITH(train(build_mlp(2, {}, 2, 1), data, {}, config), doctest::Contains("lower the learning rate"));
}

TEST_CASE("model persistence") {
  std::mt19937_64 gen(10);
  auto model = build_mlp(6, {5}, 2, 12);
  model.classes = {"fake", "real"};
  model.input_shift = random_input(gen, 6);
  model.input_scale = std::vector<double>(6, 0.5);
  model.feature_spec = {"publisher", 4, 2};
  const auto dir = testing::scratch_dir("mlp_io");
  save_model(model, dir / "m.json");
  const auto back = load_model(dir / "m.json");
  CHECK(model_to_json(back) == model_to_json(model));
  for (std::size_t l = 0; l < model.layers.size(); ++l) CHECK(back.layers[l].weights == model.layers[l].weights);
  CHECK(back.input_shift == model.input_shift);
  CHECK(back.feature_spec.feature_set == "publisher");
  CHECK(back.feature_spec.embedding_length == 2);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_input(gen, 6);
    CHECK(forward(back, x) == forward(model, x));
  }

  std::ifstream in(dir / "m.json");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  {
    std::ofstream out(dir / "truncated.json");
    out << text.substr(0, text.size() / 2);
  }
  CHECK_THROWS_AS(load_model(dir / "truncated.json"), LoadError);
  CHECK_THROWS_AS(load_model(dir / "absent.json"), LoadError);

  auto j = model_to_json(model);
  j["format_version"] = 99;
  CHECK_THROWS_AS(model_from_json(j), LoadError);
}

TEST_CASE("detector embedding at the input") {
  auto model = build_mlp(5, {4}, 2, 3);
  model.feature_spec = {"dual", 3, 2};
  const std::vector<double> features{0.1, 0.2, 0.3};
  const std::vector<double> zeros{0.0, 0.0};
  const std::vector<double> emb{1.0, -1.0};
  CHECK(assemble_input(model, features, emb) == std::vector<double>{1.0, -1.0, 0.1, 0.2, 0.3});
  CHECK(predict(model, features) == predict(model, features, std::span<const double>(zeros)));
  CHECK(predict(model, features, std::span<const double>(emb)) != predict(model, features));
  CHECK_THROWS_AS(assemble_input(model, features, std::span<const double>(features)), DimensionError);
  CHECK_THROWS_AS(assemble_input(model, emb), DimensionError);

  auto plain = build_mlp(3, {4}, 2, 3);
  CHECK_THROWS_AS(predict(plain, features, std::span<const double>(emb)), DimensionError);
}
