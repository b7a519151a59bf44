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

// Feedforward veracity classifier: ReLU hidden layers, softmax output,
// class-weighted cross-entropy trained by plain mini-batch gradient descent.
// An optional detector embedding is concatenated in front of the emotion
// features at the input layer.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace dualemo {

inline constexpr int kModelFormatVersion = 1;

// Expected composition of the input: [embedding (embedding_length) | features].
struct FeatureSpec {
  std::string feature_set = "dual";
  std::size_t feature_length = 0;
  std::size_t embedding_length = 0;

  std::size_t input_length() const { return feature_length + embedding_length; }
};

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  // outputs x inputs, row-major.
  std::vector<double> weights;
  std::vector<double> bias;

  std::span<const double> row(std::size_t r) const {
    return std::span(weights).subspan(r * inputs, inputs);
  }
  std::span<double> row(std::size_t r) { return std::span(weights).subspan(r * inputs, inputs); }
};

struct MlpModel {
  std::vector<std::size_t> layer_dims;
  std::vector<DenseLayer> layers;
  std::string activation = "relu";
  std::uint64_t seed = 0;
  FeatureSpec feature_spec;
  std::vector<std::string> classes;
  // Per-input standardization (x - shift) * scale; empty means identity.
  std::vector<double> input_shift;
  std::vector<double> input_scale;

  std::size_t input_dim() const { return layer_dims.front(); }
  std::size_t class_count() const { return layer_dims.back(); }
  std::size_t parameter_count() const;
};

inline const std::vector<std::size_t> kDefaultHiddenDims{256, 128, 64, 32};

// Uniform fan-in initialization U(-sqrt(6/fan_in), sqrt(6/fan_in)) drawn
// layer by layer from the seeded generator; zero biases.
MlpModel build_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                   std::size_t classes, std::uint64_t seed);
MlpModel build_mlp(std::size_t input_dim, std::size_t classes, std::uint64_t seed);

// Concatenates [embedding, features] per the model's feature spec. An
// absent embedding is a zero block. Throws DimensionError on mismatch.
std::vector<double> assemble_input(const MlpModel& model, std::span<const double> features,
                                   std::optional<std::span<const double>> embedding = {});

// Softmax probabilities for an already assembled input vector.
std::vector<double> forward(const MlpModel& model, std::span<const double> input);

std::vector<double> predict(const MlpModel& model, std::span<const double> features,
                            std::optional<std::span<const double>> embedding = {});

// Per-parameter gradient buffers shaped like the model's layers.
struct Gradients {
  std::vector<DenseLayer> layers;

  explicit Gradients(const MlpModel& model);
  void zero();
};

// weight * cross-entropy of one sample; adds its gradient into `grads`
// when non-null.
double loss_and_gradient(const MlpModel& model, std::span<const double> input, std::size_t label,
                         double weight, Gradients* grads);

enum class ClassWeighting { kNone, kInverseFrequency };

struct TrainConfig {
  std::size_t epochs = 100;
  double learning_rate = 0.05;
  std::size_t batch_size = 32;
  ClassWeighting class_weights = ClassWeighting::kNone;
  // Epochs without validation macro-F1 improvement before stopping.
  std::size_t patience = 10;
  std::uint64_t seed = 42;
  // Fit input standardization on the training set.
  bool standardize = true;
};

struct Sample {
  std::vector<double> input;
  std::size_t label = 0;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double loss = 0.0;
  // NaN when there is no validation set.
  double validation_macro_f1 = 0.0;
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
};

// Balanced weights N / (K * n_c) over the K classes present, so the mean
// weight across training samples is 1. Absent classes get weight 1.
std::vector<double> inverse_frequency_weights(std::span<const Sample> samples, std::size_t classes);

// Deterministic given (model, data, config). With a validation set, the
// returned model is the epoch with the best validation macro F1.
TrainResult train(MlpModel model, std::span<const Sample> train_set,
                  std::span<const Sample> validation_set, const TrainConfig& config);

// Largest relative error |a - n| / max(|a|, |n|, 1e-8) between analytic
// and central-difference gradients over every parameter.
double gradient_check(const MlpModel& model, std::span<const double> input, std::size_t label,
                      double epsilon);

nlohmann::json model_to_json(const MlpModel& model);
MlpModel model_from_json(const nlohmann::json& j);
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace dualemo
