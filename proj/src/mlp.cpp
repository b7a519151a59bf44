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

#include "dualemo/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dualemo/error.hpp"
#include "dualemo/metrics.hpp"
#include "dualemo/random.hpp"
#include "dualemo/simd.hpp"

namespace dualemo {

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers) n += layer.weights.size() + layer.bias.size();
  return n;
}

MlpModel build_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden_dims,
                   std::size_t classes, std::uint64_t seed) {
  if (input_dim < 1 || classes < 1) throw ArgumentError("build_mlp: input_dim and classes must be >= 1");
  MlpModel model;
  model.seed = seed;
  model.layer_dims.push_back(input_dim);
  for (std::size_t h : hidden_dims) {
    if (h < 1) throw ArgumentError("build_mlp: hidden layer of width 0");
    model.layer_dims.push_back(h);
  }
  model.layer_dims.push_back(classes);
  model.feature_spec.feature_length = input_dim;

  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < model.layer_dims.size(); ++l) {
    DenseLayer layer;
    layer.inputs = model.layer_dims[l];
    layer.outputs = model.layer_dims[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.inputs));
    layer.weights.resize(layer.inputs * layer.outputs);
    for (double& w : layer.weights) w = rng.uniform(-limit, limit);
    layer.bias.assign(layer.outputs, 0.0);
    model.layers.push_back(std::move(layer));
  }
  return model;
}

MlpModel build_mlp(std::size_t input_dim, std::size_t classes, std::uint64_t seed) {
  return build_mlp(input_dim, kDefaultHiddenDims, classes, seed);
}

std::vector<double> assemble_input(const MlpModel& model, std::span<const double> features,
                                   std::optional<std::span<const double>> embedding) {
  const FeatureSpec& spec = model.feature_spec;
  if (features.size() != spec.feature_length) {
    throw DimensionError("model expects " + std::to_string(spec.feature_length) +
                         " features, got " + std::to_string(features.size()));
  }
  std::vector<double> input;
  input.reserve(spec.input_length());
  if (spec.embedding_length > 0) {
    if (embedding) {
      if (embedding->size() != spec.embedding_length) {
        throw DimensionError("model expects a detector embedding of length " +
                             std::to_string(spec.embedding_length) + ", got " +
                             std::to_string(embedding->size()));
      }
      input.insert(input.end(), embedding->begin(), embedding->end());
    } else {
      input.resize(spec.embedding_length, 0.0);
    }
  } else if (embedding && !embedding->empty()) {
    throw DimensionError("model was built without a detector embedding");
  }
  input.insert(input.end(), features.begin(), features.end());
  return input;
}

namespace {

struct Activations {
  // values[0] is the standardized input; values[l + 1] the output of layer l
  // (post-ReLU for hidden layers, logits for the last).
  std::vector<std::vector<double>> values;
  std::vector<double> probs;
};

std::vector<double> standardized(const MlpModel& model, std::span<const double> input) {
  if (input.size() != model.input_dim()) {
    throw DimensionError("input has length " + std::to_string(input.size()) + ", model expects " +
                         std::to_string(model.input_dim()));
  }
  std::vector<double> x(input.begin(), input.end());
  if (!model.input_shift.empty()) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] - model.input_shift[i]) * model.input_scale[i];
  }
  return x;
}

void softmax_in_place(std::vector<double>& z) {
  const double top = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

Activations run_forward(const MlpModel& model, std::span<const double> input) {
  Activations act;
  act.values.reserve(model.layers.size() + 1);
  act.values.push_back(standardized(model, input));
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const DenseLayer& layer = model.layers[l];
    const std::vector<double>& in = act.values.back();
    std::vector<double> out(layer.outputs);
    const bool hidden = l + 1 < model.layers.size();
    for (std::size_t r = 0; r < layer.outputs; ++r) {
      const double z = simd::dot(layer.row(r), in) + layer.bias[r];
      out[r] = hidden && z < 0.0 ? 0.0 : z;
    }
    act.values.push_back(std::move(out));
  }
  act.probs = act.values.back();
  softmax_in_place(act.probs);
  return act;
}

double log_softmax_at(const std::vector<double>& logits, std::size_t label) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double v : logits) sum += std::exp(v - top);
  return logits[label] - top - std::log(sum);
}

}  // namespace

std::vector<double> forward(const MlpModel& model, std::span<const double> input) {
  return run_forward(model, input).probs;
}

std::vector<double> predict(const MlpModel& model, std::span<const double> features,
                            std::optional<std::span<const double>> embedding) {
  return forward(model, assemble_input(model, features, embedding));
}

Gradients::Gradients(const MlpModel& model) {
  for (const auto& layer : model.layers) {
    DenseLayer g;
    g.inputs = layer.inputs;
    g.outputs = layer.outputs;
    g.weights.assign(layer.weights.size(), 0.0);
    g.bias.assign(layer.bias.size(), 0.0);
    layers.push_back(std::move(g));
  }
}

void Gradients::zero() {
  for (auto& g : layers) {
    std::fill(g.weights.begin(), g.weights.end(), 0.0);
    std::fill(g.bias.begin(), g.bias.end(), 0.0);
  }
}

double loss_and_gradient(const MlpModel& model, std::span<const double> input, std::size_t label,
                         double weight, Gradients* grads) {
  if (label >= model.class_count()) throw ArgumentError("label index out of range");
  const Activations act = run_forward(model, input);
  const double loss = -weight * log_softmax_at(act.values.back(), label);
  if (!grads) return loss;

  std::vector<double> delta = act.probs;
  delta[label] -= 1.0;
  for (double& d : delta) d *= weight;
  for (std::size_t l = model.layers.size(); l-- > 0;) {
    const DenseLayer& layer = model.layers[l];
    DenseLayer& g = grads->layers[l];
    const std::vector<double>& in = act.values[l];
    for (std::size_t r = 0; r < layer.outputs; ++r) {
      if (delta[r] == 0.0) continue;
      simd::axpy(delta[r], in, g.row(r));
      g.bias[r] += delta[r];
    }
    if (l == 0) break;
    std::vector<double> prev(layer.inputs, 0.0);
    for (std::size_t r = 0; r < layer.outputs; ++r) {
      if (delta[r] != 0.0) simd::axpy(delta[r], layer.row(r), prev);
    }
    // ReLU derivative, taken as 0 at the kink.
    for (std::size_t i = 0; i < prev.size(); ++i) {
      if (!(in[i] > 0.0)) prev[i] = 0.0;
    }
    delta = std::move(prev);
  }
  return loss;
}

std::vector<double> inverse_frequency_weights(std::span<const Sample> samples, std::size_t classes) {
  std::vector<std::size_t> counts(classes, 0);
  for (const auto& s : samples) ++counts[s.label];
  const auto present = static_cast<double>(std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
  std::vector<double> weights(classes, 1.0);
  for (std::size_t c = 0; c < classes; ++c) {
    if (counts[c] > 0) {
      weights[c] = static_cast<double>(samples.size()) / (present * static_cast<double>(counts[c]));
    }
  }
  return weights;
}

namespace {

void fit_standardization(MlpModel& model, std::span<const Sample> samples) {
  const std::size_t dim = model.input_dim();
  std::vector<double> mean(dim, 0.0), var(dim, 0.0);
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < dim; ++i) mean[i] += s.input[i];
  }
  for (double& m : mean) m /= static_cast<double>(samples.size());
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < dim; ++i) var[i] += (s.input[i] - mean[i]) * (s.input[i] - mean[i]);
  }
  model.input_shift = mean;
  model.input_scale.assign(dim, 1.0);
  for (std::size_t i = 0; i < dim; ++i) {
    const double sd = std::sqrt(var[i] / static_cast<double>(samples.size()));
    if (sd > 1e-12) model.input_scale[i] = 1.0 / sd;
  }
}

std::size_t predicted_class(const MlpModel& model, std::span<const double> input) {
  const std::vector<double> probs = forward(model, input);
  return static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

double validation_macro_f1(const MlpModel& model, std::span<const Sample> samples) {
  std::vector<std::size_t> gold, pred;
  for (const auto& s : samples) {
    gold.push_back(s.label);
    pred.push_back(predicted_class(model, s.input));
  }
  return macro_f1(gold, pred, model.class_count());
}

}  // namespace

TrainResult train(MlpModel model, std::span<const Sample> train_set,
                  std::span<const Sample> validation_set, const TrainConfig& config) {
  if (train_set.empty()) throw ArgumentError("train: empty training set");
  if (config.epochs < 1 || config.batch_size < 1 || config.patience < 1 ||
      !(config.learning_rate > 0.0)) {
    throw ArgumentError("train: epochs, batch size, patience and learning rate must be positive");
  }
  for (const auto* set : {&train_set, &validation_set}) {
    for (const auto& s : *set) {
      if (s.label >= model.class_count()) throw ArgumentError("train: label outside class count");
      if (s.input.size() != model.input_dim()) throw DimensionError("train: sample has wrong input length");
    }
  }
  if (config.standardize) fit_standardization(model, train_set);
  const std::vector<double> class_weight =
      config.class_weights == ClassWeighting::kInverseFrequency
          ? inverse_frequency_weights(train_set, model.class_count())
          : std::vector<double>(model.class_count(), 1.0);

  TrainResult result;
  MlpModel best = model;
  double best_f1 = -1.0;
  std::size_t stale = 0;
  Rng rng(config.seed);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Gradients grads(model);

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      grads.zero();
      for (std::size_t k = start; k < end; ++k) {
        const Sample& s = train_set[order[k]];
        epoch_loss += loss_and_gradient(model, s.input, s.label, class_weight[s.label], &grads);
      }
      const double step = -config.learning_rate / static_cast<double>(end - start);
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        simd::axpy(step, grads.layers[l].weights, model.layers[l].weights);
        simd::axpy(step, grads.layers[l].bias, model.layers[l].bias);
      }
    }
    epoch_loss /= static_cast<double>(train_set.size());
    if (!std::isfinite(epoch_loss)) {
      throw Error("train: loss became " + std::to_string(epoch_loss) + " at epoch " +
                  std::to_string(epoch) + "; lower the learning rate");
    }
    EpochRecord record{epoch, epoch_loss, std::nan("")};
    if (!validation_set.empty()) {
      record.validation_macro_f1 = validation_macro_f1(model, validation_set);
      if (record.validation_macro_f1 > best_f1) {
        best_f1 = record.validation_macro_f1;
        best = model;
        result.best_epoch = epoch;
        stale = 0;
      } else {
        ++stale;
      }
    } else {
      result.best_epoch = epoch;
    }
    result.history.push_back(record);
    if (!validation_set.empty() && stale >= config.patience) break;
  }
  result.model = validation_set.empty() ? std::move(model) : std::move(best);
  return result;
}

double gradient_check(const MlpModel& model, std::span<const double> input, std::size_t label,
                      double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("gradient_check: epsilon must be positive");
  Gradients analytic(model);
  loss_and_gradient(model, input, label, 1.0, &analytic);
  MlpModel probe = model;
  double worst = 0.0;
  auto check = [&](double& param, double grad) {
    const double saved = param;
    param = saved + epsilon;
    const double up = loss_and_gradient(probe, input, label, 1.0, nullptr);
    param = saved - epsilon;
    const double down = loss_and_gradient(probe, input, label, 1.0, nullptr);
    param = saved;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double denom = std::max({std::abs(grad), std::abs(numeric), 1e-8});
    worst = std::max(worst, std::abs(grad - numeric) / denom);
  };
  for (std::size_t l = 0; l < probe.layers.size(); ++l) {
    for (std::size_t i = 0; i < probe.layers[l].weights.size(); ++i) {
      check(probe.layers[l].weights[i], analytic.layers[l].weights[i]);
    }
    for (std::size_t i = 0; i < probe.layers[l].bias.size(); ++i) {
      check(probe.layers[l].bias[i], analytic.layers[l].bias[i]);
    }
  }
  return worst;
}

nlohmann::json model_to_json(const MlpModel& model) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : model.layers) {
    layers.push_back({{"inputs", layer.inputs},
                      {"outputs", layer.outputs},
                      {"weights", layer.weights},
                      {"bias", layer.bias}});
  }
  return {{"format_version", kModelFormatVersion},
          {"layer_dims", model.layer_dims},
          {"activation", model.activation},
          {"seed", model.seed},
          {"classes", model.classes},
          {"feature_spec",
           {{"feature_set", model.feature_spec.feature_set},
            {"feature_length", model.feature_spec.feature_length},
            {"embedding_length", model.feature_spec.embedding_length}}},
          {"input_shift", model.input_shift},
          {"input_scale", model.input_scale},
          {"layers", layers}};
}

MlpModel model_from_json(const nlohmann::json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw LoadError("model format version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kModelFormatVersion) + ")");
    }
    MlpModel model;
    model.layer_dims = j.at("layer_dims").get<std::vector<std::size_t>>();
    model.activation = j.at("activation").get<std::string>();
    if (model.activation != "relu") throw LoadError("unsupported activation " + model.activation);
    model.seed = j.at("seed").get<std::uint64_t>();
    model.classes = j.at("classes").get<std::vector<std::string>>();
    const auto& spec = j.at("feature_spec");
    model.feature_spec.feature_set = spec.at("feature_set").get<std::string>();
    model.feature_spec.feature_length = spec.at("feature_length").get<std::size_t>();
    model.feature_spec.embedding_length = spec.at("embedding_length").get<std::size_t>();
    model.input_shift = j.at("input_shift").get<std::vector<double>>();
    model.input_scale = j.at("input_scale").get<std::vector<double>>();
    for (const auto& lj : j.at("layers")) {
      DenseLayer layer;
      layer.inputs = lj.at("inputs").get<std::size_t>();
      layer.outputs = lj.at("outputs").get<std::size_t>();
      layer.weights = lj.at("weights").get<std::vector<double>>();
      layer.bias = lj.at("bias").get<std::vector<double>>();
      model.layers.push_back(std::move(layer));
    }
    if (model.layer_dims.size() < 2 || model.layers.size() + 1 != model.layer_dims.size()) {
      throw LoadError("layer_dims and layers disagree");
    }
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
      const DenseLayer& layer = model.layers[l];
      if (layer.inputs != model.layer_dims[l] || layer.outputs != model.layer_dims[l + 1] ||
          layer.weights.size() != layer.inputs * layer.outputs || layer.bias.size() != layer.outputs) {
        throw LoadError("layer " + std::to_string(l) + " has inconsistent shapes");
      }
    }
    if (model.feature_spec.input_length() != model.input_dim()) {
      throw LoadError("feature_spec does not match the input layer");
    }
    if (!model.input_shift.empty() &&
        (model.input_shift.size() != model.input_dim() || model.input_scale.size() != model.input_dim())) {
      throw LoadError("input standardization has the wrong length");
    }
    if (!model.classes.empty() && model.classes.size() != model.class_count()) {
      throw LoadError("class names do not match the output layer");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("corrupt model file: ") + e.what());
  }
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model " + path.string());
  out << model_to_json(model).dump() << '\n';
}

MlpModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open model " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw LoadError("corrupt model file " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace dualemo
