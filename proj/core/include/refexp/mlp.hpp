// Copyright 2026 The refexp Authors. All Rights Reserved.
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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace refexp {

enum class Activation : std::uint8_t { ReLU, Softmax, Sigmoid, Identity };

std::string_view to_string(Activation a) noexcept;
std::optional<Activation> parse_activation(std::string_view name) noexcept;

struct LayerSpec {
  int input_dim = 0;
  int output_dim = 0;
  Activation activation = Activation::Identity;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Fully connected layer. `weights` is row-major, output_dim x input_dim.
struct DenseLayer {
  int input_dim = 0;
  int output_dim = 0;
  Activation activation = Activation::Identity;
  std::vector<double> weights;
  std::vector<double> bias;

  double weight(int out, int in) const { return weights[static_cast<std::size_t>(out) * input_dim + in]; }
  LayerSpec spec() const { return {input_dim, output_dim, activation}; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

inline constexpr double kDefaultDropout = 0.2;

/// A small feed-forward network.
///
/// The constructor checks that layer dimensions chain, that every weight is
/// finite and that the dropout rate lies in [0, 1). Dropout only ever applies
/// while training, and only to hidden activations: every hidden layer's
/// output is dropped before it feeds the next layer, while the input features
/// are kept whole. `forward` is deterministic.
class MlpModel {
 public:
  explicit MlpModel(std::vector<DenseLayer> layers, double dropout_rate = kDefaultDropout);

  /// Glorot-uniform weights in +-sqrt(6 / (in + out)), zero biases.
  static MlpModel initialized(std::span<const LayerSpec> specs, std::uint64_t seed,
                              double dropout_rate = kDefaultDropout);
  static MlpModel zeros(std::span<const LayerSpec> specs, double dropout_rate = kDefaultDropout);

  std::span<const DenseLayer> layers() const noexcept { return layers_; }
  DenseLayer& layer(std::size_t i) { return layers_.at(i); }
  const DenseLayer& layer(std::size_t i) const { return layers_.at(i); }

  double dropout_rate() const noexcept { return dropout_rate_; }
  int input_dim() const noexcept { return layers_.front().input_dim; }
  int output_dim() const noexcept { return layers_.back().output_dim; }
  Activation head() const noexcept { return layers_.back().activation; }
  std::size_t parameter_count() const noexcept;
  std::vector<LayerSpec> specs() const;

  /// Inference pass. Throws DimensionMismatch.
  std::vector<double> forward(std::span<const double> input) const;

  friend bool operator==(const MlpModel&, const MlpModel&) = default;

 private:
  std::vector<DenseLayer> layers_;
  double dropout_rate_;
};

inline std::vector<double> forward(const MlpModel& model, std::span<const double> input) {
  return model.forward(input);
}

struct Example {
  std::vector<double> input;
  int label = 0;
};

using Dataset = std::vector<Example>;

struct TrainConfig {
  double learning_rate = 0.1;
  int batch_size = 32;
  int max_epochs = 300;
  /// Epochs without a validation-accuracy improvement before stopping.
  int patience = 30;
  std::uint64_t seed = 0;
  double validation_fraction = 0.15;

  /// Throws InvalidArgument.
  void validate() const;
};

struct TrainReport {
  std::vector<double> train_accuracy;       // one per completed epoch
  std::vector<double> validation_accuracy;  // one per completed epoch
  int best_epoch = 0;                       // 1-based
  int stopped_epoch = 0;
  double best_validation_accuracy = 0;
  std::size_t train_size = 0;
  std::size_t validation_size = 0;
};

struct TrainResult {
  MlpModel model;
  TrainReport report;
};

/// Mini-batch SGD on cross-entropy, with inverted dropout on the hidden
/// activations and early stopping on validation accuracy.
///
/// The loss follows the head: categorical cross-entropy for Softmax, binary
/// cross-entropy for Sigmoid and half squared error otherwise. Labels are
/// class indices, or 0/1 for a single-output Sigmoid head. The returned model
/// is the snapshot with the best validation accuracy. Identical inputs give
/// bit-identical weights.
///
/// Throws EmptyDataset, LabelOutOfRange, DimensionMismatch or InvalidArgument.
TrainResult train(const Dataset& dataset, std::span<const LayerSpec> specs, const TrainConfig& cfg);

/// Same as `train` but starting from `initial` instead of fresh weights.
TrainResult train_from(MlpModel initial, const Dataset& dataset, const TrainConfig& cfg);

/// Fraction of examples classified correctly (argmax, or > 0.5 for a
/// single-output Sigmoid head). Returns 0 for an empty dataset.
double accuracy(const MlpModel& model, const Dataset& dataset);

int predict_class(const MlpModel& model, std::span<const double> input);

/// Training loss of one example, without dropout.
double loss(const MlpModel& model, std::span<const double> input, int label);

/// Analytic gradient of `loss` with respect to every parameter, flattened
/// layer by layer as (weights, bias).
std::vector<double> loss_gradient(const MlpModel& model, std::span<const double> input, int label);

/// Largest |analytic - numeric| / (|analytic| + |numeric| + 1e-8) over all
/// parameters, with central differences of width 2 * `step` evaluated in
/// extended precision.
double gradient_check(const MlpModel& model, std::span<const double> input, int label,
                      double step = 1e-5);

/// Versioned JSON weights file.
std::string model_to_json(const MlpModel& model);
/// Throws FormatError naming the offending field.
MlpModel model_from_json(std::string_view text);
void save(const MlpModel& model, const std::filesystem::path& path);
MlpModel load(const std::filesystem::path& path);

}  // namespace refexp
