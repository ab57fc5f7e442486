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

#include "refexp/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "refexp/error.hpp"
#include "refexp/random.hpp"

namespace refexp {

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Softmax: return "softmax";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Identity: return "identity";
  }
  return "unknown";
}

std::optional<Activation> parse_activation(std::string_view name) noexcept {
  for (auto a : {Activation::ReLU, Activation::Softmax, Activation::Sigmoid, Activation::Identity}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Model

MlpModel::MlpModel(std::vector<DenseLayer> layers, double dropout_rate)
    : layers_(std::move(layers)), dropout_rate_(dropout_rate) {
  if (layers_.empty()) throw InvalidArgument("model needs at least one layer");
  if (!(dropout_rate_ >= 0 && dropout_rate_ < 1)) {
    throw InvalidArgument("dropout rate must lie in [0, 1)");
  }
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const auto& l = layers_[k];
    const std::string where = "layer " + std::to_string(k);
    if (l.input_dim <= 0 || l.output_dim <= 0) {
      throw DimensionMismatch(where + ": dimensions must be positive");
    }
    if (l.weights.size() != static_cast<std::size_t>(l.input_dim) * l.output_dim) {
      throw DimensionMismatch(where + ": weight count does not match in x out");
    }
    if (l.bias.size() != static_cast<std::size_t>(l.output_dim)) {
      throw DimensionMismatch(where + ": bias count does not match out");
    }
    if (k > 0 && layers_[k - 1].output_dim != l.input_dim) {
      throw DimensionMismatch(where + ": input " + std::to_string(l.input_dim) +
                              " does not match previous output " +
                              std::to_string(layers_[k - 1].output_dim));
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(l.weights.begin(), l.weights.end(), finite) ||
        !std::all_of(l.bias.begin(), l.bias.end(), finite)) {
      throw InvalidArgument(where + ": non-finite parameter");
    }
  }
}

MlpModel MlpModel::initialized(std::span<const LayerSpec> specs, std::uint64_t seed,
                               double dropout_rate) {
  Rng rng(seed);
  std::vector<DenseLayer> layers;
  for (const auto& s : specs) {
    DenseLayer l{s.input_dim, s.output_dim, s.activation, {}, {}};
    if (s.input_dim <= 0 || s.output_dim <= 0) throw DimensionMismatch("layer dimensions must be positive");
    const double limit = std::sqrt(6.0 / (s.input_dim + s.output_dim));
    l.weights.resize(static_cast<std::size_t>(s.input_dim) * s.output_dim);
    for (auto& w : l.weights) w = rng.uniform(-limit, limit);
    l.bias.assign(static_cast<std::size_t>(s.output_dim), 0.0);
    layers.push_back(std::move(l));
  }
  return MlpModel(std::move(layers), dropout_rate);
}

MlpModel MlpModel::zeros(std::span<const LayerSpec> specs, double dropout_rate) {
  std::vector<DenseLayer> layers;
  for (const auto& s : specs) {
    if (s.input_dim <= 0 || s.output_dim <= 0) throw DimensionMismatch("layer dimensions must be positive");
    layers.push_back({s.input_dim, s.output_dim, s.activation,
                      std::vector<double>(static_cast<std::size_t>(s.input_dim) * s.output_dim, 0.0),
                      std::vector<double>(static_cast<std::size_t>(s.output_dim), 0.0)});
  }
  return MlpModel(std::move(layers), dropout_rate);
}

std::size_t MlpModel::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

std::vector<LayerSpec> MlpModel::specs() const {
  std::vector<LayerSpec> out;
  for (const auto& l : layers_) out.push_back(l.spec());
  return out;
}

namespace {

template <typename T>
void affine(const DenseLayer& l, const std::vector<T>& in, std::vector<T>& z) {
  z.resize(static_cast<std::size_t>(l.output_dim));
  const double* w = l.weights.data();
  for (int o = 0; o < l.output_dim; ++o) {
    T acc = l.bias[static_cast<std::size_t>(o)];
    for (int i = 0; i < l.input_dim; ++i) acc += static_cast<T>(w[i]) * in[static_cast<std::size_t>(i)];
    z[static_cast<std::size_t>(o)] = acc;
    w += l.input_dim;
  }
}

template <typename T>
void activate(Activation a, const std::vector<T>& z, std::vector<T>& out) {
  using std::exp;
  out.resize(z.size());
  switch (a) {
    case Activation::ReLU:
      for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] > 0 ? z[i] : T(0);
      break;
    case Activation::Identity:
      out = z;
      break;
    case Activation::Sigmoid:
      for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = z[i] >= 0 ? T(1) / (T(1) + exp(-z[i])) : exp(z[i]) / (T(1) + exp(z[i]));
      }
      break;
    case Activation::Softmax: {
      const T m = *std::max_element(z.begin(), z.end());
      T sum = 0;
      for (std::size_t i = 0; i < z.size(); ++i) sum += out[i] = exp(z[i] - m);
      for (auto& v : out) v /= sum;
      break;
    }
  }
}

void check_input(const MlpModel& m, std::span<const double> input) {
  if (input.size() != static_cast<std::size_t>(m.input_dim())) {
    throw DimensionMismatch("input has " + std::to_string(input.size()) + " components, model expects " +
                            std::to_string(m.input_dim()));
  }
}

/// Pre-activation of the last layer, computed in T.
template <typename T>
std::vector<T> output_logits(const MlpModel& m, std::span<const double> input) {
  std::vector<T> a(input.begin(), input.end()), z;
  const auto layers = m.layers();
  for (std::size_t k = 0; k < layers.size(); ++k) {
    affine(layers[k], a, z);
    if (k + 1 == layers.size()) break;
    activate(layers[k].activation, z, a);
  }
  return z;
}

int class_count(const MlpModel& m) {
  return m.output_dim() == 1 && m.head() != Activation::Softmax ? 2 : m.output_dim();
}

/// Regression-style target vector for heads trained against 0/1 targets.
template <typename T>
T target_component(const MlpModel& m, int label, std::size_t k) {
  if (m.output_dim() == 1) return static_cast<T>(label);
  return static_cast<std::size_t>(label) == k ? T(1) : T(0);
}

template <typename T>
T loss_from_logits(const MlpModel& m, const std::vector<T>& z, int label) {
  using std::exp;
  using std::log;
  using std::log1p;
  using std::abs;
  T total = 0;
  switch (m.head()) {
    case Activation::Softmax: {
      const T mx = *std::max_element(z.begin(), z.end());
      T sum = 0;
      for (const auto& v : z) sum += exp(v - mx);
      return mx + log(sum) - z[static_cast<std::size_t>(label)];
    }
    case Activation::Sigmoid:
      for (std::size_t k = 0; k < z.size(); ++k) {
        const T softplus = (z[k] > 0 ? z[k] : T(0)) + log1p(exp(-abs(z[k])));
        total += softplus - target_component<T>(m, label, k) * z[k];
      }
      return total;
    case Activation::Identity:
    case Activation::ReLU:
      for (std::size_t k = 0; k < z.size(); ++k) {
        T a = z[k];
        if (m.head() == Activation::ReLU && a < 0) a = 0;
        const T d = a - target_component<T>(m, label, k);
        total += d * d / 2;
      }
      return total;
  }
  return total;
}

// One forward pass with everything backprop needs.
struct Trace {
  std::vector<std::vector<double>> inputs;  // per layer, after dropout
  std::vector<std::vector<double>> masks;   // per layer; empty when dropout is off
  std::vector<std::vector<double>> pre;     // per layer
  std::vector<std::vector<double>> post;    // per layer
};

void forward_trace(const MlpModel& m, std::span<const double> input, Rng* dropout_rng, Trace& t) {
  const auto layers = m.layers();
  const std::size_t n = layers.size();
  t.inputs.resize(n);
  t.masks.resize(n);
  t.pre.resize(n);
  t.post.resize(n);
  const double p = m.dropout_rate();
  const bool drop = dropout_rng != nullptr && p > 0;
  const double keep_scale = 1.0 / (1.0 - p);
  t.inputs[0].assign(input.begin(), input.end());
  for (std::size_t k = 0; k < n; ++k) {
    auto& in = t.inputs[k];
    auto& mask = t.masks[k];
    // The raw features are never dropped; see MlpModel.
    if (drop && k > 0) {
      mask.resize(in.size());
      for (std::size_t i = 0; i < in.size(); ++i) {
        mask[i] = dropout_rng->bernoulli(p) ? 0.0 : keep_scale;
        in[i] *= mask[i];
      }
    } else {
      mask.clear();
    }
    affine(layers[k], in, t.pre[k]);
    activate(layers[k].activation, t.pre[k], t.post[k]);
    if (k + 1 < n) t.inputs[k + 1] = t.post[k];
  }
}

/// Accumulates d(loss)/d(params) into `grad` (flattened as in loss_gradient).
void backward(const MlpModel& m, const Trace& t, int label, std::vector<double>& grad,
              std::vector<std::size_t>& offsets, std::vector<double>& delta, std::vector<double>& upstream) {
  const auto layers = m.layers();
  const std::size_t n = layers.size();
  offsets.resize(n);
  std::size_t off = 0;
  for (std::size_t k = 0; k < n; ++k) {
    offsets[k] = off;
    off += layers[k].weights.size() + layers[k].bias.size();
  }

  // Gradient with respect to the last pre-activation.
  const auto& z = t.pre[n - 1];
  const auto& a = t.post[n - 1];
  delta.resize(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double target = target_component<double>(m, label, k);
    switch (m.head()) {
      case Activation::Softmax:
        delta[k] = a[k] - (static_cast<std::size_t>(label) == k ? 1.0 : 0.0);
        break;
      case Activation::Sigmoid:
      case Activation::Identity:
        delta[k] = a[k] - target;
        break;
      case Activation::ReLU:
        delta[k] = z[k] > 0 ? a[k] - target : 0.0;
        break;
    }
  }

  for (std::size_t k = n; k-- > 0;) {
    const auto& l = layers[k];
    const auto& in = t.inputs[k];
    double* gw = grad.data() + offsets[k];
    double* gb = gw + l.weights.size();
    for (int o = 0; o < l.output_dim; ++o) {
      const double d = delta[static_cast<std::size_t>(o)];
      gb[o] += d;
      if (d == 0) continue;
      double* row = gw + static_cast<std::size_t>(o) * l.input_dim;
      for (int i = 0; i < l.input_dim; ++i) row[i] += d * in[static_cast<std::size_t>(i)];
    }
    if (k == 0) break;

    // Back through the weights, the dropout mask, then the previous activation.
    upstream.assign(static_cast<std::size_t>(l.input_dim), 0.0);
    for (int o = 0; o < l.output_dim; ++o) {
      const double d = delta[static_cast<std::size_t>(o)];
      if (d == 0) continue;
      const double* row = l.weights.data() + static_cast<std::size_t>(o) * l.input_dim;
      for (int i = 0; i < l.input_dim; ++i) upstream[static_cast<std::size_t>(i)] += row[i] * d;
    }
    const auto& mask = t.masks[k];
    if (!mask.empty()) {
      for (std::size_t i = 0; i < upstream.size(); ++i) upstream[i] *= mask[i];
    }
    const auto& pz = t.pre[k - 1];
    const auto& pa = t.post[k - 1];
    delta.resize(upstream.size());
    switch (layers[k - 1].activation) {
      case Activation::ReLU:
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = pz[i] > 0 ? upstream[i] : 0.0;
        break;
      case Activation::Identity:
        delta = upstream;
        break;
      case Activation::Sigmoid:
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = upstream[i] * pa[i] * (1 - pa[i]);
        break;
      case Activation::Softmax: {
        double dot = 0;
        for (std::size_t i = 0; i < delta.size(); ++i) dot += upstream[i] * pa[i];
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = pa[i] * (upstream[i] - dot);
        break;
      }
    }
  }
}

void check_dataset(const MlpModel& m, const Dataset& data) {
  if (data.empty()) throw EmptyDataset("training dataset is empty");
  const int classes = class_count(m);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].input.size() != static_cast<std::size_t>(m.input_dim())) {
      throw DimensionMismatch("example " + std::to_string(i) + " has " +
                              std::to_string(data[i].input.size()) + " features, model expects " +
                              std::to_string(m.input_dim()));
    }
    if (data[i].label < 0 || data[i].label >= classes) {
      throw LabelOutOfRange("example " + std::to_string(i) + " has label " +
                            std::to_string(data[i].label) + ", expected [0, " +
                            std::to_string(classes) + ")");
    }
  }
}

double subset_accuracy(const MlpModel& m, const Dataset& data, std::span<const std::size_t> idx) {
  if (idx.empty()) return 0;
  std::size_t correct = 0;
  for (auto i : idx) correct += predict_class(m, data[i].input) == data[i].label;
  return static_cast<double>(correct) / static_cast<double>(idx.size());
}

}  // namespace

std::vector<double> MlpModel::forward(std::span<const double> input) const {
  check_input(*this, input);
  std::vector<double> a(input.begin(), input.end()), z;
  for (const auto& l : layers_) {
    affine(l, a, z);
    activate(l.activation, z, a);
  }
  return a;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0)) throw InvalidArgument("learning rate must be positive");
  if (batch_size <= 0) throw InvalidArgument("batch size must be positive");
  if (max_epochs <= 0) throw InvalidArgument("max epochs must be positive");
  if (patience <= 0) throw InvalidArgument("patience must be positive");
  if (!(validation_fraction > 0 && validation_fraction < 1)) {
    throw InvalidArgument("validation fraction must lie in (0, 1)");
  }
}

int predict_class(const MlpModel& model, std::span<const double> input) {
  const auto out = model.forward(input);
  if (out.size() == 1 && model.head() != Activation::Softmax) return out[0] > 0.5 ? 1 : 0;
  return static_cast<int>(std::max_element(out.begin(), out.end()) - out.begin());
}

double accuracy(const MlpModel& model, const Dataset& dataset) {
  std::vector<std::size_t> idx(dataset.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return subset_accuracy(model, dataset, idx);
}

double loss(const MlpModel& model, std::span<const double> input, int label) {
  check_input(model, input);
  return loss_from_logits(model, output_logits<double>(model, input), label);
}

std::vector<double> loss_gradient(const MlpModel& model, std::span<const double> input, int label) {
  check_input(model, input);
  Trace t;
  forward_trace(model, input, nullptr, t);
  std::vector<double> grad(model.parameter_count(), 0.0), delta, upstream;
  std::vector<std::size_t> offsets;
  backward(model, t, label, grad, offsets, delta, upstream);
  return grad;
}

double gradient_check(const MlpModel& model, std::span<const double> input, int label, double step) {
  const auto analytic = loss_gradient(model, input, label);
  MlpModel probe = model;
  std::size_t flat = 0;
  double worst = 0;
  auto eval = [&] {
    return loss_from_logits(probe, output_logits<long double>(probe, input), label);
  };
  auto visit = [&](double& param) {
    const double original = param;
    const double up = original + step;
    const double down = original - step;
    param = up;
    const long double loss_up = eval();
    param = down;
    const long double loss_down = eval();
    param = original;
    const double numeric = static_cast<double>((loss_up - loss_down) / (static_cast<long double>(up) - down));
    const double a = analytic[flat++];
    worst = std::max(worst, std::abs(a - numeric) / (std::abs(a) + std::abs(numeric) + 1e-8));
  };
  for (std::size_t k = 0; k < probe.layers().size(); ++k) {
    auto& l = probe.layer(k);
    for (auto& w : l.weights) visit(w);
    for (auto& b : l.bias) visit(b);
  }
  return worst;
}

TrainResult train(const Dataset& dataset, std::span<const LayerSpec> specs, const TrainConfig& cfg) {
  if (specs.empty()) throw InvalidArgument("no layers specified");
  if (dataset.empty()) throw EmptyDataset("training dataset is empty");
  // Derive the init stream from the seed so it differs from the shuffling stream.
  return train_from(MlpModel::initialized(specs, cfg.seed ^ 0x9E3779B97F4A7C15ULL), dataset, cfg);
}

TrainResult train_from(MlpModel model, const Dataset& dataset, const TrainConfig& cfg) {
  cfg.validate();
  check_dataset(model, dataset);

  Rng split_rng(cfg.seed);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  split_rng.shuffle(std::span(order));

  const std::size_t n = dataset.size();
  std::size_t n_val = 0;
  if (n >= 2) {
    n_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * cfg.validation_fraction));
    n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
  }
  std::vector<std::size_t> val(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  std::vector<std::size_t> tr(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  // A single example is both the training and the validation set.
  if (val.empty()) val = tr;

  Rng shuffle_rng(split_rng.next());
  Rng dropout_rng(split_rng.next());

  TrainReport report;
  report.train_size = tr.size();
  report.validation_size = n_val;

  MlpModel best = model;
  double best_acc = -1;
  int since_best = 0;

  std::vector<double> grad(model.parameter_count());
  std::vector<double> delta, upstream;
  std::vector<std::size_t> offsets;
  Trace trace;

  int epoch = 0;
  for (epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    shuffle_rng.shuffle(std::span(tr));
    for (std::size_t start = 0; start < tr.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(tr.size(), start + static_cast<std::size_t>(cfg.batch_size));
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t b = start; b < end; ++b) {
        const auto& ex = dataset[tr[b]];
        forward_trace(model, ex.input, &dropout_rng, trace);
        backward(model, trace, ex.label, grad, offsets, delta, upstream);
      }
      const double scale = cfg.learning_rate / static_cast<double>(end - start);
      std::size_t flat = 0;
      for (std::size_t k = 0; k < model.layers().size(); ++k) {
        auto& l = model.layer(k);
        for (auto& w : l.weights) w -= scale * grad[flat++];
        for (auto& b : l.bias) b -= scale * grad[flat++];
      }
    }

    const double train_acc = subset_accuracy(model, dataset, tr);
    const double val_acc = subset_accuracy(model, dataset, val);
    report.train_accuracy.push_back(train_acc);
    report.validation_accuracy.push_back(val_acc);
    if (val_acc > best_acc) {
      best_acc = val_acc;
      best = model;
      report.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  report.stopped_epoch = std::min(epoch, cfg.max_epochs);
  report.best_validation_accuracy = best_acc;
  return {std::move(best), std::move(report)};
}

}  // namespace refexp
