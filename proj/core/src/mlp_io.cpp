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

#include <cmath>

#include "json_internal.hpp"
#include "refexp/mlp.hpp"
#include "refexp/scene_io.hpp"

namespace refexp {

namespace {

using detail::json;

constexpr int kFormatVersion = 1;

std::vector<double> number_array(const json& layer, const char* field, const std::string& ctx) {
  auto it = layer.find(field);
  if (it == layer.end()) throw FormatError(ctx + "." + field, "missing required field");
  const auto& v = *it;
  if (!v.is_array()) throw FormatError(ctx + "." + field, "expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw FormatError(ctx + "." + field, "expected numbers");
    const double d = x.get<double>();
    if (!std::isfinite(d)) throw FormatError(ctx + "." + field, "non-finite value");
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::string model_to_json(const MlpModel& model) {
  json layers = json::array();
  for (const auto& l : model.layers()) {
    layers.push_back({{"in", l.input_dim},
                      {"out", l.output_dim},
                      {"activation", to_string(l.activation)},
                      {"w", l.weights},
                      {"b", l.bias}});
  }
  json doc = {{"version", kFormatVersion}, {"dropout", model.dropout_rate()}, {"layers", std::move(layers)}};
  return doc.dump() + "\n";
}

MlpModel model_from_json(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw FormatError("", "weights file must be a JSON object");
  if (detail::require_integer(doc, "version") != kFormatVersion) {
    throw FormatError("version", "unsupported version");
  }
  const double dropout = detail::require_number(doc, "dropout");
  if (!(dropout >= 0 && dropout < 1)) throw FormatError("dropout", "must lie in [0, 1)");

  const auto& layers = detail::require(doc, "layers");
  if (!layers.is_array() || layers.empty()) throw FormatError("layers", "expected a non-empty array");

  std::vector<DenseLayer> parsed;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const std::string ctx = "layers[" + std::to_string(k) + "]";
    const auto& l = layers[k];
    if (!l.is_object()) throw FormatError(ctx, "expected an object");
    DenseLayer layer;
    try {
      const auto in = detail::require_integer(l, "in");
      const auto out = detail::require_integer(l, "out");
      if (in <= 0 || in > 1 << 20) throw FormatError("in", "must be positive");
      if (out <= 0 || out > 1 << 20) throw FormatError("out", "must be positive");
      layer.input_dim = static_cast<int>(in);
      layer.output_dim = static_cast<int>(out);
      const auto act = parse_activation(detail::require_string(l, "activation"));
      if (!act) throw FormatError("activation", "unknown activation");
      layer.activation = *act;
    } catch (const FormatError& e) {
      throw FormatError(ctx + "." + e.field(), e.message());
    }
    layer.weights = number_array(l, "w", ctx);
    layer.bias = number_array(l, "b", ctx);
    if (layer.weights.size() != static_cast<std::size_t>(layer.input_dim) * layer.output_dim) {
      throw FormatError(ctx + ".w", "expected " + std::to_string(layer.input_dim * layer.output_dim) +
                                        " values, found " + std::to_string(layer.weights.size()));
    }
    if (layer.bias.size() != static_cast<std::size_t>(layer.output_dim)) {
      throw FormatError(ctx + ".b", "expected " + std::to_string(layer.output_dim) + " values, found " +
                                        std::to_string(layer.bias.size()));
    }
    if (!parsed.empty() && parsed.back().output_dim != layer.input_dim) {
      throw FormatError(ctx + ".in", "does not match previous layer output " +
                                         std::to_string(parsed.back().output_dim));
    }
    parsed.push_back(std::move(layer));
  }
  return MlpModel(std::move(parsed), dropout);
}

void save(const MlpModel& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model));
}

MlpModel load(const std::filesystem::path& path) { return model_from_json(read_text_file(path)); }

}  // namespace refexp
