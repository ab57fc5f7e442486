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

#include "refexp/relation_networks.hpp"

#include <algorithm>

#include "refexp/error.hpp"

namespace refexp {

namespace {

double unit(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

void check_shape(const MlpModel& model, const std::vector<LayerSpec>& expected, const char* name) {
  const auto actual = model.specs();
  if (actual == expected) return;
  std::string shape;
  for (const auto& s : actual) shape += std::to_string(s.input_dim) + "->";
  shape += std::to_string(actual.back().output_dim);
  throw ShapeMismatch(std::string("model does not have the ") + name + " shape (got " + shape + ")");
}

}  // namespace

PairFeatures encode_boxes(const BoundingBox& t, const BoundingBox& r, double image_width,
                          double image_height) noexcept {
  return {unit(t.x / image_width), unit(t.y / image_height), unit(t.w / image_width),
          unit(t.h / image_height), unit(r.x / image_width), unit(r.y / image_height),
          unit(r.w / image_width), unit(r.h / image_height)};
}

PairFeatures encode_pair(const Scene& scene, ObjectId target_id, ObjectId reference_id) {
  if (target_id == reference_id) {
    throw InvalidArgument("target and reference must differ (both " + std::to_string(target_id) + ")");
  }
  return encode_boxes(scene.at(target_id).box, scene.at(reference_id).box, scene.image_width(),
                      scene.image_height());
}

RinFeatures encode_rin(const PairFeatures& pair, RelationCategory category) noexcept {
  RinFeatures out{};
  std::copy(pair.begin(), pair.end(), out.begin());
  out[kPairFeatureDim + index_of(category)] = 1.0;
  return out;
}

std::vector<LayerSpec> rpn_layer_specs() {
  return {{kPairFeatureDim, 32, Activation::ReLU},
          {32, 16, Activation::ReLU},
          {16, static_cast<int>(kNumCategories), Activation::Softmax}};
}

std::vector<LayerSpec> rin_layer_specs() {
  return {{kRinFeatureDim, 64, Activation::ReLU},
          {64, 16, Activation::ReLU},
          {16, 8, Activation::ReLU},
          {8, 1, Activation::Sigmoid}};
}

void check_rpn_shape(const MlpModel& model) { check_shape(model, rpn_layer_specs(), "RPN"); }
void check_rin_shape(const MlpModel& model) { check_shape(model, rin_layer_specs(), "RIN"); }

PerCategory<double> rpn_probabilities(const MlpModel& rpn, const Scene& scene, ObjectId target_id,
                                      ObjectId reference_id) {
  check_rpn_shape(rpn);
  const auto features = encode_pair(scene, target_id, reference_id);
  const auto out = rpn.forward(features);
  PerCategory<double> probs{};
  std::copy(out.begin(), out.end(), probs.begin());
  return probs;
}

double rin_confidence(const MlpModel& rin, const Scene& scene, ObjectId target_id,
                      ObjectId reference_id, RelationCategory category) {
  check_rin_shape(rin);
  const auto features = encode_rin(encode_pair(scene, target_id, reference_id), category);
  return rin.forward(features)[0];
}

std::vector<SpatialRelation> score_scene(const MlpModel& rpn, const MlpModel& rin, const Scene& scene) {
  check_rpn_shape(rpn);
  check_rin_shape(rin);
  if (scene.size() < 2) throw InvalidScene("scene needs at least two objects");
  std::vector<SpatialRelation> out;
  out.reserve(scene.size() * (scene.size() - 1) * kNumCategories);
  // Objects are held in id order, so the nested loops emit the sorted order.
  for (const auto& t : scene.objects()) {
    for (const auto& r : scene.objects()) {
      if (t.id == r.id) continue;
      const auto pair = encode_pair(scene, t.id, r.id);
      const auto probs = rpn.forward(pair);
      for (auto c : kAllCategories) {
        const auto rin_in = encode_rin(pair, c);
        out.push_back({t.id, r.id, c, probs[index_of(c)], rin.forward(rin_in)[0]});
      }
    }
  }
  return out;
}

}  // namespace refexp
