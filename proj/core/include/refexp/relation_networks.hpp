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

#include <array>
#include <vector>

#include "refexp/mlp.hpp"
#include "refexp/scene.hpp"

namespace refexp {

inline constexpr int kPairFeatureDim = 8;
inline constexpr int kRinFeatureDim = kPairFeatureDim + static_cast<int>(kNumCategories);

/// (x_t, y_t, w_t, h_t, x_r, y_r, w_r, h_r), x and w divided by the image
/// width, y and h by the image height, each clamped to [0, 1].
using PairFeatures = std::array<double, kPairFeatureDim>;

/// PairFeatures followed by the category one-hot in canonical order.
using RinFeatures = std::array<double, kRinFeatureDim>;

/// Throws UnknownObject, or InvalidArgument when target == reference.
PairFeatures encode_pair(const Scene& scene, ObjectId target_id, ObjectId reference_id);

PairFeatures encode_boxes(const BoundingBox& target, const BoundingBox& reference, double image_width,
                          double image_height) noexcept;

RinFeatures encode_rin(const PairFeatures& pair, RelationCategory category) noexcept;

/// 8 -> 32 -> 16 -> 6, ReLU / ReLU / Softmax.
std::vector<LayerSpec> rpn_layer_specs();
/// 14 -> 64 -> 16 -> 8 -> 1, ReLU / ReLU / ReLU / Sigmoid.
std::vector<LayerSpec> rin_layer_specs();

/// Throw ShapeMismatch if `model` does not have the corresponding shape.
void check_rpn_shape(const MlpModel& model);
void check_rin_shape(const MlpModel& model);

/// Presence probability of each category for the ordered pair, indexed
/// canonically. Sums to one.
PerCategory<double> rpn_probabilities(const MlpModel& rpn, const Scene& scene, ObjectId target_id,
                                      ObjectId reference_id);

/// Informativeness of stating `category` for the ordered pair, in (0, 1).
double rin_confidence(const MlpModel& rin, const Scene& scene, ObjectId target_id,
                      ObjectId reference_id, RelationCategory category);

/// One SpatialRelation per ordered pair and category, sorted by
/// (target_id, reference_id, category). Throws InvalidScene with fewer than
/// two objects.
std::vector<SpatialRelation> score_scene(const MlpModel& rpn, const MlpModel& rin, const Scene& scene);

}  // namespace refexp
