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

#include <optional>
#include <span>
#include <vector>

#include "refexp/mlp.hpp"
#include "refexp/scene.hpp"

namespace refexp {

/// Relative referring-expression baseline: rank landmarks by size, proximity
/// and uniqueness, then take the first distinctive relation in priority order.

/// Objects of the target's type other than the target, ascending id.
std::vector<ObjectId> distractors(const Scene& scene, ObjectId target_id);

/// Every object that is neither the target nor one of its distractors.
std::vector<ObjectId> landmarks(const Scene& scene, ObjectId target_id);

struct LandmarkRank {
  ObjectId landmark_id = 0;
  /// (w * h) / (max(d, 1e-6) * max(|D_l|, 1)), sizes and distance in
  /// image-normalized units.
  double rank = 0;
  /// Distance between box centers, image-normalized.
  double distance = 0;
  /// Number of distractors of the landmark itself.
  int distractor_count = 0;
};

inline constexpr double kMinLandmarkDistance = 1e-6;

LandmarkRank rank(const Scene& scene, ObjectId target_id, ObjectId landmark_id);

/// Landmarks sorted by decreasing rank (ties: ascending id).
std::vector<LandmarkRank> ranked_landmarks(const Scene& scene, ObjectId target_id);

/// Runs the baseline over already-scored relations; only the presence
/// probabilities are consulted. Returns nullopt when no landmark offers a
/// distinctive relation.
std::optional<ReferringExpression> krreg_describe_relations(std::span<const SpatialRelation> relations,
                                                            const Scene& scene, ObjectId target_id,
                                                            const PipelineConfig& cfg);

/// Scores every ordered pair with the presence network and runs the baseline.
std::optional<ReferringExpression> krreg_describe(const MlpModel& rpn, const Scene& scene,
                                                  ObjectId target_id, const PipelineConfig& cfg);

}  // namespace refexp
