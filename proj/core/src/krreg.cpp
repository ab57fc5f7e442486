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

#include "refexp/krreg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "refexp/error.hpp"
#include "refexp/relation_networks.hpp"

namespace refexp {

std::vector<ObjectId> distractors(const Scene& scene, ObjectId target_id) {
  const auto& type = scene.at(target_id).type_name;
  std::vector<ObjectId> out;
  for (const auto& o : scene.objects()) {
    if (o.id != target_id && o.type_name == type) out.push_back(o.id);
  }
  return out;
}

std::vector<ObjectId> landmarks(const Scene& scene, ObjectId target_id) {
  const auto& type = scene.at(target_id).type_name;
  std::vector<ObjectId> out;
  for (const auto& o : scene.objects()) {
    if (o.id != target_id && o.type_name != type) out.push_back(o.id);
  }
  return out;
}

LandmarkRank rank(const Scene& scene, ObjectId target_id, ObjectId landmark_id) {
  const auto& target = scene.at(target_id);
  const auto& landmark = scene.at(landmark_id);
  const double w = landmark.box.w / scene.image_width();
  const double h = landmark.box.h / scene.image_height();
  const auto [tx, ty] = center(target.box);
  const auto [lx, ly] = center(landmark.box);
  const double dx = (lx - tx) / scene.image_width();
  const double dy = (ly - ty) / scene.image_height();
  LandmarkRank r;
  r.landmark_id = landmark_id;
  r.distance = std::sqrt(dx * dx + dy * dy);
  r.distractor_count = static_cast<int>(distractors(scene, landmark_id).size());
  r.rank = (w * h) / (std::max(r.distance, kMinLandmarkDistance) * std::max(r.distractor_count, 1));
  return r;
}

std::vector<LandmarkRank> ranked_landmarks(const Scene& scene, ObjectId target_id) {
  std::vector<LandmarkRank> out;
  for (auto id : landmarks(scene, target_id)) out.push_back(rank(scene, target_id, id));
  std::stable_sort(out.begin(), out.end(), [](const LandmarkRank& a, const LandmarkRank& b) {
    return a.rank > b.rank;
  });
  return out;
}

std::optional<ReferringExpression> krreg_describe_relations(std::span<const SpatialRelation> relations,
                                                            const Scene& scene, ObjectId target_id,
                                                            const PipelineConfig& cfg) {
  cfg.validate();
  scene.at(target_id);

  // (subject, reference, category) of every present relation.
  std::set<std::tuple<ObjectId, ObjectId, RelationCategory>> present;
  for (const auto& r : relations) {
    if (r.probability > cfg.presence_threshold) present.emplace(r.target_id, r.reference_id, r.category);
  }

  const auto distractor_ids = distractors(scene, target_id);
  const auto landmark_ids = landmarks(scene, target_id);

  // A relation to landmark l is not distinctive if some distractor holds the
  // same relation to any landmark of l's type.
  auto distinctive = [&](ObjectId landmark_id, RelationCategory c) {
    const auto& landmark_type = scene.at(landmark_id).type_name;
    for (auto d : distractor_ids) {
      for (auto j : landmark_ids) {
        if (scene.at(j).type_name == landmark_type && present.contains({d, j, c})) return false;
      }
    }
    return true;
  };

  for (const auto& lr : ranked_landmarks(scene, target_id)) {
    for (auto c : cfg.relation_priority) {
      if (!present.contains({target_id, lr.landmark_id, c})) continue;
      if (distinctive(lr.landmark_id, c)) {
        return make_expression(scene, target_id, lr.landmark_id, c);
      }
    }
  }
  return std::nullopt;
}

std::optional<ReferringExpression> krreg_describe(const MlpModel& rpn, const Scene& scene,
                                                  ObjectId target_id, const PipelineConfig& cfg) {
  cfg.validate();
  check_rpn_shape(rpn);
  if (scene.size() < 2) throw InvalidScene("scene needs at least two objects");
  scene.at(target_id);
  std::vector<SpatialRelation> relations;
  for (const auto& t : scene.objects()) {
    for (const auto& r : scene.objects()) {
      if (t.id == r.id) continue;
      const auto probs = rpn_probabilities(rpn, scene, t.id, r.id);
      for (auto c : kAllCategories) relations.push_back({t.id, r.id, c, probs[index_of(c)], 0.0});
    }
  }
  return krreg_describe_relations(relations, scene, target_id, cfg);
}

}  // namespace refexp
