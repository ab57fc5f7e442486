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

#include "refexp/pipeline.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "refexp/error.hpp"
#include "refexp/relation_networks.hpp"

namespace refexp {

namespace {

bool by_key(const SpatialRelation& a, const SpatialRelation& b) {
  return std::tie(a.target_id, a.reference_id, a.category) <
         std::tie(b.target_id, b.reference_id, b.category);
}

/// Strict "a beats b" for argmax selection: higher confidence, then lower
/// reference id, then lower category index.
bool beats(const SpatialRelation& a, const SpatialRelation& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.reference_id != b.reference_id) return a.reference_id < b.reference_id;
  return index_of(a.category) < index_of(b.category);
}

}  // namespace

std::vector<SpatialRelation> RelationSets::present_for(ObjectId id) const {
  std::vector<SpatialRelation> out;
  for (const auto& r : present) {
    if (r.target_id == id) out.push_back(r);
  }
  return out;
}

RelationSets build_candidate_sets(std::span<const SpatialRelation> relations, ObjectId target_id,
                                  const PipelineConfig& cfg) {
  cfg.validate();
  RelationSets sets;
  sets.target_id = target_id;
  for (const auto& r : relations) {
    if (r.probability > cfg.presence_threshold) sets.present.push_back(r);
  }
  std::sort(sets.present.begin(), sets.present.end(), by_key);

  std::map<std::pair<ObjectId, RelationCategory>, SpatialRelation> best;
  for (const auto& r : sets.present) {
    if (r.target_id == target_id) sets.target_candidates.push_back(r);
    auto [it, inserted] = best.try_emplace({r.target_id, r.category}, r);
    if (!inserted && beats(r, it->second)) it->second = r;
  }
  for (const auto& [key, r] : best) sets.most_confident.push_back(r);
  std::sort(sets.most_confident.begin(), sets.most_confident.end(), by_key);

  for (const auto& r : sets.most_confident) {
    const bool in_target_set = std::binary_search(sets.target_candidates.begin(),
                                                  sets.target_candidates.end(), r, by_key);
    if (!in_target_set) sets.resemblance_pool.push_back(r);
  }
  return sets;
}

std::vector<SpatialRelation> eliminate_ambiguous(const RelationSets& sets, const Scene& scene) {
  const auto& target_type = scene.at(sets.target_id).type_name;
  std::vector<SpatialRelation> kept;
  for (const auto& candidate : sets.target_candidates) {
    const auto& reference_type = scene.at(candidate.reference_id).type_name;
    const bool resembles = std::any_of(
        sets.resemblance_pool.begin(), sets.resemblance_pool.end(), [&](const SpatialRelation& other) {
          return other.category == candidate.category &&
                 scene.at(other.target_id).type_name == target_type &&
                 scene.at(other.reference_id).type_name == reference_type;
        });
    if (!resembles) kept.push_back(candidate);
  }
  return kept;
}

SpatialRelation select_relation(std::span<const SpatialRelation> candidates, ObjectId target_id) {
  if (candidates.empty()) throw EmptyCandidates(target_id);
  const SpatialRelation* best = &candidates.front();
  for (const auto& c : candidates.subspan(1)) {
    if (beats(c, *best)) best = &c;
  }
  return *best;
}

ReferringExpression describe_relations(std::span<const SpatialRelation> relations, const Scene& scene,
                                       ObjectId target_id, const PipelineConfig& cfg) {
  scene.at(target_id);
  const auto sets = build_candidate_sets(relations, target_id, cfg);
  const auto survivors = eliminate_ambiguous(sets, scene);
  const auto chosen = select_relation(survivors, target_id);
  return make_expression(scene, chosen.target_id, chosen.reference_id, chosen.category);
}

ReferringExpression describe(const MlpModel& rpn, const MlpModel& rin, const Scene& scene,
                             ObjectId target_id, const PipelineConfig& cfg) {
  cfg.validate();
  if (scene.size() < 2) throw InvalidScene("scene needs at least two objects");
  scene.at(target_id);
  const auto relations = score_scene(rpn, rin, scene);
  return describe_relations(relations, scene, target_id, cfg);
}

}  // namespace refexp
