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

#include <span>
#include <vector>

#include "refexp/mlp.hpp"
#include "refexp/scene.hpp"

namespace refexp {

/// Candidate sets for one target, all sorted by (target, reference, category).
struct RelationSets {
  ObjectId target_id = 0;
  /// Every relation in the scene whose presence probability is strictly above
  /// the threshold.
  std::vector<SpatialRelation> present;
  /// Present relations with the target on the subject side.
  std::vector<SpatialRelation> target_candidates;
  /// For every (subject, category), the present relation with the highest
  /// confidence; ties go to the lowest reference id.
  std::vector<SpatialRelation> most_confident;
  /// `most_confident` minus `target_candidates`: the confident relations of
  /// every other object, against which the target's candidates are compared.
  std::vector<SpatialRelation> resemblance_pool;

  /// Present relations whose subject is `id`.
  std::vector<SpatialRelation> present_for(ObjectId id) const;
};

RelationSets build_candidate_sets(std::span<const SpatialRelation> relations, ObjectId target_id,
                                  const PipelineConfig& cfg);

/// Drops every target candidate that resembles a relation in the resemblance
/// pool: same subject type, same reference type, same category. A single pass
/// against the original pool.
std::vector<SpatialRelation> eliminate_ambiguous(const RelationSets& sets, const Scene& scene);

/// Most confident candidate; ties go to the lowest reference id, then the
/// lowest category index. Throws EmptyCandidates if `candidates` is empty.
SpatialRelation select_relation(std::span<const SpatialRelation> candidates, ObjectId target_id = -1);

/// Full selection over already-scored relations.
ReferringExpression describe_relations(std::span<const SpatialRelation> relations, const Scene& scene,
                                       ObjectId target_id, const PipelineConfig& cfg);

/// Scores the scene with both networks and selects the most informative
/// unambiguous relation for the target.
///
/// Throws UnknownObject, InvalidScene (fewer than two objects),
/// ShapeMismatch, or EmptyCandidates.
ReferringExpression describe(const MlpModel& rpn, const MlpModel& rin, const Scene& scene,
                             ObjectId target_id, const PipelineConfig& cfg);

}  // namespace refexp
