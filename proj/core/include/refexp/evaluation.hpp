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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refexp/mlp.hpp"
#include "refexp/scene.hpp"

namespace refexp {

enum class Ambiguity { Unambiguous, Ambiguous };

std::string_view to_string(Ambiguity a) noexcept;

/// What an expression says, independent of which objects produced it.
struct ExpressionSignature {
  std::string target_type;
  std::string reference_type;
  RelationCategory category = RelationCategory::Right;
};

/// Objects of `target_type` for which some other object of `reference_type`
/// satisfies the geometric rule for `category`. Ascending id.
///
/// Throws InvalidArgument if either type does not occur in the scene.
std::vector<ObjectId> matching_targets(const Scene& scene, const ExpressionSignature& signature);

/// Rule-based judge: the expression is unambiguous iff the intended target is
/// the only object it matches. An expression that matches other objects, or
/// does not match the intended target at all, is ambiguous.
Ambiguity ambiguity_oracle(const Scene& scene, ObjectId intended_target, const ExpressionSignature& signature);
Ambiguity ambiguity_oracle(const Scene& scene, const ReferringExpression& expression);

/// Which objects `compare` uses as targets.
enum class TargetSelection {
  All,
  /// Only objects whose type occurs more than once in their scene.
  Duplicated,
};

std::string_view to_string(TargetSelection t) noexcept;
std::optional<TargetSelection> parse_target_selection(std::string_view name) noexcept;

struct MethodCounts {
  std::size_t unambiguous = 0;
  std::size_t ambiguous = 0;
  std::size_t no_expression = 0;

  std::size_t total() const noexcept { return unambiguous + ambiguous + no_expression; }
  /// Unambiguous over all targets, failures included.
  double unambiguous_rate() const noexcept;
  /// Unambiguous over the targets that received an expression.
  double expression_unambiguous_rate() const noexcept;
  double no_expression_rate() const noexcept;

  friend bool operator==(const MethodCounts&, const MethodCounts&) = default;
};

struct MethodOutcome {
  std::optional<ReferringExpression> expression;  // nullopt: no expression
  std::optional<Ambiguity> ambiguity;             // set iff expression is

  friend bool operator==(const MethodOutcome&, const MethodOutcome&) = default;
};

struct EvalRecord {
  std::size_t scene_index = 0;
  ObjectId target_id = 0;
  MethodOutcome ours;
  MethodOutcome krreg;
  /// Both methods produced the same phrase.
  bool agree = false;

  friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

struct EvalReport {
  std::size_t scenes = 0;
  /// Scenes with fewer than two objects, which have no describable target.
  std::size_t skipped_scenes = 0;
  TargetSelection targets = TargetSelection::All;
  MethodCounts ours;
  MethodCounts krreg;
  std::size_t agreements = 0;
  /// Sorted by (scene_index, target_id).
  std::vector<EvalRecord> records;

  double agreement_rate() const noexcept;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Runs both generators on every selected target of every scene and judges
/// each expression with the ambiguity oracle.
EvalReport compare(const MlpModel& rpn, const MlpModel& rin, std::span<const Scene> scenes,
                   const PipelineConfig& cfg, TargetSelection targets = TargetSelection::All);

/// `{ "target_id", "reference_id", "relation", "phrase" }`, compact.
std::string expression_to_json(const ReferringExpression& expression);
/// `{ "error": code, "target_id": id, "message": text }`, compact.
std::string error_to_json(std::string_view code, ObjectId target_id, std::string_view message);

/// Indented JSON with totals, rates and per-target records.
std::string report_to_json(const EvalReport& report);
/// Fixed-width plain-text summary.
std::string report_summary(const EvalReport& report);

}  // namespace refexp
