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
#include <vector>

#include "refexp/scene.hpp"

namespace refexp {

/// Symbolic geometric rule for `category` between a target and a reference
/// box. All comparisons are strict, so equal edges never satisfy a rule.
///
///   right     x_t > x_r  and  x_t + w_t > x_r + w_r
///   left      x_t < x_r  and  x_t + w_t < x_r + w_r
///   on top    x_t > x_r  and  x_t + w_t < x_r + w_r
///   at bottom x_t < x_r  and  x_t + w_t > x_r + w_r
///   in front  y_t > y_r  and  y_t + h_t > y_r + h_r
///   behind    y_t < y_r  and  y_t + h_t < y_r + h_r
///
/// "on top" and "at bottom" are defined by horizontal containment, not by
/// vertical order.
bool rule_holds(const BoundingBox& target, const BoundingBox& reference,
                RelationCategory category) noexcept;

/// Every category whose rule holds, in canonical order.
std::vector<RelationCategory> rule_relations(const BoundingBox& target,
                                             const BoundingBox& reference);

struct RuleVerdict {
  RelationCategory category;
  bool holds;
};

PerCategory<RuleVerdict> rule_verdicts(const BoundingBox& target, const BoundingBox& reference) noexcept;

/// Smaller of the two slacks in the category's rule, with x terms divided by
/// `image_width` and y terms by `image_height`. Positive exactly when the
/// rule holds.
double rule_margin(const BoundingBox& target, const BoundingBox& reference,
                   RelationCategory category, double image_width, double image_height) noexcept;

/// The holding category with the largest margin. Returns nullopt when no rule
/// holds, when the winning margin is below `min_margin`, or when the runner-up
/// is within `min_margin` of the winner.
std::optional<RelationCategory> dominant_relation(const BoundingBox& target,
                                                  const BoundingBox& reference,
                                                  double image_width, double image_height,
                                                  double min_margin = 0.0);

}  // namespace refexp
