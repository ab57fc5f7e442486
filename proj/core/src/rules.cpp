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

#include "refexp/rules.hpp"

#include <algorithm>

namespace refexp {

namespace {

// The two slacks (lhs - rhs of each inequality) for a category's rule.
std::pair<double, double> slacks(const BoundingBox& t, const BoundingBox& r,
                                 RelationCategory c) noexcept {
  const double left_edge = t.x - r.x;
  const double right_edge = t.right() - r.right();
  const double top_edge = t.y - r.y;
  const double bottom_edge = t.bottom() - r.bottom();
  switch (c) {
    case RelationCategory::Right: return {left_edge, right_edge};
    case RelationCategory::Left: return {-left_edge, -right_edge};
    case RelationCategory::OnTop: return {left_edge, -right_edge};
    case RelationCategory::AtBottom: return {-left_edge, right_edge};
    case RelationCategory::InFront: return {top_edge, bottom_edge};
    case RelationCategory::Behind: return {-top_edge, -bottom_edge};
  }
  return {0, 0};
}

bool is_horizontal(RelationCategory c) noexcept {
  return c != RelationCategory::InFront && c != RelationCategory::Behind;
}

}  // namespace

bool rule_holds(const BoundingBox& target, const BoundingBox& reference,
                RelationCategory category) noexcept {
  switch (category) {
    case RelationCategory::Right:
      return target.x > reference.x && target.x + target.w > reference.x + reference.w;
    case RelationCategory::Left:
      return target.x < reference.x && target.x + target.w < reference.x + reference.w;
    case RelationCategory::OnTop:
      return target.x > reference.x && target.x + target.w < reference.x + reference.w;
    case RelationCategory::AtBottom:
      return target.x < reference.x && target.x + target.w > reference.x + reference.w;
    case RelationCategory::InFront:
      return target.y > reference.y && target.y + target.h > reference.y + reference.h;
    case RelationCategory::Behind:
      return target.y < reference.y && target.y + target.h < reference.y + reference.h;
  }
  return false;
}

std::vector<RelationCategory> rule_relations(const BoundingBox& target,
                                             const BoundingBox& reference) {
  std::vector<RelationCategory> out;
  for (auto c : kAllCategories) {
    if (rule_holds(target, reference, c)) out.push_back(c);
  }
  return out;
}

PerCategory<RuleVerdict> rule_verdicts(const BoundingBox& target,
                                       const BoundingBox& reference) noexcept {
  PerCategory<RuleVerdict> out{};
  for (auto c : kAllCategories) out[index_of(c)] = {c, rule_holds(target, reference, c)};
  return out;
}

double rule_margin(const BoundingBox& target, const BoundingBox& reference,
                   RelationCategory category, double image_width, double image_height) noexcept {
  auto [a, b] = slacks(target, reference, category);
  const double scale = is_horizontal(category) ? image_width : image_height;
  return std::min(a, b) / scale;
}

std::optional<RelationCategory> dominant_relation(const BoundingBox& target,
                                                  const BoundingBox& reference,
                                                  double image_width, double image_height,
                                                  double min_margin) {
  std::optional<RelationCategory> best;
  double best_margin = 0;
  double runner_up = -1;
  for (auto c : kAllCategories) {
    if (!rule_holds(target, reference, c)) continue;
    const double m = rule_margin(target, reference, c, image_width, image_height);
    if (!best || m > best_margin) {
      if (best) runner_up = best_margin;
      best = c;
      best_margin = m;
    } else {
      runner_up = std::max(runner_up, m);
    }
  }
  if (!best || best_margin < min_margin) return std::nullopt;
  if (runner_up >= 0 && best_margin - runner_up < min_margin) return std::nullopt;
  return best;
}

}  // namespace refexp
