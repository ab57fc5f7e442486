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

#include "refexp/scene.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "refexp/error.hpp"

namespace refexp {

namespace {

// Clamped boxes may overshoot the image edge by a rounding error.
constexpr double kEdgeTolerance = 1e-9;

}  // namespace

std::pair<double, double> center(const BoundingBox& box) noexcept {
  return {box.x + box.w / 2, box.y + box.h / 2};
}

std::string canonical_type_name(std::string_view name) {
  auto first = name.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = name.find_last_not_of(" \t\r\n");
  std::string out(name.substr(first, last - first + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Scene::Scene(double image_width, double image_height, std::vector<SceneObject> objects)
    : image_width_(image_width), image_height_(image_height), objects_(std::move(objects)) {
  if (!(image_width_ > 0) || !(image_height_ > 0) || !std::isfinite(image_width_) ||
      !std::isfinite(image_height_)) {
    throw InvalidScene("image dimensions must be positive");
  }
  std::sort(objects_.begin(), objects_.end(),
            [](const SceneObject& a, const SceneObject& b) { return a.id < b.id; });
  const double max_x = image_width_ * (1 + kEdgeTolerance);
  const double max_y = image_height_ * (1 + kEdgeTolerance);
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    auto& obj = objects_[i];
    if (obj.id < 0) throw InvalidScene("object id must be non-negative: " + std::to_string(obj.id));
    if (i > 0 && objects_[i - 1].id == obj.id) {
      throw InvalidScene("duplicate object id " + std::to_string(obj.id));
    }
    obj.type_name = canonical_type_name(obj.type_name);
    if (obj.type_name.empty()) {
      throw InvalidScene("object " + std::to_string(obj.id) + " has an empty type name");
    }
    const auto& b = obj.box;
    if (!std::isfinite(b.x) || !std::isfinite(b.y) || !std::isfinite(b.w) || !std::isfinite(b.h) ||
        !b.valid()) {
      throw InvalidScene("object " + std::to_string(obj.id) + " has a degenerate box");
    }
    if (b.right() > max_x || b.bottom() > max_y) {
      throw InvalidScene("object " + std::to_string(obj.id) + " lies outside the image");
    }
  }
}

bool Scene::contains(ObjectId id) const noexcept {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), id,
                             [](const SceneObject& o, ObjectId v) { return o.id < v; });
  return it != objects_.end() && it->id == id;
}

const SceneObject& Scene::at(ObjectId id) const {
  auto it = std::lower_bound(objects_.begin(), objects_.end(), id,
                             [](const SceneObject& o, ObjectId v) { return o.id < v; });
  if (it == objects_.end() || it->id != id) throw UnknownObject(id);
  return *it;
}

std::string_view to_string(RelationCategory c) noexcept {
  switch (c) {
    case RelationCategory::Right: return "right";
    case RelationCategory::Left: return "left";
    case RelationCategory::OnTop: return "on_top";
    case RelationCategory::AtBottom: return "at_bottom";
    case RelationCategory::InFront: return "in_front";
    case RelationCategory::Behind: return "behind";
  }
  return "unknown";
}

std::optional<RelationCategory> parse_category(std::string_view name) noexcept {
  for (auto c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view relation_phrase(RelationCategory c) noexcept {
  switch (c) {
    case RelationCategory::Right: return "to the right of";
    case RelationCategory::Left: return "to the left of";
    case RelationCategory::OnTop: return "on top of";
    case RelationCategory::AtBottom: return "at the bottom of";
    case RelationCategory::InFront: return "in front of";
    case RelationCategory::Behind: return "behind";
  }
  return "";
}

void PipelineConfig::validate() const {
  if (!(presence_threshold > 0 && presence_threshold < 1)) {
    throw InvalidArgument("presence threshold must lie in (0, 1)");
  }
  PerCategory<bool> seen{};
  for (auto c : relation_priority) {
    if (index_of(c) >= kNumCategories || seen[index_of(c)]) {
      throw InvalidArgument("relation priority must be a permutation of all six categories");
    }
    seen[index_of(c)] = true;
  }
}

std::string render_phrase(const SceneObject& target, const SceneObject& reference,
                          RelationCategory category) {
  std::string out = "The ";
  out += target.type_name;
  out += ' ';
  out += relation_phrase(category);
  out += " the ";
  out += reference.type_name;
  return out;
}

ReferringExpression make_expression(const Scene& scene, ObjectId target_id, ObjectId reference_id,
                                    RelationCategory category) {
  return {target_id, reference_id, category,
          render_phrase(scene.at(target_id), scene.at(reference_id), category)};
}

}  // namespace refexp
