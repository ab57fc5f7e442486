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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace refexp {

using ObjectId = int;

/// Axis-aligned box in pixel space: (x, y) is the top-left corner.
struct BoundingBox {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  double right() const noexcept { return x + w; }
  double bottom() const noexcept { return y + h; }
  double area() const noexcept { return w * h; }
  bool valid() const noexcept { return w > 0 && h > 0 && x >= 0 && y >= 0; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Center of mass of the box, (x + w/2, y + h/2).
std::pair<double, double> center(const BoundingBox& box) noexcept;

struct SceneObject {
  ObjectId id = 0;
  std::string type_name;
  BoundingBox box;

  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

/// Lower-cased, whitespace-trimmed type name.
std::string canonical_type_name(std::string_view name);

/// An immutable set of detected objects in one image.
///
/// Objects are stored in ascending id order regardless of the order they were
/// supplied in, so everything downstream is independent of input order.
class Scene {
 public:
  /// Throws InvalidScene if the image size is not positive, ids repeat or are
  /// negative, a type name is empty, or a box is degenerate or leaves the image.
  Scene(double image_width, double image_height, std::vector<SceneObject> objects);

  double image_width() const noexcept { return image_width_; }
  double image_height() const noexcept { return image_height_; }
  std::span<const SceneObject> objects() const noexcept { return objects_; }
  std::size_t size() const noexcept { return objects_.size(); }

  bool contains(ObjectId id) const noexcept;
  /// Throws UnknownObject.
  const SceneObject& at(ObjectId id) const;

  friend bool operator==(const Scene&, const Scene&) = default;

 private:
  double image_width_;
  double image_height_;
  std::vector<SceneObject> objects_;
};

/// The six relation categories, in the canonical order used for network
/// output indexing and one-hot encoding.
enum class RelationCategory : std::uint8_t { Right, Left, OnTop, AtBottom, InFront, Behind };

inline constexpr std::size_t kNumCategories = 6;

inline constexpr std::array<RelationCategory, kNumCategories> kAllCategories = {
    RelationCategory::Right,   RelationCategory::Left,    RelationCategory::OnTop,
    RelationCategory::AtBottom, RelationCategory::InFront, RelationCategory::Behind};

constexpr std::size_t index_of(RelationCategory c) noexcept { return static_cast<std::size_t>(c); }

template <typename T>
using PerCategory = std::array<T, kNumCategories>;

/// Stable identifier used in JSON ("right", "on_top", ...).
std::string_view to_string(RelationCategory c) noexcept;
std::optional<RelationCategory> parse_category(std::string_view name) noexcept;

/// English preposition phrase, e.g. "to the right of".
std::string_view relation_phrase(RelationCategory c) noexcept;

/// A scored candidate relation "target <category> reference".
struct SpatialRelation {
  ObjectId target_id = 0;
  ObjectId reference_id = 0;
  RelationCategory category = RelationCategory::Right;
  double probability = 0;  // presence
  double confidence = 0;   // informativeness

  friend bool operator==(const SpatialRelation&, const SpatialRelation&) = default;
};

struct PipelineConfig {
  double presence_threshold = 0.5;
  /// Order in which the baseline tries relations for a landmark.
  std::array<RelationCategory, kNumCategories> relation_priority = {
      RelationCategory::Behind, RelationCategory::InFront, RelationCategory::OnTop,
      RelationCategory::AtBottom, RelationCategory::Left,  RelationCategory::Right};
  std::uint64_t seed = 0;

  /// Throws InvalidArgument.
  void validate() const;
};

struct ReferringExpression {
  ObjectId target_id = 0;
  ObjectId reference_id = 0;
  RelationCategory category = RelationCategory::Right;
  std::string phrase;

  friend bool operator==(const ReferringExpression&, const ReferringExpression&) = default;
};

/// "The {target} {relation} the {reference}".
std::string render_phrase(const SceneObject& target, const SceneObject& reference,
                          RelationCategory category);

ReferringExpression make_expression(const Scene& scene, ObjectId target_id, ObjectId reference_id,
                                    RelationCategory category);

}  // namespace refexp
