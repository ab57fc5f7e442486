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

#include <gtest/gtest.h>

#include "refexp/error.hpp"
#include "refexp/scene.hpp"

namespace refexp {
namespace {

Scene three_objects() {
  return Scene(640, 480, {{2, "cup", {10, 10, 20, 20}}, {0, "Book ", {100, 100, 50, 40}}, {1, "mouse", {300, 200, 30, 20}}});
}

TEST(Center, UnitAndOffsetBoxes) {
  EXPECT_EQ(center({0, 0, 10, 10}), std::make_pair(5.0, 5.0));
  EXPECT_EQ(center({2, 4, 6, 8}), std::make_pair(5.0, 8.0));
  EXPECT_EQ(center({0, 0, 1, 1}), std::make_pair(0.5, 0.5));
}

TEST(RenderPhrase, DescriptiveExamples) {
  const SceneObject mouse{0, "mouse", {}}, book{1, "book", {}}, chair{2, "chair", {}}, couch{3, "couch", {}};
  const SceneObject cup{4, "cup", {}}, ball{5, "sports ball", {}};
  EXPECT_EQ(render_phrase(mouse, book, RelationCategory::OnTop), "The mouse on top of the book");
  EXPECT_EQ(render_phrase(chair, couch, RelationCategory::Right), "The chair to the right of the couch");
  EXPECT_EQ(render_phrase(cup, ball, RelationCategory::Behind), "The cup behind the sports ball");
}

TEST(RenderPhrase, EveryCategoryUsesItsPreposition) {
  const SceneObject a{0, "a", {}}, b{1, "b", {}};
  EXPECT_EQ(render_phrase(a, b, RelationCategory::Left), "The a to the left of the b");
  EXPECT_EQ(render_phrase(a, b, RelationCategory::AtBottom), "The a at the bottom of the b");
  EXPECT_EQ(render_phrase(a, b, RelationCategory::InFront), "The a in front of the b");
}

TEST(MakeExpression, UsesSceneTypeNames) {
  const auto scene = three_objects();
  const auto e = make_expression(scene, 0, 1, RelationCategory::Left);
  EXPECT_EQ(e.target_id, 0);
  EXPECT_EQ(e.reference_id, 1);
  EXPECT_EQ(e.category, RelationCategory::Left);
  EXPECT_EQ(e.phrase, "The book to the left of the mouse");
}

TEST(Scene, SortsObjectsByIdAndCanonicalizesTypes) {
  const auto scene = three_objects();
  ASSERT_EQ(scene.size(), 3u);
  EXPECT_EQ(scene.objects()[0].id, 0);
  EXPECT_EQ(scene.objects()[1].id, 1);
  EXPECT_EQ(scene.objects()[2].id, 2);
  EXPECT_EQ(scene.at(0).type_name, "book");
  EXPECT_TRUE(scene.contains(2));
  EXPECT_FALSE(scene.contains(3));
  EXPECT_THROW(scene.at(7), UnknownObject);
}

TEST(Scene, RejectsBrokenInvariants) {
  EXPECT_THROW(Scene(0, 480, {}), InvalidScene);
  EXPECT_THROW(Scene(640, -1, {}), InvalidScene);
  EXPECT_THROW(Scene(640, 480, {{0, "a", {0, 0, 1, 1}}, {0, "b", {2, 2, 1, 1}}}), InvalidScene);
  EXPECT_THROW(Scene(640, 480, {{-1, "a", {0, 0, 1, 1}}}), InvalidScene);
  EXPECT_THROW(Scene(640, 480, {{0, "  ", {0, 0, 1, 1}}}), InvalidScene);
  EXPECT_THROW(Scene(640, 480, {{0, "a", {0, 0, 0, 1}}}), InvalidScene);
  EXPECT_THROW(Scene(640, 480, {{0, "a", {630, 0, 20, 1}}}), InvalidScene);
  EXPECT_THROW(Scene(640, 480, {{0, "a", {-1, 0, 20, 1}}}), InvalidScene);
}

TEST(Scene, BoxTouchingTheImageEdgeIsAccepted) {
  EXPECT_NO_THROW(Scene(640, 480, {{0, "a", {0, 0, 640, 480}}}));
}

TEST(CanonicalTypeName, LowercasesAndTrims) {
  EXPECT_EQ(canonical_type_name("  Sports Ball\t"), "sports ball");
  EXPECT_EQ(canonical_type_name(""), "");
}

TEST(RelationCategory, CanonicalOrderAndNames) {
  const char* names[] = {"right", "left", "on_top", "at_bottom", "in_front", "behind"};
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    EXPECT_EQ(index_of(kAllCategories[i]), i);
    EXPECT_EQ(to_string(kAllCategories[i]), names[i]);
    EXPECT_EQ(parse_category(names[i]), kAllCategories[i]);
  }
  EXPECT_FALSE(parse_category("above").has_value());
}

TEST(PipelineConfig, ValidatesThresholdAndPriority) {
  PipelineConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.presence_threshold, 0.5);
  cfg.presence_threshold = 1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.presence_threshold = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = PipelineConfig{};
  cfg.relation_priority[1] = cfg.relation_priority[0];
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

}  // namespace
}  // namespace refexp
