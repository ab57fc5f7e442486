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

#include "generators.hpp"

#include <algorithm>

namespace refexp::testing {

BoundingBox random_box(Rng& rng, double W, double H) {
  if (rng.bernoulli(1.0 / 3.0)) {
    // Grid of 10 x 10 cells.
    const double cw = W / 10, ch = H / 10;
    const int x = rng.between(0, 8), y = rng.between(0, 8);
    const int w = rng.between(1, 10 - x), h = rng.between(1, 10 - y);
    return {x * cw, y * ch, w * cw, h * ch};
  }
  const double w = rng.uniform(0.02, 0.5) * W;
  const double h = rng.uniform(0.02, 0.5) * H;
  return {rng.uniform(0, W - w), rng.uniform(0, H - h), w, h};
}

Scene random_scene(Rng& rng, int min_objects, int max_objects, double W, double H) {
  static const std::vector<std::string> kTypes = {"book", "mouse", "cup", "bottle"};
  const int n = rng.between(min_objects, max_objects);
  std::vector<SceneObject> objects;
  for (int i = 0; i < n; ++i) {
    objects.push_back({i, kTypes[rng.below(kTypes.size())], random_box(rng, W, H)});
  }
  return Scene(W, H, std::move(objects));
}

std::vector<SpatialRelation> random_relations(Rng& rng, const Scene& scene) {
  static const double kValues[] = {0.1, 0.3, 0.5, 0.5, 0.6, 0.75, 0.9, 0.99};
  std::vector<SpatialRelation> out;
  for (const auto& t : scene.objects()) {
    for (const auto& r : scene.objects()) {
      if (t.id == r.id) continue;
      for (auto c : kAllCategories) {
        out.push_back({t.id, r.id, c, kValues[rng.below(8)], kValues[rng.below(8)]});
      }
    }
  }
  return out;
}

Scene shuffled(Rng& rng, const Scene& scene) {
  std::vector<SceneObject> objects(scene.objects().begin(), scene.objects().end());
  rng.shuffle(std::span(objects));
  return Scene(scene.image_width(), scene.image_height(), std::move(objects));
}

}  // namespace refexp::testing
