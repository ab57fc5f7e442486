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

#include "refexp/scene_gen.hpp"

#include <algorithm>
#include <map>

#include "refexp/error.hpp"

namespace refexp {

void SceneGenSpec::validate() const {
  if (object_types.empty()) throw InvalidArgument("object type pool is empty");
  if (min_objects < 2 || max_objects < min_objects) {
    throw InvalidArgument("object count range must satisfy 2 <= min <= max");
  }
  if (!(duplicate_type_probability >= 0 && duplicate_type_probability <= 1)) {
    throw InvalidArgument("duplicate type probability must lie in [0, 1]");
  }
  if (!(image_width > 0 && image_height > 0)) throw InvalidArgument("image dimensions must be positive");
  if (!(min_size > 0 && max_size >= min_size && max_size <= 1)) {
    throw InvalidArgument("box size range must satisfy 0 < min <= max <= 1");
  }
}

SceneGenSpec SceneGenSpec::presence_defaults() {
  SceneGenSpec spec;
  spec.min_size = 0.02;
  spec.max_size = 0.6;
  return spec;
}

SceneGenSpec SceneGenSpec::informativeness_defaults() {
  SceneGenSpec spec;
  spec.min_objects = 8;
  spec.max_objects = 12;
  spec.min_size = 0.05;
  spec.max_size = 0.2;
  return spec;
}

SceneGenerator::SceneGenerator(SceneGenSpec spec) : spec_(std::move(spec)), rng_(spec_.seed) {
  spec_.validate();
}

Scene SceneGenerator::next() {
  const int n = rng_.between(spec_.min_objects, spec_.max_objects);
  std::vector<std::string> types;
  types.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) types.push_back(spec_.object_types[rng_.below(spec_.object_types.size())]);

  if (rng_.bernoulli(spec_.duplicate_type_probability)) {
    auto sorted = types;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      const auto i = rng_.below(static_cast<std::uint64_t>(n));
      auto j = rng_.below(static_cast<std::uint64_t>(n - 1));
      if (j >= i) ++j;
      types[j] = types[i];
    }
  }

  const double W = spec_.image_width;
  const double H = spec_.image_height;
  std::vector<SceneObject> objects;
  for (int i = 0; i < n; ++i) {
    const double w = rng_.uniform(spec_.min_size, spec_.max_size) * W;
    const double h = rng_.uniform(spec_.min_size, spec_.max_size) * H;
    const double x = rng_.uniform(0, W - w);
    const double y = rng_.uniform(0, H - h);
    objects.push_back({i, types[static_cast<std::size_t>(i)], {x, y, w, h}});
  }
  return Scene(W, H, std::move(objects));
}

std::vector<Scene> generate_scenes(const SceneGenSpec& spec, std::size_t count) {
  SceneGenerator gen(spec);
  std::vector<Scene> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(gen.next());
  return out;
}

void AmbiguousSceneSpec::validate() const {
  if (min_landmarks < 1 || max_landmarks < min_landmarks) {
    throw InvalidArgument("landmark count range must satisfy 1 <= min <= max");
  }
  if (object_types.size() < static_cast<std::size_t>(max_landmarks) + 1) {
    throw InvalidArgument("object type pool needs max_landmarks + 1 distinct types");
  }
  if (!(mirrored_probability >= 0 && mirrored_probability <= 1)) {
    throw InvalidArgument("mirrored probability must lie in [0, 1]");
  }
  if (!(image_width > 0 && image_height > 0)) throw InvalidArgument("image dimensions must be positive");
}

std::vector<Scene> generate_ambiguous_scenes(const AmbiguousSceneSpec& spec, std::size_t count) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Scene> out;
  out.reserve(count);

  struct Slot {
    std::string type;
    bool twin;
  };

  for (std::size_t s = 0; s < count; ++s) {
    auto pool = spec.object_types;
    rng.shuffle(std::span(pool));
    const int n_landmarks = rng.between(spec.min_landmarks, spec.max_landmarks);
    const std::string twin = pool[0];
    const bool horizontal = rng.bernoulli(0.5);

    std::vector<Slot> row;
    if (rng.bernoulli(spec.mirrored_probability)) {
      std::vector<Slot> before, after;
      for (int i = 1; i <= n_landmarks; ++i) {
        (rng.bernoulli(0.5) ? before : after).push_back({pool[static_cast<std::size_t>(i)], false});
      }
      row = before;
      row.push_back({twin, true});
      row.push_back({twin, true});
      row.insert(row.end(), after.begin(), after.end());
    } else {
      row.push_back({twin, true});
      for (int i = 1; i <= n_landmarks; ++i) row.push_back({pool[static_cast<std::size_t>(i)], false});
      const auto at = 1 + rng.below(row.size());
      row.insert(row.begin() + static_cast<std::ptrdiff_t>(at), Slot{twin, true});
    }

    // Lay the row out along the main axis in unit coordinates.
    std::vector<std::pair<double, double>> extent;  // (start, length)
    double pos = rng.uniform(0.02, 0.08);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const double len = rng.uniform(0.06, 0.12);
      extent.emplace_back(pos, len);
      const bool twins_adjacent = k + 1 < row.size() && row[k].twin && row[k + 1].twin;
      pos += len + (twins_adjacent ? rng.uniform(0.01, 0.03) : rng.uniform(0.08, 0.15));
    }
    const double scale = std::min(1.0, 0.96 / pos);
    const double cross = rng.uniform(0.3, 0.5);
    const double thickness = rng.uniform(0.15, 0.25);

    std::vector<SceneObject> objects;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const double start = extent[k].first * scale;
      const double len = extent[k].second * scale;
      const double offset = cross + rng.uniform(-0.03, 0.03);
      const double depth = thickness * rng.uniform(0.8, 1.2);
      BoundingBox box = horizontal
                            ? BoundingBox{start * spec.image_width, offset * spec.image_height,
                                          len * spec.image_width, depth * spec.image_height}
                            : BoundingBox{offset * spec.image_width, start * spec.image_height,
                                          depth * spec.image_width, len * spec.image_height};
      objects.push_back({static_cast<ObjectId>(k), row[k].type, box});
    }
    out.emplace_back(spec.image_width, spec.image_height, std::move(objects));
  }
  return out;
}

std::vector<ObjectId> duplicated_type_objects(const Scene& scene) {
  std::map<std::string, int> counts;
  for (const auto& o : scene.objects()) ++counts[o.type_name];
  std::vector<ObjectId> out;
  for (const auto& o : scene.objects()) {
    if (counts[o.type_name] > 1) out.push_back(o.id);
  }
  return out;
}

}  // namespace refexp
