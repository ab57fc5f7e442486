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

#include <cstdint>
#include <string>
#include <vector>

#include "refexp/random.hpp"
#include "refexp/scene.hpp"

namespace refexp {

/// Random desk-scale scenes with uniformly placed boxes.
struct SceneGenSpec {
  std::vector<std::string> object_types = {"book", "mouse", "cup",   "bottle",
                                           "keyboard", "laptop", "phone", "bowl"};
  int min_objects = 2;
  int max_objects = 8;
  /// Chance that a scene is forced to repeat a type.
  double duplicate_type_probability = 0.5;
  double image_width = 640;
  double image_height = 480;
  /// Box width/height as a fraction of the image dimension.
  double min_size = 0.05;
  double max_size = 0.3;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument.
  void validate() const;

  /// Wide spread of box sizes; used for presence-network data.
  static SceneGenSpec presence_defaults();
  /// Denser scenes of smaller boxes; used for informativeness data.
  static SceneGenSpec informativeness_defaults();
};

/// Streams scenes from a spec; `generate_scenes` is the batch form.
class SceneGenerator {
 public:
  explicit SceneGenerator(SceneGenSpec spec);
  Scene next();

 private:
  SceneGenSpec spec_;
  Rng rng_;
};

std::vector<Scene> generate_scenes(const SceneGenSpec& spec, std::size_t count);

/// Table scenes that are ambiguous by construction: two objects of one type
/// (the twins) sit in a row, along the horizontal or the depth axis, with
/// landmark objects of other, distinct types.
struct AmbiguousSceneSpec {
  std::vector<std::string> object_types = {"book", "mouse", "cup",   "bottle",
                                           "keyboard", "laptop", "phone", "bowl"};
  int min_landmarks = 1;
  int max_landmarks = 3;
  /// Chance that the twins are adjacent with every landmark outside the pair,
  /// so both twins stand in the same relation to every landmark. Otherwise
  /// landmarks may fall between the twins.
  double mirrored_probability = 0.5;
  double image_width = 640;
  double image_height = 480;
  std::uint64_t seed = 0;

  void validate() const;
};

std::vector<Scene> generate_ambiguous_scenes(const AmbiguousSceneSpec& spec, std::size_t count);

/// Ids of objects whose type occurs more than once in the scene.
std::vector<ObjectId> duplicated_type_objects(const Scene& scene);

}  // namespace refexp
