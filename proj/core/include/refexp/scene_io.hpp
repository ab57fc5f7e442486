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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "refexp/scene.hpp"

namespace refexp {

/// Result of ingesting a scene document. Boxes that overflow the image are
/// clamped to it, and each clamp leaves a warning here.
struct ParsedScene {
  Scene scene;
  std::vector<std::string> warnings;
};

/// Parses `{ "image_width", "image_height", "objects": [{ "id", "type", "box": [x,y,w,h] }] }`.
/// Unknown fields raise FormatError naming the field.
ParsedScene parse_scene(std::string_view json_text);
ParsedScene load_scene(const std::filesystem::path& path);

/// Compact single-line JSON; the inverse of parse_scene for in-bounds scenes.
std::string scene_to_json(const Scene& scene);

/// Scene corpus: one scene per line. Blank lines are skipped.
std::vector<Scene> load_scene_corpus(const std::filesystem::path& path);
void save_scene_corpus(const std::filesystem::path& path, const std::vector<Scene>& scenes);

/// Reads the whole file; throws Error if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace refexp
