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

#include "refexp/scene_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_internal.hpp"

namespace refexp {

namespace detail {

bool clamp_box(BoundingBox& box, double image_width, double image_height) {
  const double x0 = std::clamp(box.x, 0.0, image_width);
  const double y0 = std::clamp(box.y, 0.0, image_height);
  const double x1 = std::clamp(box.x + box.w, 0.0, image_width);
  const double y1 = std::clamp(box.y + box.h, 0.0, image_height);
  BoundingBox clamped{x0, y0, x1 - x0, y1 - y0};
  if (clamped == box) return false;
  box = clamped;
  return true;
}

json scene_to_json_value(const Scene& scene) {
  json objects = json::array();
  for (const auto& o : scene.objects()) {
    objects.push_back({{"id", o.id},
                       {"type", o.type_name},
                       {"box", {o.box.x, o.box.y, o.box.w, o.box.h}}});
  }
  return {{"image_width", scene.image_width()},
          {"image_height", scene.image_height()},
          {"objects", std::move(objects)}};
}

}  // namespace detail

namespace {

using detail::json;

ParsedScene scene_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("", "scene must be a JSON object");
  static const char* const kTop[] = {"image_width", "image_height", "objects"};
  static const char* const kObject[] = {"id", "type", "box"};
  detail::reject_unknown_fields(doc, kTop, "");

  const double width = detail::require_number(doc, "image_width");
  const double height = detail::require_number(doc, "image_height");
  if (!(width > 0)) throw FormatError("image_width", "must be positive");
  if (!(height > 0)) throw FormatError("image_height", "must be positive");

  const auto& objects = detail::require(doc, "objects");
  if (!objects.is_array()) throw FormatError("objects", "expected an array");

  std::vector<SceneObject> parsed;
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& o = objects[i];
    const std::string ctx = "objects[" + std::to_string(i) + "]";
    if (!o.is_object()) throw FormatError(ctx, "expected an object");
    detail::reject_unknown_fields(o, kObject, ctx);

    SceneObject obj;
    try {
      obj.id = static_cast<ObjectId>(detail::require_integer(o, "id"));
      obj.type_name = canonical_type_name(detail::require_string(o, "type"));
      const auto& box = detail::require(o, "box");
      if (!box.is_array() || box.size() != 4) throw FormatError("box", "expected [x, y, w, h]");
      for (const auto& v : box) {
        if (!v.is_number()) throw FormatError("box", "expected numbers");
      }
      obj.box = {box[0].get<double>(), box[1].get<double>(), box[2].get<double>(),
                 box[3].get<double>()};
    } catch (const FormatError& e) {
      throw FormatError(ctx + "." + e.field(), e.message());
    }
    if (obj.type_name.empty()) throw FormatError(ctx + ".type", "must be non-empty");
    if (!(obj.box.w > 0) || !(obj.box.h > 0)) {
      throw FormatError(ctx + ".box", "width and height must be positive");
    }
    if (detail::clamp_box(obj.box, width, height)) {
      if (!(obj.box.w > 0) || !(obj.box.h > 0)) {
        throw FormatError(ctx + ".box", "box lies entirely outside the image");
      }
      warnings.push_back("object " + std::to_string(obj.id) + ": box clamped to image bounds");
    }
    parsed.push_back(std::move(obj));
  }
  return {Scene(width, height, std::move(parsed)), std::move(warnings)};
}

}  // namespace

ParsedScene parse_scene(std::string_view json_text) {
  return scene_from_json(detail::parse_json(json_text));
}

ParsedScene load_scene(const std::filesystem::path& path) {
  return parse_scene(read_text_file(path));
}

std::string scene_to_json(const Scene& scene) { return detail::scene_to_json_value(scene).dump(); }

std::vector<Scene> load_scene_corpus(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<Scene> scenes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      scenes.push_back(parse_scene(line).scene);
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + (e.field().empty() ? "" : "." + e.field()),
                        e.message());
    }
  }
  return scenes;
}

void save_scene_corpus(const std::filesystem::path& path, const std::vector<Scene>& scenes) {
  std::string out;
  for (const auto& s : scenes) {
    out += scene_to_json(s);
    out += '\n';
  }
  write_text_file(path, out);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace refexp
