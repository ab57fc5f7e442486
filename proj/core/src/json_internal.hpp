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

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "refexp/error.hpp"
#include "refexp/scene.hpp"

namespace refexp::detail {

using nlohmann::json;

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("", std::string("malformed JSON: ") + e.what());
  }
}

inline const json& require(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) throw FormatError(field, "missing required field");
  return *it;
}

inline double require_number(const json& obj, const char* field) {
  const auto& v = require(obj, field);
  if (!v.is_number()) throw FormatError(field, "expected a number");
  return v.get<double>();
}

inline long long require_integer(const json& obj, const char* field) {
  const auto& v = require(obj, field);
  if (!v.is_number_integer()) throw FormatError(field, "expected an integer");
  return v.get<long long>();
}

inline std::string require_string(const json& obj, const char* field) {
  const auto& v = require(obj, field);
  if (!v.is_string()) throw FormatError(field, "expected a string");
  return v.get<std::string>();
}

template <std::size_t N>
void reject_unknown_fields(const json& obj, const char* const (&allowed)[N],
                           const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw FormatError(context.empty() ? key : context + "." + key, "unknown field");
  }
}

/// Clamps `box` into the image; returns true if anything changed.
bool clamp_box(BoundingBox& box, double image_width, double image_height);

json scene_to_json_value(const Scene& scene);

}  // namespace refexp::detail
