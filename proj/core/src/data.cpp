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

#include "refexp/data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "json_internal.hpp"
#include "refexp/error.hpp"
#include "refexp/random.hpp"
#include "refexp/rules.hpp"
#include "refexp/scene_io.hpp"

namespace refexp {

namespace {

using detail::json;

/// Keeps at most `cap` of `indices`, chosen uniformly, in their original order.
std::vector<std::size_t> capped(std::vector<std::size_t> indices, std::size_t cap, Rng& rng) {
  if (indices.size() <= cap) return indices;
  rng.shuffle(std::span(indices));
  indices.resize(cap);
  std::sort(indices.begin(), indices.end());
  return indices;
}

/// Per-class quotas that sum to n, earlier classes taking the remainder.
std::vector<std::size_t> quotas(std::size_t n, std::size_t classes) {
  std::vector<std::size_t> q(classes, n / classes);
  for (std::size_t i = 0; i < n % classes; ++i) ++q[i];
  return q;
}

// Scenes are drawn until every quota is met; this bounds the search when a
// spec cannot produce some class at all.
constexpr std::size_t kMaxSyntheticScenes = 2'000'000;

VgBox parse_vg_box(const json& j, const std::string& ctx) {
  if (!j.is_object()) throw FormatError(ctx, "expected an object");
  VgBox box;
  try {
    box.x = detail::require_number(j, "x");
    box.y = detail::require_number(j, "y");
    box.w = detail::require_number(j, "w");
    box.h = detail::require_number(j, "h");
  } catch (const FormatError& e) {
    throw FormatError(ctx + "." + e.field(), e.message());
  }
  if (auto it = j.find("object_id"); it != j.end() && it->is_number_integer()) {
    box.object_id = it->get<long long>();
  }
  if (auto it = j.find("name"); it != j.end() && it->is_string()) {
    box.name = it->get<std::string>();
  } else if (auto names = j.find("names"); names != j.end() && names->is_array() && !names->empty() &&
                                           names->front().is_string()) {
    box.name = names->front().get<std::string>();
  }
  return box;
}

/// The distinct objects of one image, as a scene, plus a lookup from
/// annotation boxes to scene ids.
struct ImageObjects {
  std::optional<Scene> scene;
  std::map<std::tuple<long long, double, double, double, double, std::string>, ObjectId> index;
  std::size_t skipped = 0;

  static auto key(const VgBox& b) {
    // Without an object id, identity falls back to box geometry and name.
    return b.object_id ? std::make_tuple(*b.object_id, 0.0, 0.0, 0.0, 0.0, std::string())
                       : std::make_tuple(-1LL, b.x, b.y, b.w, b.h, b.name);
  }

  std::optional<ObjectId> find(const VgBox& b) const {
    auto it = index.find(key(b));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

ImageObjects collect_objects(const VgImage& image) {
  ImageObjects out;
  std::vector<SceneObject> objects;
  auto add = [&](const VgBox& b) {
    const auto k = ImageObjects::key(b);
    if (out.index.contains(k)) return;
    BoundingBox box{b.x, b.y, b.w, b.h};
    if (!(box.w > 0 && box.h > 0)) return;
    detail::clamp_box(box, image.width, image.height);
    if (!(box.w > 0 && box.h > 0)) return;
    const auto id = static_cast<ObjectId>(objects.size());
    out.index.emplace(k, id);
    std::string name = canonical_type_name(b.name);
    objects.push_back({id, name.empty() ? "object" : name, box});
  };
  for (const auto& rel : image.relationships) {
    add(rel.subject);
    add(rel.object);
  }
  if (objects.size() >= 1) out.scene.emplace(image.width, image.height, std::move(objects));
  return out;
}

bool valid_image(const VgImage& image, ExtractionStats& stats) {
  if (image.width > 0 && image.height > 0) return true;
  stats.warnings.push_back("image " + std::to_string(image.image_id) + ": missing size, skipped");
  return false;
}

void warn_if_empty(std::size_t n, ExtractionStats& stats) {
  if (n == 0) stats.warnings.push_back("no samples extracted");
}

}  // namespace

// ---------------------------------------------------------------------------
// Synonyms

std::string SynonymMap::normalize(std::string_view predicate) {
  std::string out;
  bool space = false;
  for (char ch : canonical_type_name(predicate)) {
    if (ch == ' ' || ch == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += ch;
  }
  return out;
}

void SynonymMap::add(std::string_view predicate, RelationCategory category) {
  entries_[normalize(predicate)] = category;
}

std::optional<RelationCategory> SynonymMap::lookup(std::string_view predicate) const {
  auto it = entries_.find(normalize(predicate));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

SynonymMap SynonymMap::defaults() {
  using C = RelationCategory;
  SynonymMap m;
  for (auto p : {"right of", "to the right of", "on the right of", "to right of", "on right of",
                 "on the right side of"}) {
    m.add(p, C::Right);
  }
  for (auto p : {"left of", "to the left of", "on the left of", "to left of", "on left of",
                 "on the left side of"}) {
    m.add(p, C::Left);
  }
  for (auto p : {"on top of", "on top", "atop", "sitting on top of", "on"}) m.add(p, C::OnTop);
  for (auto p : {"at the bottom of", "at bottom of", "below", "under", "underneath", "beneath"}) {
    m.add(p, C::AtBottom);
  }
  for (auto p : {"in front of", "in front", "front of"}) m.add(p, C::InFront);
  for (auto p : {"behind", "in back of", "in the back of", "at the back of"}) m.add(p, C::Behind);
  return m;
}

SynonymMap SynonymMap::from_json(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw FormatError("", "synonym map must be a JSON object");
  SynonymMap m;
  for (const auto& [predicate, value] : doc.items()) {
    if (!value.is_string()) throw FormatError(predicate, "expected a category name");
    auto c = parse_category(value.get<std::string>());
    if (!c) throw FormatError(predicate, "unknown category '" + value.get<std::string>() + "'");
    m.add(predicate, *c);
  }
  return m;
}

SynonymMap SynonymMap::load(const std::filesystem::path& path) { return from_json(read_text_file(path)); }

// ---------------------------------------------------------------------------
// Annotation extraction

std::vector<VgImage> parse_vg_annotations(std::string_view json_text) {
  if (json_text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  const json doc = detail::parse_json(json_text);
  if (!doc.is_array()) throw FormatError("", "annotation file must be a JSON array of images");
  std::vector<VgImage> images;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& img = doc[i];
    const std::string ctx = "[" + std::to_string(i) + "]";
    if (!img.is_object()) throw FormatError(ctx, "expected an object");
    VgImage out;
    try {
      out.image_id = detail::require_integer(img, "image_id");
      out.width = detail::require_number(img, "width");
      out.height = detail::require_number(img, "height");
    } catch (const FormatError& e) {
      throw FormatError(ctx + "." + e.field(), e.message());
    }
    const auto rels = img.find("relationships");
    if (rels == img.end() || !rels->is_array()) throw FormatError(ctx + ".relationships", "expected an array");
    for (std::size_t r = 0; r < rels->size(); ++r) {
      const auto& rel = (*rels)[r];
      const std::string rctx = ctx + ".relationships[" + std::to_string(r) + "]";
      if (!rel.is_object()) throw FormatError(rctx, "expected an object");
      VgRelationship parsed;
      try {
        parsed.predicate = detail::require_string(rel, "predicate");
        parsed.subject = parse_vg_box(detail::require(rel, "subject"), "subject");
        parsed.object = parse_vg_box(detail::require(rel, "object"), "object");
      } catch (const FormatError& e) {
        throw FormatError(rctx + "." + e.field(), e.message());
      }
      out.relationships.push_back(std::move(parsed));
    }
    images.push_back(std::move(out));
  }
  return images;
}

RpnExtraction extract_rpn_dataset(std::span<const VgImage> images, const SynonymMap& synonyms,
                                  std::size_t per_class_cap, std::uint64_t seed) {
  RpnExtraction result;
  auto& stats = result.stats;
  std::vector<RpnSample> all;
  for (const auto& image : images) {
    ++stats.images;
    stats.relationships += image.relationships.size();
    if (!valid_image(image, stats)) continue;
    const auto objects = collect_objects(image);
    for (const auto& rel : image.relationships) {
      const auto category = synonyms.lookup(rel.predicate);
      if (!category) {
        ++stats.skipped_predicates;
        continue;
      }
      const auto s = objects.find(rel.subject);
      const auto o = objects.find(rel.object);
      if (!s || !o || *s == *o) {
        ++stats.skipped_boxes;
        continue;
      }
      all.push_back({encode_pair(*objects.scene, *s, *o), *category});
    }
  }

  Rng rng(seed);
  std::vector<char> keep(all.size(), 0);
  for (auto c : kAllCategories) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].label == c) idx.push_back(i);
    }
    for (auto i : capped(std::move(idx), per_class_cap, rng)) keep[i] = 1;
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) result.samples.push_back(all[i]);
  }
  warn_if_empty(result.samples.size(), stats);
  return result;
}

RpnExtraction extract_rpn_dataset(const std::filesystem::path& annotation_file, const SynonymMap& synonyms,
                                  std::size_t per_class_cap, std::uint64_t seed) {
  const auto text = read_text_file(annotation_file);
  auto images = parse_vg_annotations(text);
  auto result = extract_rpn_dataset(images, synonyms, per_class_cap, seed);
  if (images.empty()) result.stats.warnings.insert(result.stats.warnings.begin(), "annotation file is empty");
  return result;
}

RinExtraction extract_rin_dataset(std::span<const VgImage> images, const SynonymMap& synonyms,
                                  std::size_t per_class_cap, std::uint64_t seed) {
  RinExtraction result;
  auto& stats = result.stats;
  std::vector<RinSample> all;
  std::vector<RelationCategory> all_category;
  for (const auto& image : images) {
    ++stats.images;
    stats.relationships += image.relationships.size();
    if (!valid_image(image, stats)) continue;
    const auto objects = collect_objects(image);
    if (!objects.scene) continue;
    const Scene& scene = *objects.scene;

    std::set<std::tuple<ObjectId, ObjectId, RelationCategory>> annotated;
    for (const auto& rel : image.relationships) {
      const auto category = synonyms.lookup(rel.predicate);
      if (!category) {
        ++stats.skipped_predicates;
        continue;
      }
      const auto s = objects.find(rel.subject);
      const auto o = objects.find(rel.object);
      if (!s || !o || *s == *o) {
        ++stats.skipped_boxes;
        continue;
      }
      annotated.emplace(*s, *o, *category);
    }
    for (const auto& [s, o, c] : annotated) {
      all.push_back({encode_rin(encode_pair(scene, s, o), c), true});
      all_category.push_back(c);
    }
    for (const auto& t : scene.objects()) {
      for (const auto& r : scene.objects()) {
        if (t.id == r.id) continue;
        for (auto c : kAllCategories) {
          if (!rule_holds(t.box, r.box, c) || annotated.contains({t.id, r.id, c})) continue;
          all.push_back({encode_rin(encode_pair(scene, t.id, r.id), c), false});
          all_category.push_back(c);
        }
      }
    }
  }

  Rng rng(seed);
  std::vector<char> keep(all.size(), 0);
  for (auto c : kAllCategories) {
    for (bool label : {true, false}) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (all_category[i] == c && all[i].informative == label) idx.push_back(i);
      }
      for (auto i : capped(std::move(idx), per_class_cap, rng)) keep[i] = 1;
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (keep[i]) result.samples.push_back(all[i]);
  }
  warn_if_empty(result.samples.size(), stats);
  return result;
}

RinExtraction extract_rin_dataset(const std::filesystem::path& annotation_file, const SynonymMap& synonyms,
                                  std::size_t per_class_cap, std::uint64_t seed) {
  const auto text = read_text_file(annotation_file);
  auto images = parse_vg_annotations(text);
  auto result = extract_rin_dataset(images, synonyms, per_class_cap, seed);
  if (images.empty()) result.stats.warnings.insert(result.stats.warnings.begin(), "annotation file is empty");
  return result;
}

// ---------------------------------------------------------------------------
// Synthetic datasets

std::vector<RpnSample> synth_rpn_dataset(const SceneGenSpec& spec, std::size_t n, double min_margin) {
  SceneGenerator gen(spec);
  auto remaining = quotas(n, kNumCategories);
  std::size_t missing = n;
  std::vector<RpnSample> out;
  out.reserve(n);
  for (std::size_t s = 0; missing > 0; ++s) {
    if (s == kMaxSyntheticScenes) throw InvalidArgument("scene spec cannot fill every presence class");
    const Scene scene = gen.next();
    for (const auto& t : scene.objects()) {
      for (const auto& r : scene.objects()) {
        if (t.id == r.id) continue;
        const auto label =
            dominant_relation(t.box, r.box, scene.image_width(), scene.image_height(), min_margin);
        if (!label || remaining[index_of(*label)] == 0) continue;
        --remaining[index_of(*label)];
        --missing;
        out.push_back({encode_pair(scene, t.id, r.id), *label});
      }
    }
  }
  return out;
}

std::vector<ReferenceLabel> nearest_reference_labels(const Scene& scene, ObjectId target_id) {
  const auto& target = scene.at(target_id);
  const auto [tx, ty] = center(target.box);
  std::vector<std::pair<double, ObjectId>> refs;
  for (const auto& r : scene.objects()) {
    if (r.id == target_id || rule_relations(target.box, r.box).empty()) continue;
    const auto [rx, ry] = center(r.box);
    refs.emplace_back(std::hypot((rx - tx) / scene.image_width(), (ry - ty) / scene.image_height()), r.id);
  }
  if (refs.size() < 2) return {};
  std::sort(refs.begin(), refs.end());
  std::vector<ReferenceLabel> out;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const auto& ref = scene.at(refs[k].second);
    for (auto c : rule_relations(target.box, ref.box)) out.push_back({ref.id, c, k == 0});
  }
  return out;
}

std::vector<RinSample> synth_rin_dataset(const SceneGenSpec& spec, std::size_t n) {
  SceneGenerator gen(spec);
  // Quota index: 0 informative, 1 uninformative. Categories keep the mix in
  // which the scenes produce them.
  auto remaining = quotas(n, 2);
  std::size_t missing = n;
  std::vector<RinSample> out;
  out.reserve(n);
  for (std::size_t s = 0; missing > 0; ++s) {
    if (s == kMaxSyntheticScenes) throw InvalidArgument("scene spec cannot fill both informativeness classes");
    const Scene scene = gen.next();
    for (const auto& t : scene.objects()) {
      for (const auto& label : nearest_reference_labels(scene, t.id)) {
        auto& left = remaining[label.informative ? 0 : 1];
        if (left == 0) continue;
        --left;
        --missing;
        out.push_back({encode_rin(encode_pair(scene, t.id, label.reference_id), label.category), label.informative});
      }
    }
  }
  return out;
}

Dataset to_dataset(std::span<const RpnSample> samples) {
  Dataset out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({{s.features.begin(), s.features.end()}, static_cast<int>(index_of(s.label))});
  }
  return out;
}

Dataset to_dataset(std::span<const RinSample> samples) {
  Dataset out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({{s.features.begin(), s.features.end()}, s.informative ? 1 : 0});
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON lines

std::string to_jsonl(std::span<const RpnSample> samples) {
  std::string out;
  for (const auto& s : samples) {
    out += json{{"features", s.features}, {"label", static_cast<int>(index_of(s.label))}}.dump();
    out += '\n';
  }
  return out;
}

std::string to_jsonl(std::span<const RinSample> samples) {
  std::string out;
  for (const auto& s : samples) {
    out += json{{"features", s.features}, {"label", s.informative}}.dump();
    out += '\n';
  }
  return out;
}

void save_jsonl(const std::filesystem::path& path, std::span<const RpnSample> samples) {
  write_text_file(path, to_jsonl(samples));
}

void save_jsonl(const std::filesystem::path& path, std::span<const RinSample> samples) {
  write_text_file(path, to_jsonl(samples));
}

LabeledDataset parse_dataset_jsonl(std::string_view text) {
  LabeledDataset out;
  std::optional<DatasetKind> kind;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string ctx = "line " + std::to_string(line_no);
    json doc;
    try {
      doc = detail::parse_json(line);
    } catch (const FormatError& e) {
      throw FormatError(ctx, e.message());
    }
    if (!doc.is_object()) throw FormatError(ctx, "expected an object");
    const auto features = doc.find("features");
    const auto label = doc.find("label");
    if (features == doc.end() || !features->is_array()) throw FormatError(ctx + ".features", "expected an array");
    if (label == doc.end()) throw FormatError(ctx + ".label", "missing required field");

    Example ex;
    for (const auto& v : *features) {
      if (!v.is_number()) throw FormatError(ctx + ".features", "expected numbers");
      ex.input.push_back(v.get<double>());
    }
    DatasetKind this_kind;
    if (label->is_boolean()) {
      this_kind = DatasetKind::Informativeness;
      ex.label = label->get<bool>() ? 1 : 0;
    } else if (label->is_number_integer()) {
      this_kind = DatasetKind::Presence;
      ex.label = label->get<int>();
    } else {
      throw FormatError(ctx + ".label", "expected an integer or a boolean");
    }
    if (!kind) {
      kind = this_kind;
      dim = ex.input.size();
    } else if (*kind != this_kind) {
      throw FormatError(ctx + ".label", "label type differs from earlier lines");
    } else if (ex.input.size() != dim) {
      throw FormatError(ctx + ".features", "expected " + std::to_string(dim) + " features, found " +
                                               std::to_string(ex.input.size()));
    }
    out.examples.push_back(std::move(ex));
  }
  if (!kind) throw EmptyDataset("dataset has no samples");
  out.kind = *kind;
  return out;
}

LabeledDataset load_dataset_jsonl(const std::filesystem::path& path) {
  return parse_dataset_jsonl(read_text_file(path));
}

std::pair<Dataset, Dataset> split_holdout(const Dataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0 && test_fraction < 1)) throw InvalidArgument("test fraction must lie in (0, 1)");
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span(order));
  const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(data.size()) * test_fraction));
  Dataset train, test;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i + n_test < order.size() ? train : test).push_back(data[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace refexp
