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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refexp/mlp.hpp"
#include "refexp/relation_networks.hpp"
#include "refexp/scene.hpp"
#include "refexp/scene_gen.hpp"

namespace refexp {

struct RpnSample {
  PairFeatures features{};
  RelationCategory label = RelationCategory::Right;
};

struct RinSample {
  RinFeatures features{};
  bool informative = false;
};

inline constexpr std::size_t kRpnClassCap = 990;
inline constexpr std::size_t kRinClassCap = 2057;

/// Maps annotation predicate strings ("left of", "in front of", ...) onto
/// relation categories. Lookups are case- and whitespace-insensitive.
class SynonymMap {
 public:
  SynonymMap() = default;

  /// The shipped table of common predicates.
  static SynonymMap defaults();
  /// `{ "predicate": "right" | "left" | "on_top" | ..., ... }`
  static SynonymMap from_json(std::string_view text);
  static SynonymMap load(const std::filesystem::path& path);

  void add(std::string_view predicate, RelationCategory category);
  std::optional<RelationCategory> lookup(std::string_view predicate) const;
  std::size_t size() const noexcept { return entries_.size(); }

  static std::string normalize(std::string_view predicate);

 private:
  std::map<std::string, RelationCategory, std::less<>> entries_;
};

/// Visual-Genome-style annotations.
struct VgBox {
  double x = 0, y = 0, w = 0, h = 0;
  std::optional<long long> object_id;
  std::string name;
};

struct VgRelationship {
  std::string predicate;
  VgBox subject;
  VgBox object;
};

struct VgImage {
  long long image_id = 0;
  double width = 0;
  double height = 0;
  std::vector<VgRelationship> relationships;
};

/// Parses `[ { "image_id", "width", "height", "relationships": [ { "predicate",
/// "subject": {x,y,w,h,...}, "object": {...} } ] } ]`. Extra fields are
/// ignored. A blank document yields no images. Throws FormatError.
std::vector<VgImage> parse_vg_annotations(std::string_view json_text);

struct ExtractionStats {
  std::size_t images = 0;
  std::size_t relationships = 0;
  std::size_t skipped_predicates = 0;
  std::size_t skipped_boxes = 0;
  std::vector<std::string> warnings;
};

struct RpnExtraction {
  std::vector<RpnSample> samples;
  ExtractionStats stats;
};

struct RinExtraction {
  std::vector<RinSample> samples;
  ExtractionStats stats;
};

/// One sample per annotated relationship with a mappable predicate, at most
/// `per_class_cap` per category (chosen at random with `seed` when over).
RpnExtraction extract_rpn_dataset(std::span<const VgImage> images, const SynonymMap& synonyms,
                                  std::size_t per_class_cap = kRpnClassCap, std::uint64_t seed = 0);
RpnExtraction extract_rpn_dataset(const std::filesystem::path& annotation_file, const SynonymMap& synonyms,
                                  std::size_t per_class_cap = kRpnClassCap, std::uint64_t seed = 0);

/// Annotated relationships are informative. A relation whose geometric rule
/// holds between two annotated objects of the same image, but which is not
/// annotated, is uninformative. Each (category, label) class is capped at
/// `per_class_cap`.
RinExtraction extract_rin_dataset(std::span<const VgImage> images, const SynonymMap& synonyms,
                                  std::size_t per_class_cap = kRinClassCap, std::uint64_t seed = 0);
RinExtraction extract_rin_dataset(const std::filesystem::path& annotation_file, const SynonymMap& synonyms,
                                  std::size_t per_class_cap = kRinClassCap, std::uint64_t seed = 0);

/// Minimum normalized margin by which a synthetic presence label must win.
inline constexpr double kSyntheticLabelMargin = 0.03;

/// Rule-labelled presence samples: each ordered pair is labelled with its
/// dominant rule (see dominant_relation), and pairs without a clear winner are
/// skipped. Balanced to n/6 per category.
std::vector<RpnSample> synth_rpn_dataset(const SceneGenSpec& spec, std::size_t n,
                                         double min_margin = kSyntheticLabelMargin);

struct ReferenceLabel {
  ObjectId reference_id = 0;
  RelationCategory category = RelationCategory::Right;
  bool informative = false;
};

/// Labels every relation that holds from the target to another object. The
/// nearest such reference (image-normalized center distance) is informative
/// in each category it satisfies; every farther reference is uninformative.
/// Empty when fewer than two references stand in any relation to the target.
std::vector<ReferenceLabel> nearest_reference_labels(const Scene& scene, ObjectId target_id);

/// Informativeness samples built from nearest_reference_labels, balanced to
/// n/2 per label. Categories appear in the proportions the scenes yield.
std::vector<RinSample> synth_rin_dataset(const SceneGenSpec& spec, std::size_t n);

Dataset to_dataset(std::span<const RpnSample> samples);
Dataset to_dataset(std::span<const RinSample> samples);

enum class DatasetKind { Presence, Informativeness };

struct LabeledDataset {
  DatasetKind kind = DatasetKind::Presence;
  Dataset examples;
};

/// JSON lines: `{ "features": [...], "label": int | bool }`.
std::string to_jsonl(std::span<const RpnSample> samples);
std::string to_jsonl(std::span<const RinSample> samples);
void save_jsonl(const std::filesystem::path& path, std::span<const RpnSample> samples);
void save_jsonl(const std::filesystem::path& path, std::span<const RinSample> samples);

/// Integer labels give a presence dataset, boolean labels an informativeness
/// dataset. Throws FormatError (with the line number) or EmptyDataset.
LabeledDataset parse_dataset_jsonl(std::string_view text);
LabeledDataset load_dataset_jsonl(const std::filesystem::path& path);

/// Splits off the last `test_fraction` of a seeded shuffle as a held-out set.
std::pair<Dataset, Dataset> split_holdout(const Dataset& data, double test_fraction, std::uint64_t seed);

}  // namespace refexp
