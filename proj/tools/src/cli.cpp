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

#include "refexp_cli/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "refexp/data.hpp"
#include "refexp/error.hpp"
#include "refexp/evaluation.hpp"
#include "refexp/log.hpp"
#include "refexp/mlp.hpp"
#include "refexp/pipeline.hpp"
#include "refexp/relation_networks.hpp"
#include "refexp/scene_gen.hpp"
#include "refexp/scene_io.hpp"

namespace refexp::cli {

namespace {

/// Fraction of a dataset held out for the "Testing" column of `train`.
constexpr double kTestFraction = 0.15;

struct TrainArgs {
  std::string kind;
  std::string dataset;
  std::string out;
  std::uint64_t seed = 0;
  TrainConfig config;
};

struct DescribeArgs {
  std::string scene;
  ObjectId target = 0;
  std::string rpn;
  std::string rin;
  double threshold = 0.5;
  std::uint64_t seed = 0;
};

struct CompareArgs {
  std::string corpus;
  std::string rpn;
  std::string rin;
  std::string out;
  double threshold = 0.5;
  std::string targets = "all";
  std::uint64_t seed = 0;
};

struct OracleArgs {
  std::string scene;
  ObjectId target = 0;
  std::optional<ObjectId> reference;
  std::string target_type;
  std::string reference_type;
  std::string relation;
};

struct GenArgs {
  std::string kind = "random";
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::string out;
  int min_objects = 2;
  int max_objects = 8;
  double duplicate_probability = 0.5;
  double mirrored_probability = 0.5;
};

struct ExtractArgs {
  std::string annotations;
  std::string kind;
  std::string out;
  std::string synonyms;
  std::optional<std::size_t> cap;
  std::uint64_t seed = 0;
};

struct SynthArgs {
  std::string kind;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string out;
};

PipelineConfig pipeline_config(double threshold, std::uint64_t seed) {
  PipelineConfig cfg;
  cfg.presence_threshold = threshold;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

MlpModel load_rpn(const std::string& path) {
  auto model = load(path);
  check_rpn_shape(model);
  return model;
}

MlpModel load_rin(const std::string& path) {
  auto model = load(path);
  check_rin_shape(model);
  return model;
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * v);
  return buf;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
  const bool rpn = a.kind == "rpn";
  const auto labeled = load_dataset_jsonl(a.dataset);
  const auto specs = rpn ? rpn_layer_specs() : rin_layer_specs();
  const auto expected_kind = rpn ? DatasetKind::Presence : DatasetKind::Informativeness;
  const auto dim = static_cast<std::size_t>(specs.front().input_dim);
  if (labeled.kind != expected_kind || labeled.examples.front().input.size() != dim) {
    throw DimensionMismatch("dataset has " + std::to_string(labeled.examples.front().input.size()) + " features with " +
                            (labeled.kind == DatasetKind::Presence ? "integer" : "boolean") + " labels; " + a.kind +
                            " expects " + std::to_string(dim) + " features with " +
                            (rpn ? "integer" : "boolean") + " labels");
  }

  auto [train_set, test_set] = split_holdout(labeled.examples, kTestFraction, a.seed);
  TrainConfig cfg = a.config;
  cfg.seed = a.seed;
  const auto result = train(train_set, specs, cfg);
  save(result.model, a.out);

  const auto& r = result.report;
  const double train_acc = r.train_accuracy[static_cast<std::size_t>(r.best_epoch - 1)];
  const double test_acc = accuracy(result.model, test_set);
  char line[128];
  std::snprintf(line, sizeof line, "%-8s %10s %12s %10s\n", "Network", "Training", "Validation", "Testing");
  out << line;
  std::snprintf(line, sizeof line, "%-8s %10s %12s %10s\n", rpn ? "RPN" : "RIN", percent(train_acc).c_str(),
                percent(r.best_validation_accuracy).c_str(), percent(test_acc).c_str());
  out << line;
  out << "samples: " << r.train_size << " train, " << r.validation_size << " validation, " << test_set.size()
      << " test; best epoch " << r.best_epoch << " of " << r.stopped_epoch << "\n";
  return kExitOk;
}

int cmd_describe(const DescribeArgs& a, std::ostream& out, std::ostream& err) {
  const auto cfg = pipeline_config(a.threshold, a.seed);
  const auto parsed = load_scene(a.scene);
  for (const auto& w : parsed.warnings) err << "warning: " << w << "\n";
  const auto rpn = load_rpn(a.rpn);
  const auto rin = load_rin(a.rin);
  try {
    out << expression_to_json(describe(rpn, rin, parsed.scene, a.target, cfg)) << "\n";
  } catch (const EmptyCandidates& e) {
    out << error_to_json("empty_candidates", a.target, e.what()) << "\n";
    return kExitNoExpression;
  }
  return kExitOk;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  const auto cfg = pipeline_config(a.threshold, a.seed);
  const auto targets = parse_target_selection(a.targets);
  const auto scenes = load_scene_corpus(a.corpus);
  if (scenes.empty()) throw InvalidArgument("scene corpus " + a.corpus + " is empty");
  const auto rpn = load_rpn(a.rpn);
  const auto rin = load_rin(a.rin);
  const auto report = compare(rpn, rin, scenes, cfg, *targets);
  if (!a.out.empty()) write_text_file(a.out, report_to_json(report));
  out << report_summary(report);
  return kExitOk;
}

int cmd_eval_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const auto parsed = load_scene(a.scene);
  for (const auto& w : parsed.warnings) err << "warning: " << w << "\n";
  const Scene& scene = parsed.scene;
  const auto category = parse_category(a.relation);
  if (!category) throw InvalidArgument("unknown relation '" + a.relation + "'");

  ExpressionSignature sig;
  sig.category = *category;
  sig.target_type = a.target_type.empty() ? scene.at(a.target).type_name : a.target_type;
  if (a.reference) {
    sig.reference_type = scene.at(*a.reference).type_name;
  } else if (!a.reference_type.empty()) {
    sig.reference_type = a.reference_type;
  } else {
    throw InvalidArgument("give --reference or --reference-type");
  }
  const auto matches = matching_targets(scene, sig);
  const auto verdict = ambiguity_oracle(scene, a.target, sig);

  std::string ids;
  for (auto id : matches) ids += (ids.empty() ? "" : ",") + std::to_string(id);
  out << "{\"result\":\"" << to_string(verdict) << "\",\"target_id\":" << a.target << ",\"matching_targets\":["
      << ids << "]}\n";
  return kExitOk;
}

int cmd_gen_scenes(const GenArgs& a, std::ostream& out) {
  std::vector<Scene> scenes;
  if (a.kind == "ambiguous") {
    AmbiguousSceneSpec spec;
    spec.seed = a.seed;
    spec.mirrored_probability = a.mirrored_probability;
    scenes = generate_ambiguous_scenes(spec, a.count);
  } else {
    SceneGenSpec spec;
    spec.seed = a.seed;
    spec.min_objects = a.min_objects;
    spec.max_objects = a.max_objects;
    spec.duplicate_type_probability = a.duplicate_probability;
    scenes = generate_scenes(spec, a.count);
  }
  save_scene_corpus(a.out, scenes);
  out << "wrote " << scenes.size() << " scenes to " << a.out << "\n";
  return kExitOk;
}

void print_stats(const ExtractionStats& s, std::size_t samples, std::ostream& out, std::ostream& err) {
  for (const auto& w : s.warnings) err << "warning: " << w << "\n";
  out << "images: " << s.images << ", relationships: " << s.relationships
      << ", unmapped predicates: " << s.skipped_predicates << ", unusable boxes: " << s.skipped_boxes
      << ", samples: " << samples << "\n";
}

int cmd_extract_vg(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  const auto synonyms = a.synonyms.empty() ? SynonymMap::defaults() : SynonymMap::load(a.synonyms);
  if (a.kind == "rpn") {
    const auto r = extract_rpn_dataset(std::filesystem::path(a.annotations), synonyms, a.cap.value_or(kRpnClassCap),
                                       a.seed);
    save_jsonl(a.out, r.samples);
    print_stats(r.stats, r.samples.size(), out, err);
  } else {
    const auto r = extract_rin_dataset(std::filesystem::path(a.annotations), synonyms, a.cap.value_or(kRinClassCap),
                                       a.seed);
    save_jsonl(a.out, r.samples);
    print_stats(r.stats, r.samples.size(), out, err);
  }
  return kExitOk;
}

int cmd_synth_data(const SynthArgs& a, std::ostream& out) {
  if (a.kind == "rpn") {
    auto spec = SceneGenSpec::presence_defaults();
    spec.seed = a.seed;
    save_jsonl(a.out, synth_rpn_dataset(spec, a.count));
  } else {
    auto spec = SceneGenSpec::informativeness_defaults();
    spec.seed = a.seed;
    save_jsonl(a.out, synth_rin_dataset(spec, a.count));
  }
  out << "wrote " << a.count << " " << a.kind << " samples to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  log::configure_from_env();

  CLI::App app{"Spatial referring-expression generation", "refexp"};
  app.require_subcommand(1);
  const auto kinds = CLI::IsMember({"rpn", "rin"});
  const auto unit_interval = CLI::Range(0.0, 1.0);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train a presence (rpn) or informativeness (rin) network");
  train_cmd->add_option("kind", train_args.kind, "Network kind")->required()->check(kinds);
  train_cmd->add_option("dataset", train_args.dataset, "JSON-lines dataset")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train_args.out, "Weights file to write")->required();
  train_cmd->add_option("--seed", train_args.seed, "Seed for splits, initialization and shuffling");
  train_cmd->add_option("--learning-rate", train_args.config.learning_rate)->capture_default_str();
  train_cmd->add_option("--batch-size", train_args.config.batch_size)->capture_default_str();
  train_cmd->add_option("--max-epochs", train_args.config.max_epochs)->capture_default_str();
  train_cmd->add_option("--patience", train_args.config.patience)->capture_default_str();
  train_cmd->add_option("--validation-fraction", train_args.config.validation_fraction)->capture_default_str();

  DescribeArgs describe_args;
  auto* describe_cmd = app.add_subcommand("describe", "Generate a referring expression for one object");
  describe_cmd->add_option("scene", describe_args.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  describe_cmd->add_option("target", describe_args.target, "Target object id")->required();
  describe_cmd->add_option("--rpn", describe_args.rpn, "Presence network weights")->required()->check(CLI::ExistingFile);
  describe_cmd->add_option("--rin", describe_args.rin, "Informativeness network weights")
      ->required()
      ->check(CLI::ExistingFile);
  describe_cmd->add_option("--threshold", describe_args.threshold, "Presence threshold")
      ->capture_default_str()
      ->check(unit_interval);
  describe_cmd->add_option("--seed", describe_args.seed);

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Run both generators over a scene corpus and judge ambiguity");
  compare_cmd->add_option("corpus", compare_args.corpus, "JSON-lines scene corpus")
      ->required()
      ->check(CLI::ExistingFile);
  compare_cmd->add_option("--rpn", compare_args.rpn)->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--rin", compare_args.rin)->required()->check(CLI::ExistingFile);
  compare_cmd->add_option("--out", compare_args.out, "Report JSON file");
  compare_cmd->add_option("--threshold", compare_args.threshold)->capture_default_str()->check(unit_interval);
  compare_cmd->add_option("--targets", compare_args.targets, "all objects, or only those with a duplicated type")
      ->capture_default_str()
      ->check(CLI::IsMember({"all", "duplicated"}));
  compare_cmd->add_option("--seed", compare_args.seed);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("eval-oracle", "Judge whether an expression picks out its target");
  oracle_cmd->add_option("scene", oracle_args.scene)->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--target", oracle_args.target, "Intended target id")->required();
  oracle_cmd->add_option("--relation", oracle_args.relation, "right, left, on_top, at_bottom, in_front or behind")
      ->required();
  auto* reference_opt = oracle_cmd->add_option("--reference", oracle_args.reference, "Reference object id");
  oracle_cmd->add_option("--reference-type", oracle_args.reference_type, "Reference type name")
      ->excludes(reference_opt);
  oracle_cmd->add_option("--target-type", oracle_args.target_type, "Stated target type (default: the target's)");

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen-scenes", "Write a seeded scene corpus");
  gen_cmd->add_option("--kind", gen_args.kind, "random or ambiguous")
      ->capture_default_str()
      ->check(CLI::IsMember({"random", "ambiguous"}));
  gen_cmd->add_option("--count", gen_args.count)->capture_default_str();
  gen_cmd->add_option("--seed", gen_args.seed);
  gen_cmd->add_option("--out", gen_args.out)->required();
  gen_cmd->add_option("--min-objects", gen_args.min_objects)->capture_default_str();
  gen_cmd->add_option("--max-objects", gen_args.max_objects)->capture_default_str();
  gen_cmd->add_option("--duplicate-probability", gen_args.duplicate_probability)
      ->capture_default_str()
      ->check(unit_interval);
  gen_cmd->add_option("--mirrored-probability", gen_args.mirrored_probability)
      ->capture_default_str()
      ->check(unit_interval);

  ExtractArgs extract_args;
  auto* extract_cmd = app.add_subcommand("extract-vg", "Build a training set from relationship annotations");
  extract_cmd->add_option("annotations", extract_args.annotations)->required()->check(CLI::ExistingFile);
  extract_cmd->add_option("--kind", extract_args.kind)->required()->check(kinds);
  extract_cmd->add_option("--out", extract_args.out)->required();
  extract_cmd->add_option("--synonyms", extract_args.synonyms, "Predicate synonym table (JSON)")
      ->check(CLI::ExistingFile);
  extract_cmd->add_option("--cap", extract_args.cap, "Per-class sample cap");
  extract_cmd->add_option("--seed", extract_args.seed);

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth-data", "Write a rule-labelled synthetic training set");
  synth_cmd->add_option("--kind", synth_args.kind)->required()->check(kinds);
  synth_cmd->add_option("--count", synth_args.count)->required()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth_args.seed);
  synth_cmd->add_option("--out", synth_args.out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(train_args, out);
    if (describe_cmd->parsed()) return cmd_describe(describe_args, out, err);
    if (compare_cmd->parsed()) return cmd_compare(compare_args, out);
    if (oracle_cmd->parsed()) return cmd_eval_oracle(oracle_args, out, err);
    if (gen_cmd->parsed()) return cmd_gen_scenes(gen_args, out);
    if (extract_cmd->parsed()) return cmd_extract_vg(extract_args, out, err);
    if (synth_cmd->parsed()) return cmd_synth_data(synth_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace refexp::cli
