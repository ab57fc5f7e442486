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

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "refexp/data.hpp"
#include "refexp/error.hpp"
#include "refexp/evaluation.hpp"
#include "refexp/krreg.hpp"
#include "refexp/pipeline.hpp"
#include "refexp/relation_networks.hpp"
#include "refexp/rules.hpp"
#include "refexp/scene_gen.hpp"
#include "refexp/scene_io.hpp"

#ifdef REFEXP_HAVE_CLI
#include "refexp_cli/cli.hpp"
#endif

namespace {

using namespace refexp;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

std::string outcome(const std::function<ReferringExpression()>& f) {
  try {
    return f().phrase;
  } catch (const EmptyCandidates& e) {
    return "EmptyCandidates(" + std::to_string(e.target_id()) + ")";
  }
}

// Networks trained in AC3 and reused by the later criteria.
std::optional<MlpModel> g_rpn, g_rin;

Verdict ac1_rule_table() {
  const auto start = Clock::now();
  Rng rng(1001);
  std::size_t mismatches = 0, property_failures = 0;
  constexpr int kPairs = 100000;
  using C = RelationCategory;
  for (int i = 0; i < kPairs; ++i) {
    const auto a = testing::random_box(rng), b = testing::random_box(rng);
    for (auto c : kAllCategories) {
      mismatches += rule_holds(a, b, c) != testing::table_rule(a, b, static_cast<int>(index_of(c)));
    }
    const bool antisymmetric = rule_holds(a, b, C::Right) == rule_holds(b, a, C::Left) &&
                               rule_holds(a, b, C::OnTop) == rule_holds(b, a, C::AtBottom) &&
                               rule_holds(a, b, C::InFront) == rule_holds(b, a, C::Behind);
    const int horizontal = rule_holds(a, b, C::Right) + rule_holds(a, b, C::Left) + rule_holds(a, b, C::OnTop) +
                           rule_holds(a, b, C::AtBottom);
    const bool exclusive = horizontal <= 1 && !(rule_holds(a, b, C::InFront) && rule_holds(a, b, C::Behind));
    property_failures += !antisymmetric || !exclusive;
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && property_failures == 0 && t < 5.0,
          format("%zu mismatches, %zu property failures over %d pairs in %.2f s", mismatches, property_failures,
                 kPairs, t)};
}

Verdict ac2_gradients() {
  Rng rng(1002);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto rpn = MlpModel::initialized(rpn_layer_specs(), 5000 + static_cast<std::uint64_t>(trial));
    const auto rin = MlpModel::initialized(rin_layer_specs(), 6000 + static_cast<std::uint64_t>(trial));
    std::vector<double> x8(8), x14(14);
    for (auto& v : x8) v = rng.uniform();
    for (auto& v : x14) v = rng.uniform();
    worst = std::max(worst, gradient_check(rpn, x8, static_cast<int>(rng.below(6))));
    worst = std::max(worst, gradient_check(rin, x14, static_cast<int>(rng.below(2))));
  }
  return {worst < 1e-4, format("max relative error %.3g over 20 trials per shape", worst)};
}

Verdict ac3_learnability() {
  auto presence = SceneGenSpec::presence_defaults();
  presence.seed = 11;
  auto informativeness = SceneGenSpec::informativeness_defaults();
  informativeness.seed = 12;
  TrainConfig cfg;
  cfg.seed = 13;

  auto start = Clock::now();
  const auto [rpn_train, rpn_test] = split_holdout(to_dataset(synth_rpn_dataset(presence, 6000)), 0.15, 14);
  g_rpn = train(rpn_train, rpn_layer_specs(), cfg).model;
  const double rpn_acc = accuracy(*g_rpn, rpn_test);
  const double rpn_time = seconds_since(start);

  start = Clock::now();
  const auto [rin_train, rin_test] = split_holdout(to_dataset(synth_rin_dataset(informativeness, 8000)), 0.15, 14);
  g_rin = train(rin_train, rin_layer_specs(), cfg).model;
  const double rin_acc = accuracy(*g_rin, rin_test);
  const double rin_time = seconds_since(start);

  return {rpn_acc >= 0.95 && rin_acc >= 0.85 && rpn_time < 120 && rin_time < 120,
          format("RPN %.2f%% held-out in %.1f s, RIN %.2f%% held-out in %.1f s", 100 * rpn_acc, rpn_time,
                 100 * rin_acc, rin_time)};
}

Verdict ac4_oracle_equivalence() {
  Rng rng(1004);
  std::size_t agree = 0, total = 0, scenes_agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto scene = testing::random_scene(rng, 2, 8);
    bool all = true;
    for (const auto& o : scene.objects()) {
      const bool same = outcome([&] { return describe(*g_rpn, *g_rin, scene, o.id, PipelineConfig{}); }) ==
                        outcome([&] { return testing::describe_oracle(*g_rpn, *g_rin, scene, o.id, 0.5); });
      agree += same;
      all = all && same;
      ++total;
    }
    scenes_agree += all;
  }
  return {agree == total, format("%zu/1000 scenes and %zu/%zu targets agree", scenes_agree, agree, total)};
}

Verdict ac5_threshold() {
  using C = RelationCategory;
  const std::vector<SpatialRelation> edge = {{0, 1, C::Right, 0.5, 0.9}, {0, 1, C::Behind, 0.5000001, 0.1}};
  const auto sets = build_candidate_sets(edge, 0, PipelineConfig{});
  const bool excluded = sets.present.size() == 1 && sets.present[0].category == C::Behind;

  SceneGenSpec spec;
  spec.seed = 1005;
  spec.min_objects = 6;
  const auto scene = generate_scenes(spec, 1).front();
  const auto relations = score_scene(*g_rpn, *g_rin, scene);
  bool monotone = true;
  std::vector<SpatialRelation> previous(relations.begin(), relations.end());
  std::string sizes;
  for (int k = 1; k <= 9; ++k) {
    PipelineConfig cfg;
    cfg.presence_threshold = k / 10.0;
    const auto present = build_candidate_sets(relations, scene.objects().front().id, cfg).present;
    monotone = monotone && present.size() <= previous.size() &&
               std::includes(previous.begin(), previous.end(), present.begin(), present.end(),
                             [](const SpatialRelation& a, const SpatialRelation& b) {
                               return std::tie(a.target_id, a.reference_id, a.category) <
                                      std::tie(b.target_id, b.reference_id, b.category);
                             });
    sizes += (sizes.empty() ? "" : " ") + std::to_string(present.size());
    previous = present;
  }
  return {excluded && monotone, format("p = 0.5 %s; |S| for T = 0.1..0.9: %s", excluded ? "excluded" : "kept",
                                       sizes.c_str())};
}

Verdict ac6_confidence_selection() {
  using C = RelationCategory;
  const std::vector<SpatialRelation> candidates = {{2, 0, C::Right, 0.9649, 0.4940}, {2, 1, C::Right, 0.8735, 0.9860}};
  const auto chosen = select_relation(candidates);
  return {chosen == candidates[1], format("selected p = %.4f, c = %.4f", chosen.probability, chosen.confidence)};
}

Verdict ac7_krreg_failure() {
  AmbiguousSceneSpec spec;
  spec.seed = 1007;
  spec.mirrored_probability = 1.0;
  const auto scenes = generate_ambiguous_scenes(spec, 50);
  std::size_t krreg_fail_scenes = 0, rescued = 0, cases = 0;
  for (const auto& scene : scenes) {
    bool scene_failed = false;
    for (auto t : duplicated_type_objects(scene)) {
      if (krreg_describe(*g_rpn, scene, t, PipelineConfig{})) continue;
      scene_failed = true;
      ++cases;
      try {
        describe(*g_rpn, *g_rin, scene, t, PipelineConfig{});
        ++rescued;
      } catch (const EmptyCandidates&) {
      }
    }
    krreg_fail_scenes += scene_failed;
  }
  const double rate = cases ? static_cast<double>(rescued) / static_cast<double>(cases) : 0.0;
  return {krreg_fail_scenes >= 1 && rate >= 0.8,
          format("KRREG gave no expression in %zu/50 scenes (%zu targets); ours succeeded on %zu (%.1f%%)",
                 krreg_fail_scenes, cases, rescued, 100 * rate)};
}

Verdict ac8_ambiguity() {
  AmbiguousSceneSpec spec;
  spec.seed = 1008;
  const auto scenes = generate_ambiguous_scenes(spec, 200);
  const auto report = compare(*g_rpn, *g_rin, scenes, PipelineConfig{}, TargetSelection::Duplicated);
  const double ours = report.ours.unambiguous_rate(), krreg = report.krreg.unambiguous_rate();
  return {ours >= 0.9 && ours > krreg,
          format("unambiguous: ours %.2f%%, KRREG %.2f%% over %zu targets (KRREG no expression %zu)", 100 * ours,
                 100 * krreg, report.records.size(), report.krreg.no_expression)};
}

#ifdef REFEXP_HAVE_CLI
int cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}
#endif

Verdict ac9_determinism() {
  const fs::path root = fs::temp_directory_path() / "refexp_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::vector<std::string>> outputs;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / std::to_string(run);
    fs::create_directories(dir);
    auto p = [&](const char* name) { return (dir / name).string(); };
#ifdef REFEXP_HAVE_CLI
    int rc = 0;
    rc |= cli_run({"synth-data", "--kind", "rpn", "--count", "3000", "--seed", "5", "--out", p("rpn.jsonl")});
    rc |= cli_run({"synth-data", "--kind", "rin", "--count", "3000", "--seed", "6", "--out", p("rin.jsonl")});
    rc |= cli_run({"train", "rpn", p("rpn.jsonl"), "--out", p("rpn.json"), "--seed", "7"});
    rc |= cli_run({"train", "rin", p("rin.jsonl"), "--out", p("rin.json"), "--seed", "7"});
    rc |= cli_run({"gen-scenes", "--kind", "ambiguous", "--count", "50", "--seed", "8", "--out", p("corpus.jsonl")});
    rc |= cli_run({"compare", p("corpus.jsonl"), "--rpn", p("rpn.json"), "--rin", p("rin.json"), "--out",
                   p("report.json")});
    if (rc != 0) return {false, "a command failed"};
#else
    auto presence = SceneGenSpec::presence_defaults();
    presence.seed = 5;
    auto informativeness = SceneGenSpec::informativeness_defaults();
    informativeness.seed = 6;
    TrainConfig cfg;
    cfg.seed = 7;
    const auto rpn = train(to_dataset(synth_rpn_dataset(presence, 3000)), rpn_layer_specs(), cfg).model;
    const auto rin = train(to_dataset(synth_rin_dataset(informativeness, 3000)), rin_layer_specs(), cfg).model;
    save(rpn, p("rpn.json"));
    save(rin, p("rin.json"));
    AmbiguousSceneSpec spec;
    spec.seed = 8;
    write_text_file(p("report.json"),
                    report_to_json(compare(rpn, rin, generate_ambiguous_scenes(spec, 50), PipelineConfig{})));
#endif
    outputs.push_back({read_text_file(p("rpn.json")), read_text_file(p("rin.json")), read_text_file(p("report.json"))});
  }
  fs::remove_all(root);
  const bool same = outputs[0] == outputs[1];
  return {same, format("weights and report %s across two seeded runs (%zu report bytes)",
                       same ? "byte-identical" : "differ", outputs[0][2].size())};
}

Verdict ac10_serialization() {
  Rng rng(1010);
  std::size_t mismatches = 0;
  for (const MlpModel* model : {&*g_rpn, &*g_rin}) {
    const auto reloaded = model_from_json(model_to_json(*model));
    for (int i = 0; i < 100; ++i) {
      std::vector<double> x(static_cast<std::size_t>(model->input_dim()));
      for (auto& v : x) v = rng.uniform();
      const auto a = model->forward(x), b = reloaded.forward(x);
      mismatches += a.size() != b.size() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) != 0;
    }
  }
  return {mismatches == 0, format("%zu of 200 forward outputs differ after a round trip", mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"AC1 rule-table fidelity", ac1_rule_table},
      {"AC2 gradient correctness", ac2_gradients},
      {"AC3 learnability", ac3_learnability},
      {"AC4 pipeline-oracle equivalence", ac4_oracle_equivalence},
      {"AC5 threshold semantics", ac5_threshold},
      {"AC6 confidence-based selection", ac6_confidence_selection},
      {"AC7 baseline failure mode", ac7_krreg_failure},
      {"AC8 ambiguity rate", ac8_ambiguity},
      {"AC9 determinism", ac9_determinism},
      {"AC10 serialization", ac10_serialization},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
