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

#include "refexp/evaluation.hpp"

#include <algorithm>
#include <cstdio>

#include "json_internal.hpp"
#include "refexp/error.hpp"
#include "refexp/krreg.hpp"
#include "refexp/log.hpp"
#include "refexp/pipeline.hpp"
#include "refexp/relation_networks.hpp"
#include "refexp/rules.hpp"
#include "refexp/scene_gen.hpp"

namespace refexp {

namespace {

using detail::json;

double ratio(std::size_t num, std::size_t den) noexcept {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void tally(MethodCounts& counts, const MethodOutcome& outcome) {
  if (!outcome.expression) {
    ++counts.no_expression;
  } else if (*outcome.ambiguity == Ambiguity::Unambiguous) {
    ++counts.unambiguous;
  } else {
    ++counts.ambiguous;
  }
}

MethodOutcome judge(const Scene& scene, std::optional<ReferringExpression> expression) {
  MethodOutcome out;
  if (expression) {
    out.ambiguity = ambiguity_oracle(scene, *expression);
    out.expression = std::move(expression);
  }
  return out;
}

json expression_value(const ReferringExpression& e) {
  return {{"target_id", e.target_id},
          {"reference_id", e.reference_id},
          {"relation", std::string(to_string(e.category))},
          {"phrase", e.phrase}};
}

json counts_value(const MethodCounts& c) {
  return {{"unambiguous", c.unambiguous},
          {"ambiguous", c.ambiguous},
          {"no_expression", c.no_expression},
          {"total", c.total()},
          {"unambiguous_rate", c.unambiguous_rate()},
          {"expression_unambiguous_rate", c.expression_unambiguous_rate()},
          {"no_expression_rate", c.no_expression_rate()}};
}

json outcome_value(const MethodOutcome& o) {
  if (!o.expression) return {{"result", "no_expression"}};
  json v = expression_value(*o.expression);
  v["result"] = std::string(to_string(*o.ambiguity));
  return v;
}

}  // namespace

std::string_view to_string(Ambiguity a) noexcept {
  return a == Ambiguity::Unambiguous ? "unambiguous" : "ambiguous";
}

std::vector<ObjectId> matching_targets(const Scene& scene, const ExpressionSignature& signature) {
  const auto target_type = canonical_type_name(signature.target_type);
  const auto reference_type = canonical_type_name(signature.reference_type);
  auto has_type = [&](const std::string& type) {
    return std::any_of(scene.objects().begin(), scene.objects().end(),
                       [&](const SceneObject& o) { return o.type_name == type; });
  };
  if (!has_type(target_type)) throw InvalidArgument("type '" + target_type + "' does not occur in the scene");
  if (!has_type(reference_type)) {
    throw InvalidArgument("type '" + reference_type + "' does not occur in the scene");
  }

  std::vector<ObjectId> out;
  for (const auto& t : scene.objects()) {
    if (t.type_name != target_type) continue;
    for (const auto& r : scene.objects()) {
      if (r.id == t.id || r.type_name != reference_type) continue;
      if (rule_holds(t.box, r.box, signature.category)) {
        out.push_back(t.id);
        break;
      }
    }
  }
  return out;
}

Ambiguity ambiguity_oracle(const Scene& scene, ObjectId intended_target, const ExpressionSignature& signature) {
  const auto matches = matching_targets(scene, signature);
  return matches.size() == 1 && matches.front() == intended_target ? Ambiguity::Unambiguous
                                                                   : Ambiguity::Ambiguous;
}

Ambiguity ambiguity_oracle(const Scene& scene, const ReferringExpression& expression) {
  return ambiguity_oracle(scene, expression.target_id,
                          {scene.at(expression.target_id).type_name,
                           scene.at(expression.reference_id).type_name, expression.category});
}

std::string_view to_string(TargetSelection t) noexcept { return t == TargetSelection::All ? "all" : "duplicated"; }

std::optional<TargetSelection> parse_target_selection(std::string_view name) noexcept {
  if (name == "all") return TargetSelection::All;
  if (name == "duplicated") return TargetSelection::Duplicated;
  return std::nullopt;
}

double MethodCounts::unambiguous_rate() const noexcept { return ratio(unambiguous, total()); }

double MethodCounts::expression_unambiguous_rate() const noexcept {
  return ratio(unambiguous, unambiguous + ambiguous);
}

double MethodCounts::no_expression_rate() const noexcept { return ratio(no_expression, total()); }

double EvalReport::agreement_rate() const noexcept { return ratio(agreements, records.size()); }

EvalReport compare(const MlpModel& rpn, const MlpModel& rin, std::span<const Scene> scenes,
                   const PipelineConfig& cfg, TargetSelection targets) {
  cfg.validate();
  check_rpn_shape(rpn);
  check_rin_shape(rin);

  EvalReport report;
  report.scenes = scenes.size();
  report.targets = targets;
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    const Scene& scene = scenes[s];
    if (scene.size() < 2) {
      ++report.skipped_scenes;
      log::warn("scene " + std::to_string(s) + " has fewer than two objects; skipped");
      continue;
    }
    const auto relations = score_scene(rpn, rin, scene);

    std::vector<ObjectId> ids;
    if (targets == TargetSelection::All) {
      for (const auto& o : scene.objects()) ids.push_back(o.id);
    } else {
      ids = duplicated_type_objects(scene);
    }

    for (ObjectId t : ids) {
      EvalRecord rec;
      rec.scene_index = s;
      rec.target_id = t;

      std::optional<ReferringExpression> ours;
      try {
        ours = describe_relations(relations, scene, t, cfg);
      } catch (const EmptyCandidates&) {
      }
      rec.ours = judge(scene, std::move(ours));
      rec.krreg = judge(scene, krreg_describe_relations(relations, scene, t, cfg));
      rec.agree = rec.ours.expression && rec.krreg.expression &&
                  rec.ours.expression->phrase == rec.krreg.expression->phrase;

      tally(report.ours, rec.ours);
      tally(report.krreg, rec.krreg);
      if (rec.agree) ++report.agreements;
      report.records.push_back(std::move(rec));
    }
    log::debug("scene " + std::to_string(s) + ": " + std::to_string(ids.size()) + " targets");
  }
  return report;
}

std::string expression_to_json(const ReferringExpression& expression) {
  return expression_value(expression).dump();
}

std::string error_to_json(std::string_view code, ObjectId target_id, std::string_view message) {
  return json{{"error", code}, {"target_id", target_id}, {"message", message}}.dump();
}

std::string report_to_json(const EvalReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"scene", r.scene_index},
                       {"target_id", r.target_id},
                       {"ours", outcome_value(r.ours)},
                       {"krreg", outcome_value(r.krreg)},
                       {"agree", r.agree}});
  }
  const json doc = {{"scenes", report.scenes},
                    {"skipped_scenes", report.skipped_scenes},
                    {"targets", std::string(to_string(report.targets))},
                    {"evaluated", report.records.size()},
                    {"ours", counts_value(report.ours)},
                    {"krreg", counts_value(report.krreg)},
                    {"agreements", report.agreements},
                    {"agreement_rate", report.agreement_rate()},
                    {"records", std::move(records)}};
  return doc.dump(2) + "\n";
}

std::string report_summary(const EvalReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %12s %10s %14s %16s\n", "method", "unambiguous", "ambiguous",
                "no_expression", "unambiguous_rate");
  out += line;
  auto row = [&](const char* name, const MethodCounts& c) {
    std::snprintf(line, sizeof line, "%-8s %12zu %10zu %14zu %15.2f%%\n", name, c.unambiguous, c.ambiguous,
                  c.no_expression, 100.0 * c.unambiguous_rate());
    out += line;
  };
  row("ours", report.ours);
  row("krreg", report.krreg);
  std::snprintf(line, sizeof line, "targets: %zu  agreement: %.2f%%\n", report.records.size(),
                100.0 * report.agreement_rate());
  out += line;
  return out;
}

}  // namespace refexp
