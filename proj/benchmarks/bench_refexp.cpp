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

#include <benchmark/benchmark.h>

#include "refexp/data.hpp"
#include "refexp/krreg.hpp"
#include "refexp/pipeline.hpp"
#include "refexp/relation_networks.hpp"
#include "refexp/rules.hpp"
#include "refexp/scene_gen.hpp"

namespace {

using namespace refexp;

std::vector<Scene> scenes_of(int objects, std::size_t count = 64) {
  SceneGenSpec spec;
  spec.seed = 1;
  spec.min_objects = objects;
  spec.max_objects = objects;
  return generate_scenes(spec, count);
}

void BM_RuleRelations(benchmark::State& state) {
  Rng rng(1);
  std::vector<BoundingBox> boxes;
  for (int i = 0; i < 1024; ++i) {
    const double w = rng.uniform(10, 200), h = rng.uniform(10, 200);
    boxes.push_back({rng.uniform(0, 440), rng.uniform(0, 280), w, h});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rule_relations(boxes[i % 1024], boxes[(i * 7 + 3) % 1024]));
    ++i;
  }
}
BENCHMARK(BM_RuleRelations);

void BM_ForwardRpn(benchmark::State& state) {
  const auto model = MlpModel::initialized(rpn_layer_specs(), 1);
  const std::vector<double> x(8, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(model.forward(x));
}
BENCHMARK(BM_ForwardRpn);

void BM_ForwardRin(benchmark::State& state) {
  const auto model = MlpModel::initialized(rin_layer_specs(), 1);
  const std::vector<double> x(14, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(model.forward(x));
}
BENCHMARK(BM_ForwardRin);

void BM_ScoreScene(benchmark::State& state) {
  const auto rpn = MlpModel::initialized(rpn_layer_specs(), 1);
  const auto rin = MlpModel::initialized(rin_layer_specs(), 2);
  const auto scenes = scenes_of(static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(score_scene(rpn, rin, scenes[i++ % scenes.size()]));
}
BENCHMARK(BM_ScoreScene)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_DescribeRelations(benchmark::State& state) {
  const auto rpn = MlpModel::initialized(rpn_layer_specs(), 1);
  const auto rin = MlpModel::initialized(rin_layer_specs(), 2);
  const auto scenes = scenes_of(static_cast<int>(state.range(0)));
  std::vector<std::vector<SpatialRelation>> scored;
  for (const auto& s : scenes) scored.push_back(score_scene(rpn, rin, s));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto k = i++ % scenes.size();
    try {
      benchmark::DoNotOptimize(describe_relations(scored[k], scenes[k], 0, PipelineConfig{}));
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_DescribeRelations)->Arg(4)->Arg(8)->Arg(16);

void BM_KrregDescribeRelations(benchmark::State& state) {
  const auto rpn = MlpModel::initialized(rpn_layer_specs(), 1);
  const auto rin = MlpModel::initialized(rin_layer_specs(), 2);
  const auto scenes = scenes_of(static_cast<int>(state.range(0)));
  std::vector<std::vector<SpatialRelation>> scored;
  for (const auto& s : scenes) scored.push_back(score_scene(rpn, rin, s));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto k = i++ % scenes.size();
    benchmark::DoNotOptimize(krreg_describe_relations(scored[k], scenes[k], 0, PipelineConfig{}));
  }
}
BENCHMARK(BM_KrregDescribeRelations)->Arg(4)->Arg(8)->Arg(16);

void BM_TrainEpochRpn(benchmark::State& state) {
  auto spec = SceneGenSpec::presence_defaults();
  spec.seed = 3;
  const auto data = to_dataset(synth_rpn_dataset(spec, 6000));
  TrainConfig cfg;
  cfg.max_epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(data, rpn_layer_specs(), cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_TrainEpochRpn)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
