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

#include "fixtures.hpp"

#include "refexp/data.hpp"
#include "refexp/relation_networks.hpp"
#include "refexp/scene_gen.hpp"

namespace refexp::testing {

namespace {

TrainedModels train_models() {
  auto presence = SceneGenSpec::presence_defaults();
  presence.seed = 11;
  auto informativeness = SceneGenSpec::informativeness_defaults();
  informativeness.seed = 12;

  TrainConfig cfg;
  cfg.seed = 13;
  const auto [rpn_train, rpn_test] = split_holdout(to_dataset(synth_rpn_dataset(presence, 6000)), 0.15, 14);
  const auto [rin_train, rin_test] = split_holdout(to_dataset(synth_rin_dataset(informativeness, 8000)), 0.15, 14);
  auto rpn = train(rpn_train, rpn_layer_specs(), cfg).model;
  auto rin = train(rin_train, rin_layer_specs(), cfg).model;
  const double rpn_acc = accuracy(rpn, rpn_test);
  const double rin_acc = accuracy(rin, rin_test);
  return {std::move(rpn), std::move(rin), rpn_acc, rin_acc};
}

}  // namespace

const TrainedModels& trained_models() {
  static const TrainedModels models = train_models();
  return models;
}

}  // namespace refexp::testing
