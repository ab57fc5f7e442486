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

#include "refexp/mlp.hpp"

namespace refexp::testing {

struct TrainedModels {
  MlpModel rpn;
  MlpModel rin;
  double rpn_test_accuracy = 0;
  double rin_test_accuracy = 0;
};

/// Presence and informativeness networks trained once per process on
/// synthetic data (6,000 and 8,000 samples) with fixed seeds.
const TrainedModels& trained_models();

}  // namespace refexp::testing
