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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "refexp/error.hpp"
#include "refexp/mlp.hpp"
#include "refexp/relation_networks.hpp"
#include "refexp/scene_io.hpp"

namespace refexp {
namespace {

bool bit_equal(const MlpModel& a, const MlpModel& b) {
  if (a.layers().size() != b.layers().size() || a.dropout_rate() != b.dropout_rate()) return false;
  for (std::size_t k = 0; k < a.layers().size(); ++k) {
    const auto &la = a.layers()[k], &lb = b.layers()[k];
    if (la.spec() != lb.spec() || la.weights.size() != lb.weights.size() || la.bias.size() != lb.bias.size()) {
      return false;
    }
    if (std::memcmp(la.weights.data(), lb.weights.data(), la.weights.size() * sizeof(double)) != 0) return false;
    if (std::memcmp(la.bias.data(), lb.bias.data(), la.bias.size() * sizeof(double)) != 0) return false;
  }
  return true;
}

std::string field_of(std::string_view text) {
  try {
    model_from_json(text);
  } catch (const FormatError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(ModelJson, RoundTripIsBitExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rpn = MlpModel::initialized(rpn_layer_specs(), seed);
    rpn.layer(2).bias[1] = 1e-300;
    rpn.layer(0).weights[0] = -0.1 - 1e-17;
    EXPECT_TRUE(bit_equal(rpn, model_from_json(model_to_json(rpn))));
    const auto rin = MlpModel::initialized(rin_layer_specs(), seed, 0.35);
    EXPECT_TRUE(bit_equal(rin, model_from_json(model_to_json(rin))));
  }
}

TEST(ModelJson, SaveAndLoadThroughAFile) {
  const auto path = std::filesystem::temp_directory_path() / "refexp_mlp_io_test.json";
  const auto rin = MlpModel::initialized(rin_layer_specs(), 42);
  save(rin, path);
  EXPECT_TRUE(bit_equal(rin, load(path)));
  std::filesystem::remove(path);
  EXPECT_THROW(load(path), Error);
}

TEST(ModelJson, TruncatedFileIsAFormatError) {
  const auto text = model_to_json(MlpModel::initialized(rpn_layer_specs(), 1));
  EXPECT_THROW(model_from_json(text.substr(0, text.size() / 2)), FormatError);
  EXPECT_THROW(model_from_json(""), FormatError);
}

TEST(ModelJson, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"({"dropout": 0.2, "layers": []})"), "version");
  EXPECT_EQ(field_of(R"({"version": 2, "dropout": 0.2, "layers": []})"), "version");
  EXPECT_EQ(field_of(R"({"version": 1, "dropout": 0.2, "layers": []})"), "layers");
  EXPECT_EQ(field_of(R"({"version": 1, "dropout": 0.2, "layers": [
      {"in": 2, "out": 1, "activation": "relu", "w": [1, 2, 3], "b": [0]}]})"),
            "layers[0].w");
  EXPECT_EQ(field_of(R"({"version": 1, "dropout": 0.2, "layers": [
      {"in": 2, "out": 1, "activation": "gelu", "w": [1, 2], "b": [0]}]})"),
            "layers[0].activation");
  EXPECT_EQ(field_of(R"({"version": 1, "dropout": 0.2, "layers": [
      {"in": 2, "out": 1, "activation": "relu", "w": [1, 2], "b": [0]},
      {"in": 3, "out": 1, "activation": "sigmoid", "w": [1, 2, 3], "b": [0]}]})"),
            "layers[1].in");
}

TEST(ModelJson, ShapeChecksRejectTheOtherNetwork) {
  const auto rpn = model_from_json(model_to_json(MlpModel::initialized(rpn_layer_specs(), 1)));
  EXPECT_NO_THROW(check_rpn_shape(rpn));
  EXPECT_THROW(check_rin_shape(rpn), ShapeMismatch);
  // A 12-wide first layer is not the informativeness network.
  std::vector<LayerSpec> narrow = rin_layer_specs();
  narrow[0].input_dim = 12;
  EXPECT_THROW(check_rin_shape(MlpModel::initialized(narrow, 1)), ShapeMismatch);
}

}  // namespace
}  // namespace refexp
