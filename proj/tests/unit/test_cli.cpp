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

#include <filesystem>
#include <regex>
#include <sstream>

#include "fixtures.hpp"
#include "refexp/data.hpp"
#include "refexp/scene_io.hpp"
#include "refexp_cli/cli.hpp"

namespace refexp {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("refexp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const auto& m = testing::trained_models();
    save(m.rpn, path("rpn.json"));
    save(m.rin, path("rin.json"));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_scene(const std::string& name, const Scene& s) const {
    write_text_file(path(name), scene_to_json(s));
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, TrainReachesHeldOutAccuracy) {
  auto spec = SceneGenSpec::presence_defaults();
  spec.seed = 11;
  save_jsonl(path("rpn.jsonl"), synth_rpn_dataset(spec, 6000));
  const auto r = run({"train", "rpn", path("rpn.jsonl"), "--out", path("trained.json"), "--seed", "3"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::smatch m;
  const std::regex row(R"(RPN\s+[\d.]+%\s+[\d.]+%\s+([\d.]+)%)");
  ASSERT_TRUE(std::regex_search(r.out, m, row)) << r.out;
  EXPECT_GE(std::stod(m[1]), 95.0);
  EXPECT_NO_THROW(check_rpn_shape(load(path("trained.json"))));
}

TEST_F(Cli, TrainErrors) {
  EXPECT_EQ(run({"train", "rpn", path("missing.jsonl"), "--out", path("x.json")}).code, cli::kExitUsage);
  auto spec = SceneGenSpec::informativeness_defaults();
  save_jsonl(path("rin.jsonl"), synth_rin_dataset(spec, 20));
  const auto r = run({"train", "rpn", path("rin.jsonl"), "--out", path("x.json")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("features"), std::string::npos) << r.err;
  EXPECT_EQ(run({"train", "cnn", path("rin.jsonl"), "--out", path("x.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(Cli, DescribePrintsAPhrase) {
  const auto scene = write_scene("s.json", Scene(640, 480, {{0, "book", {60, 200, 80, 60}},
                                                            {1, "mouse", {280, 200, 80, 60}},
                                                            {2, "book", {420, 200, 80, 60}}}));
  const auto r = run({"describe", scene, "2", "--rpn", path("rpn.json"), "--rin", path("rin.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"phrase\":\"The book to the right of the mouse\""), std::string::npos) << r.out;
}

TEST_F(Cli, DescribeFailures) {
  const auto twins = write_scene("twins.json", Scene(640, 480, {{0, "cup", {200, 150, 100, 100}}, {1, "cup", {200, 150, 100, 100}}}));
  auto r = run({"describe", twins, "0", "--rpn", path("rpn.json"), "--rin", path("rin.json")});
  EXPECT_EQ(r.code, cli::kExitNoExpression);
  EXPECT_NE(r.out.find("\"error\""), std::string::npos);
  EXPECT_EQ(run({"describe", twins, "5", "--rpn", path("rpn.json"), "--rin", path("rin.json")}).code, cli::kExitUsage);
  const auto single = write_scene("one.json", Scene(640, 480, {{0, "cup", {200, 150, 100, 100}}}));
  EXPECT_EQ(run({"describe", single, "0", "--rpn", path("rpn.json"), "--rin", path("rin.json")}).code, cli::kExitUsage);
  // Networks swapped.
  EXPECT_EQ(run({"describe", twins, "0", "--rpn", path("rin.json"), "--rin", path("rpn.json")}).code, cli::kExitUsage);
}

TEST_F(Cli, CompareWritesAReport) {
  ASSERT_EQ(run({"gen-scenes", "--kind", "ambiguous", "--count", "10", "--seed", "4", "--out", path("c.jsonl")}).code,
            cli::kExitOk);
  const auto r = run({"compare", path("c.jsonl"), "--rpn", path("rpn.json"), "--rin", path("rin.json"), "--out",
                      path("report.json"), "--targets", "duplicated"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("krreg"), std::string::npos);
  EXPECT_NE(read_text_file(path("report.json")).find("\"evaluated\": 20"), std::string::npos);

  write_text_file(path("empty.jsonl"), "");
  EXPECT_EQ(run({"compare", path("empty.jsonl"), "--rpn", path("rpn.json"), "--rin", path("rin.json")}).code,
            cli::kExitUsage);
}

TEST_F(Cli, EvalOracle) {
  const auto scene = write_scene("s.json", Scene(640, 480, {{0, "book", {300, 100, 50, 50}},
                                                            {1, "mouse", {100, 100, 50, 50}},
                                                            {2, "book", {450, 100, 50, 50}}}));
  auto r = run({"eval-oracle", scene, "--target", "0", "--reference", "1", "--relation", "right"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"result\":\"ambiguous\""), std::string::npos) << r.out;
  r = run({"eval-oracle", scene, "--target", "2", "--reference", "0", "--relation", "right"});
  EXPECT_NE(r.out.find("\"result\":\"unambiguous\""), std::string::npos) << r.out;
  EXPECT_EQ(run({"eval-oracle", scene, "--target", "0", "--reference-type", "lamp", "--relation", "right"}).code,
            cli::kExitUsage);
}

TEST_F(Cli, SynthAndExtract) {
  ASSERT_EQ(run({"synth-data", "--kind", "rin", "--count", "50", "--out", path("d.jsonl")}).code, cli::kExitOk);
  EXPECT_EQ(load_dataset_jsonl(path("d.jsonl")).examples.size(), 50u);
  write_text_file(path("vg.json"), "");
  const auto r = run({"extract-vg", path("vg.json"), "--kind", "rpn", "--out", path("e.jsonl")});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.err.find("annotation file is empty"), std::string::npos) << r.err;
}

}  // namespace
}  // namespace refexp
