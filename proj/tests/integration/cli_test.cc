// Copyright 2026 The layoutplan Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fixtures.h"
#include "layoutplan/bench_builder.h"
#include "layoutplan/layout_io.h"
#include "layoutplan/pipeline.h"

namespace layoutplan {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code = 0;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "layoutplan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::size_t line_count(const fs::path& p) {
  const std::string text = read_text_file(p);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  // Spatial bench and pool written to disk.
  void write_spatial(int jitter = 0) {
    sb_ = testing::make_synthetic_bench(5, jitter);
    bench_ = dir_ / "spatial.jsonl";
    support_ = dir_ / "support.jsonl";
    write_prompt_records(bench_, sb_.spatial);
    write_layout_records(support_, sb_.support);
  }

  fs::path dir_ = testing::temp_dir("cli");
  testing::SyntheticBench sb_;
  fs::path bench_, support_;
};

TEST_F(CliTest, VersionAndUsage) {
  auto v = run_cli({"--version"});
  EXPECT_EQ(v.code, cli::kOk);
  EXPECT_NE(v.out.find("layoutplan 0.1.0"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"plan", "--bench", "x"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsage);
}

TEST_F(CliTest, BuildBenchWritesSplitsAndManifest) {
  std::mt19937_64 rng(21);
  const auto recs = testing::random_annotations(rng, 120);
  const auto inst = testing::write_file(dir_ / "instances.json", testing::coco_instances_json(recs));
  const auto caps = testing::write_file(dir_ / "captions.json", testing::coco_captions_json(recs));
  const auto out = dir_ / "bench";
  auto r = run_cli({"build-bench", "--instances", inst.string(), "--captions", caps.string(),
                    "--out", out.string(), "--seed", "3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto manifest = json::parse(read_text_file(out / "manifest_test.json"));
  EXPECT_EQ(manifest["self_consistency_violations"], 0);
  ASSERT_FALSE(manifest["outputs"].empty());
  for (const auto& [key, path] : manifest["outputs"].items()) {
    const fs::path p = path.get<std::string>();
    ASSERT_TRUE(fs::exists(p)) << p;
    // {task}_{subtype}_{split}.jsonl
    EXPECT_EQ(p.filename().string().substr(p.filename().string().size() - 11), "_test.jsonl");
    EXPECT_EQ(line_count(p), manifest["counts"][key]["written"].get<std::size_t>());
  }
  // Same seed, same files.
  const auto out2 = dir_ / "bench2";
  ASSERT_EQ(run_cli({"build-bench", "--instances", inst.string(), "--captions", caps.string(),
                     "--out", out2.string(), "--seed", "3"})
                .code,
            cli::kOk);
  for (const auto& [key, path] : manifest["outputs"].items()) {
    const fs::path p = path.get<std::string>();
    EXPECT_EQ(read_text_file(p), read_text_file(out2 / p.filename()));
  }
}

TEST_F(CliTest, BuildBenchInputErrors) {
  const auto bad = testing::write_file(dir_ / "bad.json", "{\"images\": [1, 2,");
  auto r = run_cli({"build-bench", "--instances", bad.string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, cli::kData);
  EXPECT_NE(r.err.find("bad.json"), std::string::npos) << r.err;

  const auto empty = testing::write_file(dir_ / "empty.json", "");
  r = run_cli({"build-bench", "--instances", empty.string(), "--out", (dir_ / "o").string()});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);

  r = run_cli({"build-bench", "--instances", (dir_ / "nope.json").string(), "--out",
               (dir_ / "o").string()});
  EXPECT_EQ(r.code, cli::kData);
}

TEST_F(CliTest, PlanThenEvalWithMock) {
  write_spatial();
  const auto preds = dir_ / "preds.jsonl";
  auto p = run_cli({"plan", "--bench", bench_.string(), "--support", support_.string(), "--out",
                    preds.string(), "--task", "spatial", "--backend", "mock"});
  ASSERT_EQ(p.code, cli::kOk) << p.err;
  EXPECT_TRUE(fs::exists(preds.string() + ".manifest.json"));
  // Spatial runs default to five samples per record.
  EXPECT_EQ(line_count(preds), sb_.spatial.size() * 5);

  const auto report = dir_ / "report.json";
  auto e = run_cli({"eval", "--predictions", preds.string(), "--bench", bench_.string(), "--task",
                    "spatial", "--out", report.string()});
  ASSERT_EQ(e.code, cli::kOk) << e.err;
  EXPECT_FALSE(e.out.empty());
  // Jitter 0 echoes the matching exemplar, which is the ground truth.
  const auto j = json::parse(read_text_file(report));
  EXPECT_EQ(j["parse_failures"], 0);
  EXPECT_DOUBLE_EQ(j["overall"]["accuracy"].get<double>(), 100.0);
}

TEST_F(CliTest, SampleCountFlag) {
  write_spatial();
  const auto preds = dir_ / "preds5.jsonl";
  auto p = run_cli({"plan", "--bench", bench_.string(), "--support", support_.string(), "--out",
                    preds.string(), "--task", "spatial", "--n-samples", "5", "--mock-jitter", "1"});
  ASSERT_EQ(p.code, cli::kOk) << p.err;
  const auto got = read_predictions(preds);
  ASSERT_EQ(got.size(), sb_.spatial.size() * 5);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].id, sb_.spatial[i / 5].id);
    EXPECT_EQ(got[i].sample, static_cast<int>(i % 5));
  }
}

TEST_F(CliTest, AblateFlagsSwitchToPlainFloats) {
  write_spatial();
  const auto preds = dir_ / "plain.jsonl";
  const auto audit = dir_ / "audit.jsonl";
  auto p = run_cli({"plan", "--bench", bench_.string(), "--support", support_.string(), "--out",
                    preds.string(), "--task", "spatial", "--ablate", "no-css", "no-norm",
                    "--audit-log", audit.string()});
  ASSERT_EQ(p.code, cli::kOk) << p.err;
  const auto manifest = json::parse(read_text_file(preds.string() + ".manifest.json"));
  EXPECT_EQ(manifest["config"]["css"], false);
  EXPECT_EQ(manifest["config"]["normalization"], false);
  std::istringstream in(read_text_file(audit));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    for (const auto& c : json::parse(line)["completions"]) {
      const auto s = c.get<std::string>();
      EXPECT_EQ(s.find('{'), std::string::npos) << s;
      EXPECT_NE(s.find("0."), std::string::npos) << s;
    }
    ++n;
  }
  EXPECT_EQ(n, sb_.spatial.size());
  for (const auto& r : read_predictions(preds)) EXPECT_EQ(r.status, SampleStatus::kOk);
}

TEST_F(CliTest, EvalRejectsOrphansAndMissing) {
  write_spatial();
  const auto preds = dir_ / "p.jsonl";
  ASSERT_EQ(run_cli({"plan", "--bench", bench_.string(), "--support", support_.string(), "--out",
                     preds.string(), "--task", "spatial"})
                .code,
            cli::kOk);
  auto list = read_predictions(preds);
  auto orphan = list;
  orphan[0].id = "not-in-bench";
  const auto orphan_path = dir_ / "orphan.jsonl";
  write_predictions(orphan_path, orphan);
  auto e = run_cli({"eval", "--predictions", orphan_path.string(), "--bench", bench_.string(),
                    "--task", "spatial"});
  EXPECT_NE(e.code, cli::kOk);
  EXPECT_NE(e.err.find("not-in-bench"), std::string::npos) << e.err;

  // Drop every sample of the last record.
  const std::string last = list.back().id;
  std::erase_if(list, [&](const PredictionRecord& r) { return r.id == last; });
  const auto partial = dir_ / "partial.jsonl";
  write_predictions(partial, list);
  EXPECT_EQ(run_cli({"eval", "--predictions", partial.string(), "--bench", bench_.string(),
                     "--task", "spatial"})
                .code,
            cli::kData);
  EXPECT_EQ(run_cli({"eval", "--predictions", partial.string(), "--bench", bench_.string(),
                     "--task", "spatial", "--allow-missing"})
                .code,
            cli::kOk);
}

TEST_F(CliTest, HttpBackendWithoutCredentialIsUsageError) {
  write_spatial();
  ::unsetenv("LAYOUTPLAN_CLI_TEST_KEY");
  auto p = run_cli({"plan", "--bench", bench_.string(), "--support", support_.string(), "--out",
                    (dir_ / "x.jsonl").string(), "--task", "spatial", "--backend", "http",
                    "--api-key-env", "LAYOUTPLAN_CLI_TEST_KEY"});
  EXPECT_EQ(p.code, cli::kUsage);
  EXPECT_NE(p.err.find("LAYOUTPLAN_CLI_TEST_KEY"), std::string::npos) << p.err;
  EXPECT_FALSE(fs::exists(dir_ / "x.jsonl"));
}

TEST_F(CliTest, RenderWritesSvgPerRecord) {
  write_spatial();
  const auto out = dir_ / "svg";
  auto r = run_cli({"render", "-i", bench_.string(), "-i", support_.string(), "--out", out.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(out)) {
    EXPECT_EQ(entry.path().extension(), ".svg");
    EXPECT_EQ(read_text_file(entry.path()).rfind("<svg", 0), 0u);
    ++n;
  }
  EXPECT_GT(n, 0u);
  const auto junk = testing::write_file(dir_ / "junk.jsonl", "not json\n");
  r = run_cli({"render", "-i", junk.string(), "--out", out.string()});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("skipped 1"), std::string::npos) << r.out;
}

TEST_F(CliTest, AblateProducesTables) {
  write_spatial();
  const auto out = dir_ / "ablate";
  auto r = run_cli({"ablate", "--bench", bench_.string(), "--support", support_.string(), "--out",
                    out.string(), "--task", "spatial", "--k-sweep", "2,4"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  // Header plus eight component rows and two sweep rows.
  EXPECT_EQ(line_count(out / "ablation.csv"), 11u);
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

}  // namespace
}  // namespace layoutplan
