// Copyright 2026 The simaug Authors
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

#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "simaug/pipeline.hpp"
#include "simaug/synth.hpp"
#include "test_util.hpp"

namespace simaug {
namespace {

using testing::code_of;
using testing::TempDir;

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

SynthSpec tiny_spec() {
  SynthSpec s;
  s.groups = 2;
  s.users_per_group = 20;
  s.items_per_group = 15;
  s.dim = 8;
  return s;
}

RunConfig tiny_run(const TempDir& dir) {
  write_synthetic(generate_synthetic(tiny_spec()), dir.path());
  RunConfig c;
  c.interactions = dir / "interactions.tsv";
  c.delimiter = "tab";
  c.item_embeddings = dir / "items";
  c.k_core = 0;
  c.active_fraction = 0.2;
  c.pool_k = 3;
  c.per_user = 2;
  c.model.embedding_dim = 8;
  c.model.learning_rate = 0.01;
  c.model.batch_size = 64;
  c.model.max_epochs = 8;
  c.model.patience = 4;
  c.output_dir = dir / "run";
  return c;
}

TEST(Synth, DeterministicPlantedStructure) {
  SynthSpec spec;
  auto a = generate_synthetic(spec);
  auto b = generate_synthetic(spec);
  EXPECT_EQ(a.interactions, b.interactions);
  EXPECT_EQ(a.item_embeddings, b.item_embeddings);
  spec.seed = 1;
  EXPECT_NE(generate_synthetic(spec).interactions.fingerprint(), a.interactions.fingerprint());

  EXPECT_LE(a.interactions.num_users(), 300u);
  EXPECT_EQ(a.item_embeddings.ids(), a.interactions.item_ids());
  std::size_t in_block = 0;
  for (const Edge& e : a.interactions.edges()) {
    in_block += a.user_group[e.user] == a.item_group[e.item];
  }
  EXPECT_GT(in_block, a.interactions.num_edges() * 7 / 10);
  for (Index u = 0; u < a.interactions.num_users(); ++u) {
    EXPECT_GE(a.interactions.user_degree(u), spec.min_user_degree);
  }
  spec.groups = 0;
  EXPECT_EQ(code_of([&] { spec.validate(); }), ErrorCode::kInvalidArgument);
}

TEST(Synth, FilesReload) {
  TempDir dir("synth_files");
  auto data = generate_synthetic(tiny_spec());
  write_synthetic(data, dir.path());
  EXPECT_EQ(oracle::edge_ids(load_interactions(dir / "interactions.tsv", Delimiter::kTab).set),
            oracle::edge_ids(data.interactions));
  EXPECT_EQ(load_embeddings(dir / "items.ids", dir / "items.semb"), data.item_embeddings);
}

TEST(Pipeline, VanillaOnlyWritesNoComparison) {
  TempDir dir("pipe_vanilla");
  auto c = tiny_run(dir);
  auto r = cmd_pipeline(c);
  ASSERT_EQ(r.arms.size(), 1u);
  EXPECT_TRUE(std::filesystem::exists(c.output_dir / "metrics" / "vanilla.json"));
  EXPECT_FALSE(std::filesystem::exists(c.output_dir / "comparison.csv"));
  EXPECT_TRUE(std::filesystem::exists(c.output_dir / "config.ini"));
  EXPECT_TRUE(std::filesystem::exists(c.output_dir / "stats.json"));
}

TEST(Pipeline, EmptyInactiveSetGivesZeroImprovement) {
  TempDir dir("pipe_identity");
  auto c = tiny_run(dir);
  c.active_fraction = 0.99;  // every user lands in the active group
  c.arms = {Strategy::kSimAugItem};
  auto r = cmd_pipeline(c);
  ASSERT_EQ(r.arms.size(), 2u);
  EXPECT_EQ(r.arms[1].seeds[0].augmented, 0u);
  const auto lines = read_lines(c.output_dir / "comparison.csv");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[3].substr(0, lines[3].find(',')), "improve%:simaug-item");
  std::stringstream row(lines[3]);
  std::string cell;
  std::getline(row, cell, ',');
  while (std::getline(row, cell, ',')) {
    if (cell != "nan") {
      EXPECT_EQ(std::stod(cell), 0.0) << lines[3];
    }
  }
}

TEST(Pipeline, MeansMatchPerSeedFiles) {
  TempDir dir("pipe_means");
  auto c = tiny_run(dir);
  c.arms = {Strategy::kSimAugItem, Strategy::kAugRandom};
  c.seeds = {1, 2, 3};
  cmd_pipeline(c);
  for (const std::string arm : {"vanilla", "simaug-item", "aug-random"}) {
    const auto report = read_json(c.output_dir / "metrics" / (arm + ".json"));
    ASSERT_EQ(report["seeds"].size(), 3u);
    for (const std::string key : {"recall", "ndcg", "precision", "f1", "hitrate", "avg"}) {
      double sum = 0;
      for (std::uint64_t s : c.seeds) {
        sum += read_json(c.output_dir / "arms" / arm / ("seed-" + std::to_string(s)) / "metrics.json")["overall"][key]
                   .get<double>();
      }
      EXPECT_NEAR(report["mean"]["overall"][key].get<double>(), sum / 3, 1e-15) << arm << ' ' << key;
    }
  }
  const auto lines = read_lines(c.output_dir / "comparison.csv");
  EXPECT_EQ(lines[0], "row,recall,ndcg,precision,f1,hitrate,avg,popAvg,unpopAvg,fairness");
  EXPECT_EQ(lines.size(), 6u);
}

TEST(Pipeline, StageTaggedErrors) {
  RunConfig c;
  c.interactions = "/nonexistent/data.tsv";
  c.output_dir = std::filesystem::temp_directory_path() / "simaug_test_stage";
  try {
    cmd_pipeline(c);
    ADD_FAILURE() << "expected failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_EQ(std::string(e.what()).rfind("[ingest]", 0), 0u) << e.what();
  }
  std::filesystem::remove_all(c.output_dir);
  c.arms = {Strategy::kSimAugItem};
  c.item_embeddings.clear();
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kConfig);
}

TEST(Pipeline, IniCarriesEveryKey) {
  RunConfig c;
  c.arms = {Strategy::kSimAugItem, Strategy::kAugRec};
  c.seeds = {4, 5};
  c.ratios = {0.7, 0.2, 0.1};
  const auto ini = to_ini(c);
  EXPECT_EQ(ini.rfind("[pipeline]\n", 0), 0u);
  EXPECT_NE(ini.find("arms=[simaug-item,aug-rec]"), std::string::npos);
  EXPECT_NE(ini.find("seeds=[4,5]"), std::string::npos);
  EXPECT_NE(ini.find("train-ratio=0.69999999999999996"), std::string::npos);
  EXPECT_EQ(to_ini(c, "sweep-k").rfind("[sweep-k]\n", 0), 0u);
}

TEST(SweepK, NeedsTwoValues) {
  RunConfig c;
  EXPECT_EQ(code_of([&] { cmd_sweep_k(c, {5}); }), ErrorCode::kConfig);
}

TEST(Improvement, Percent) {
  EXPECT_DOUBLE_EQ(*improvement_percent(0.2, 0.25), 25.0);
  EXPECT_FALSE(improvement_percent(0.0, 0.1).has_value());
}

TEST(Analyze, ReadsFilesAndRejectsDegenerateInput) {
  TempDir dir("analyze");
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> pairs;
  const double dens[] = {1e-4, 2e-4, 4e-4, 3e-4};
  const double util[] = {0.02, 0.03, 0.05, 0.04};
  for (int k = 0; k < 4; ++k) {
    DatasetStats s;
    s.density = dens[k];
    s.avg_degree_popular = 10 + k;
    s.avg_degree_unpopular = 2;
    nlohmann::json sj = s;
    sj["name"] = "d" + std::to_string(k);
    const auto sp = dir / ("s" + std::to_string(k) + ".json");
    const auto mp = dir / ("m" + std::to_string(k) + ".json");
    write_json(sp, sj);
    write_json(mp, nlohmann::json{{"mean", {{"overall", {{"avg", util[k]}}}}}});
    pairs.push_back({sp, mp});
  }
  auto r = cmd_analyze(pairs);
  EXPECT_EQ(r.names[2], "d2");
  EXPECT_DOUBLE_EQ(r.correlation.spearman.coefficient, 1.0);
  EXPECT_DOUBLE_EQ(r.degrees[1].ratio, 5.5);
  pairs.pop_back();
  pairs.pop_back();
  EXPECT_EQ(code_of([&] { cmd_analyze(pairs); }), ErrorCode::kInvalidArgument);

  std::vector<AnalysisInput> same(3);
  for (auto& in : same) {
    in.stats.density = 1e-3;
    in.stats.avg_degree_popular = 4;
    in.stats.avg_degree_unpopular = 2;
    in.utility = 0.1;
  }
  EXPECT_EQ(code_of([&] { analyze(same); }), ErrorCode::kUndefinedCorrelation);
}

}  // namespace
}  // namespace simaug
