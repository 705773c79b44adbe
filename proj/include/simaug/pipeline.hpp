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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simaug/augment.hpp"
#include "simaug/corpus.hpp"
#include "simaug/eval.hpp"
#include "simaug/partition.hpp"
#include "simaug/recsys.hpp"
#include "simaug/simvec.hpp"

namespace simaug {

// Everything a pipeline run depends on. Serialized as flat key=value lines
// whose keys match the command-line option names.
struct RunConfig {
  std::filesystem::path interactions;
  std::string delimiter = "whitespace";
  std::filesystem::path item_embeddings;  // SEMB prefix: <prefix>.ids + <prefix>.semb
  AlignPolicy align = AlignPolicy::kDrop;
  std::size_t k_core = 5;  // 0 skips filtering
  SplitRatios ratios;
  std::uint64_t split_seed = 0;
  double active_fraction = kDefaultActiveFraction;
  double popular_fraction = kDefaultPopularFraction;
  std::vector<Strategy> arms;  // vanilla always runs in addition
  std::size_t pool_k = 10;
  std::size_t per_user = 5;
  SimilarityMeasure measure = SimilarityMeasure::kCosine;
  ModelConfig model;  // model.seed is replaced by each entry of `seeds`
  std::vector<std::uint64_t> seeds{0};
  std::size_t cutoff = kDefaultCutoff;
  std::size_t workers = 1;
  std::filesystem::path output_dir;

  void validate() const;
  bool needs_item_embeddings() const;
};

// Emits an INI section readable through the CLI's --config option.
std::string to_ini(const RunConfig& c, std::string_view section = "pipeline");
nlohmann::json to_json(const RunConfig& c);

// Loaded, filtered, aligned and split data shared by every arm.
struct PreparedData {
  InteractionSet corpus;
  SplitDataset split;
  UserPartition users;
  ItemPartition items;
  std::optional<EmbeddingMatrix> item_text;  // rows follow split.train items
  std::size_t duplicates = 0;
  std::vector<std::string> dropped_items;
};

PreparedData prepare(const RunConfig& c);
// Same, from an in-memory corpus and optional unaligned embeddings.
PreparedData prepare(const RunConfig& c, const InteractionSet& corpus,
                     const EmbeddingMatrix* item_embeddings);

struct SeedResult {
  std::uint64_t seed = 0;
  RankingMetrics overall;
  GroupMetrics groups;
  std::size_t augmented = 0;
  std::size_t shortfall = 0;
  std::size_t best_epoch = 0;
  std::size_t epochs = 0;
};

struct ArmResult {
  std::string name;  // "vanilla" or a strategy name
  std::vector<SeedResult> seeds;
  RankingMetrics mean_overall;
  GroupMetrics mean_groups;
};

struct PipelineResult {
  std::vector<ArmResult> arms;  // vanilla first
  std::uint64_t corpus_fingerprint = 0;
  std::uint64_t split_fingerprint = 0;
  DatasetStats stats;
};

// Runs vanilla plus every configured arm for each seed on one shared split.
// When `out_dir` is set, writes per-seed artifacts and reports there.
PipelineResult run_pipeline(const RunConfig& c, const PreparedData& data,
                            const std::optional<std::filesystem::path>& out_dir = std::nullopt);

// Loads, runs and writes the full run directory (config, reports, artifacts).
PipelineResult cmd_pipeline(const RunConfig& c);

// Field-wise means over seeds; fairness is the mean of defined per-seed values.
RankingMetrics mean_metrics(const std::vector<RankingMetrics>& m);
GroupMetrics mean_groups(const std::vector<GroupMetrics>& g);

// 100 * (aug - vanilla) / vanilla; nullopt when the vanilla value is 0.
std::optional<double> improvement_percent(double vanilla, double aug);

nlohmann::json arm_report(const ArmResult& arm, const RunConfig& c, const PipelineResult& r);
void write_comparison_csv(const std::filesystem::path& path, const PipelineResult& r);

struct SweepRow {
  std::size_t per_user = 0;  // 0 marks the vanilla baseline
  std::string arm;
  RankingMetrics mean_overall;
};

// One pipeline per K over a shared split and seed list.
std::vector<SweepRow> cmd_sweep_k(const RunConfig& c, const std::vector<std::size_t>& k_values);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

struct DegreeRow {
  std::string name;
  double avg_popular = 0.0;
  double avg_unpopular = 0.0;
  double ratio = 0.0;
};

struct AnalysisReport {
  std::vector<std::string> names;
  std::vector<double> density;
  std::vector<double> utility;  // Avg@N per dataset
  CorrelationReport correlation;
  std::vector<DegreeRow> degrees;
};

struct AnalysisInput {
  std::string name;
  DatasetStats stats;
  double utility = 0.0;
};

AnalysisReport analyze(const std::vector<AnalysisInput>& inputs);
// Reads (stats JSON, metrics JSON) pairs. Utility is taken from "mean.overall.avg",
// "overall.avg" or "avg", whichever is found first.
AnalysisReport cmd_analyze(
    const std::vector<std::pair<std::filesystem::path, std::filesystem::path>>& pairs);
nlohmann::json to_json(const AnalysisReport& r);
void write_degree_csv(const std::filesystem::path& path, const AnalysisReport& r);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace simaug
