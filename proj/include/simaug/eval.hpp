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

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simaug/corpus.hpp"
#include "simaug/partition.hpp"
#include "simaug/recsys.hpp"

namespace simaug {

inline constexpr std::size_t kDefaultCutoff = 20;

// Five utility metrics at a cutoff, each averaged over users that have at
// least one relevant item; avg is their arithmetic mean.
struct RankingMetrics {
  double recall = 0.0;
  double ndcg = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  double hitrate = 0.0;
  double avg = 0.0;
  std::size_t cutoff = kDefaultCutoff;
  std::size_t num_evaluated_users = 0;
};

struct GroupMetrics {
  RankingMetrics popular;
  RankingMetrics unpopular;
  double pop_avg = 0.0;
  double unpop_avg = 0.0;
  std::optional<double> fairness;  // percent; absent when pop_avg == 0
};

// Ranked item lists indexed by user; users that were not ranked stay empty.
using Rankings = std::vector<std::vector<Index>>;

// Orders all items by score descending, ties by index ascending, dropping
// `excluded` (sorted ascending). Returns at most `limit` items.
std::vector<Index> top_items(std::span<const double> scores, std::span<const Index> excluded,
                             std::size_t limit);

// Full ranking for one user.
std::vector<Index> rank_items(const TrainedModel& model, Index user,
                              const InteractionSet* exclude_train);

// Top-`cutoff` lists for every user that owns at least one edge in `targets`.
Rankings rank_users(const Matrix& final_user, const Matrix& final_item,
                    const InteractionSet& train, std::span<const Edge> targets,
                    std::size_t cutoff, std::size_t threads = 1);
Rankings rank_users(const TrainedModel& model, const InteractionSet& train,
                    std::span<const Edge> targets, std::size_t cutoff, std::size_t threads = 1);

RankingMetrics metrics_at_n(const Rankings& rankings, std::span<const Edge> test,
                            std::size_t cutoff = kDefaultCutoff);

// 100 * unpop / pop; nullopt when pop is not positive.
std::optional<double> fairness_percent(double pop_avg, double unpop_avg);

// Same rankings for both groups; only relevance labels are filtered.
GroupMetrics group_metrics(const Rankings& rankings, std::span<const Edge> test,
                           const ItemPartition& items, std::size_t cutoff = kDefaultCutoff);

void to_json(nlohmann::json& j, const RankingMetrics& m);
void from_json(const nlohmann::json& j, RankingMetrics& m);
void to_json(nlohmann::json& j, const GroupMetrics& m);

struct Correlation {
  double coefficient = 0.0;
  double p_value = 1.0;
};

// Two-sided p from t = r sqrt((n-2)/(1-r^2)) with n-2 degrees of freedom.
Correlation pearson(std::span<const double> x, std::span<const double> y);
// Pearson on mean ranks.
Correlation spearman(std::span<const double> x, std::span<const double> y);
// Tau-b; exact permutation p-value for n <= 10 without ties, normal
// approximation (tie-corrected variance) otherwise.
Correlation kendall(std::span<const double> x, std::span<const double> y);

std::vector<double> average_ranks(std::span<const double> values);

struct CorrelationReport {
  Correlation pearson;
  Correlation spearman;
  Correlation kendall;
  std::size_t n = 0;
};

CorrelationReport correlate(std::span<const double> x, std::span<const double> y);
void to_json(nlohmann::json& j, const CorrelationReport& r);

}  // namespace simaug
