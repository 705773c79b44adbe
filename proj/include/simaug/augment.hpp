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

#include "simaug/corpus.hpp"
#include "simaug/partition.hpp"
#include "simaug/simvec.hpp"

namespace simaug {

enum class Strategy { kSimAugItem, kAugRandom, kAugRec, kSimAugUser };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

struct AugmentationPlan {
  Strategy strategy = Strategy::kSimAugItem;
  std::size_t pool_k = 10;     // per-source top-k similarity pool
  std::size_t per_user = 5;    // augmented items per inactive user
  std::uint64_t seed = 0;
  std::optional<std::size_t> edge_budget;  // user-based variant only
  SimilarityMeasure measure = SimilarityMeasure::kCosine;
};

struct Provenance {
  Strategy strategy;
  // Source item (item-based strategies) or source user (user-based); absent
  // for random augmentation.
  std::optional<Index> source;
  std::optional<double> score;
};

struct AugmentedEdges {
  std::vector<Edge> edges;
  std::vector<Provenance> provenance;  // parallel to edges
  AugmentationPlan plan;
  // Edges requested but not available because candidate pools ran dry.
  std::size_t shortfall = 0;
  std::size_t short_entities = 0;

  std::size_t size() const { return edges.size(); }
};

struct AugmentOptions {
  std::size_t workers = 1;
};

// Item-based augmentation: inactive users gain unpopular items that are most
// similar to their history. Also serves the recommender-embedding baseline
// when given exported recommender item embeddings.
AugmentedEdges simaug_item(const InteractionSet& train, const UserPartition& users,
                           const ItemPartition& items, const EmbeddingMatrix& item_emb,
                           const AugmentationPlan& plan, const AugmentOptions& options = {});

// Uniform baseline over all train items not yet interacted with.
AugmentedEdges aug_random(const InteractionSet& train, const UserPartition& users,
                          std::size_t per_user, std::uint64_t seed);

// User-based mirror: unpopular items gain inactive users similar to the
// users that already interacted with them, spread evenly up to a budget.
AugmentedEdges simaug_user(const InteractionSet& train, const UserPartition& users,
                           const ItemPartition& items, const EmbeddingMatrix& user_emb,
                           const AugmentationPlan& plan, const AugmentOptions& options = {});

// Per-item quotas that sum to min(budget, sum(capacity)): level-fill so no
// two unsaturated items differ by more than one, extra units going to the
// lowest indices.
std::vector<std::size_t> spread_budget(const std::vector<std::size_t>& capacity,
                                       std::size_t budget);

// Union of train and augmented edges over the same id universe.
InteractionSet merge(const InteractionSet& train, const AugmentedEdges& aug);

// Mean-pooled item text embeddings over each user's train history.
EmbeddingMatrix user_text_embeddings(const InteractionSet& train,
                                     const EmbeddingMatrix& aligned_item_emb);

nlohmann::json to_json(const AugmentationPlan& plan);
AugmentationPlan plan_from_json(const nlohmann::json& j);

// Delimited text: a '#'-prefixed JSON header line with the plan, then one
// "user<TAB>item<TAB>strategy<TAB>source<TAB>score" line per edge.
void write_augmented(const std::filesystem::path& path, const AugmentedEdges& aug,
                     const InteractionSet& train);
AugmentedEdges read_augmented(const std::filesystem::path& path, const InteractionSet& train);

}  // namespace simaug
