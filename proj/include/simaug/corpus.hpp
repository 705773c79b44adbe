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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace simaug {

using Index = std::uint32_t;

struct Edge {
  Index user;
  Index item;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Bipartite implicit-feedback graph with dense internal ids and adjacency on
// both sides. Immutable once built.
class InteractionSet {
 public:
  InteractionSet() = default;

  // Builds a set over the given id universe. Duplicate edges are collapsed.
  // With `drop_isolated`, users and items left without edges are removed and
  // the remaining ids are re-densified in their original relative order.
  static InteractionSet build(std::vector<std::string> user_ids,
                              std::vector<std::string> item_ids,
                              std::vector<Edge> edges,
                              bool drop_isolated = true);

  std::size_t num_users() const { return user_ids_.size(); }
  std::size_t num_items() const { return item_ids_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  bool empty() const { return num_edges_ == 0; }

  std::span<const Index> items_of(Index user) const {
    return {user_adj_.data() + user_offsets_[user],
            user_offsets_[user + 1] - user_offsets_[user]};
  }
  std::span<const Index> users_of(Index item) const {
    return {item_adj_.data() + item_offsets_[item],
            item_offsets_[item + 1] - item_offsets_[item]};
  }
  std::size_t user_degree(Index user) const { return items_of(user).size(); }
  std::size_t item_degree(Index item) const { return users_of(item).size(); }

  bool has_edge(Index user, Index item) const;

  const std::string& user_id(Index user) const { return user_ids_[user]; }
  const std::string& item_id(Index item) const { return item_ids_[item]; }
  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }

  // Edges in (user, item) lexicographic order.
  std::vector<Edge> edges() const;

  // Order-sensitive content hash over ids and edges.
  std::uint64_t fingerprint() const;

  friend bool operator==(const InteractionSet& a, const InteractionSet& b);

 private:
  std::vector<std::string> user_ids_;
  std::vector<std::string> item_ids_;
  std::vector<std::size_t> user_offsets_{0};
  std::vector<Index> user_adj_;
  std::vector<std::size_t> item_offsets_{0};
  std::vector<Index> item_adj_;
  std::size_t num_edges_ = 0;
};

enum class Delimiter { kWhitespace, kTab, kComma };

Delimiter parse_delimiter(const std::string& name);

struct LoadResult {
  InteractionSet set;
  std::size_t duplicates = 0;
};

LoadResult load_interactions(const std::filesystem::path& path,
                             Delimiter delimiter = Delimiter::kWhitespace);
LoadResult parse_interactions(std::istream& in, Delimiter delimiter);

void write_interactions(const std::filesystem::path& path,
                        const InteractionSet& set, char delimiter = '\t');

// Maximal subgraph in which every user and item has degree >= k.
InteractionSet k_core_filter(const InteractionSet& set, std::size_t k);

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

// Train keeps the full id universe of the source set so that validation and
// test edges index into the same space. Items may have zero train degree.
struct SplitDataset {
  InteractionSet train;
  std::vector<Edge> validation;
  std::vector<Edge> test;
  std::uint64_t seed = 0;
  SplitRatios ratios;

  std::uint64_t fingerprint() const;
};

SplitDataset split(const InteractionSet& set, const SplitRatios& ratios,
                   std::uint64_t seed);

// One edge per line tagged train/validation/test, after a '#' JSON header
// carrying seed and ratios. Reloading assigns ids in first-appearance order.
void write_split(const std::filesystem::path& path, const SplitDataset& split);
SplitDataset read_split(const std::filesystem::path& path);

double density(const InteractionSet& set);

class ItemPartition;

struct DatasetStats {
  std::size_t num_users = 0;
  std::size_t num_items = 0;
  std::size_t num_interactions = 0;
  double density = 0.0;
  double avg_degree_popular = 0.0;
  double avg_degree_unpopular = 0.0;
  double pop_unpop_ratio = 0.0;
};

// avgDegreePopular / avgDegreeUnpopular; throws kUndefinedRatio when the
// unpopular average is not positive.
double degree_ratio(double avg_popular, double avg_unpopular);

DatasetStats degree_stats(const InteractionSet& set,
                          const ItemPartition& items);

void to_json(nlohmann::json& j, const DatasetStats& s);
void from_json(const nlohmann::json& j, DatasetStats& s);

}  // namespace simaug
