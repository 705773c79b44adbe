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

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simaug/corpus.hpp"

namespace simaug {

// How a partition was produced; recorded alongside every output.
struct PartitionRule {
  std::string type = "top-fraction-by-degree";
  double fraction = 0.0;
};

// Active users are the top fraction by train degree; the rest are inactive.
struct UserPartition {
  std::vector<Index> active;    // ascending index
  std::vector<Index> inactive;  // ascending index
  std::vector<char> is_active;  // indexed by user
  PartitionRule rule;
};

struct ItemPartition {
  std::vector<Index> popular;
  std::vector<Index> unpopular;
  std::vector<char> is_popular;
  PartitionRule rule;
};

inline constexpr double kDefaultActiveFraction = 0.05;
inline constexpr double kDefaultPopularFraction = 0.2;

// Ranks by (train degree desc, external id asc); the top
// ceil(fraction * n) entities form the high-degree group.
UserPartition partition_users(const InteractionSet& train, double fraction);
ItemPartition partition_items(const InteractionSet& train, double fraction);

nlohmann::json to_json(const UserPartition& p, const InteractionSet& set);
nlohmann::json to_json(const ItemPartition& p, const InteractionSet& set);

}  // namespace simaug
