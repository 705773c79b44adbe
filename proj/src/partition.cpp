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

#include "simaug/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"

namespace simaug {

namespace {

struct Split {
  std::vector<Index> high;
  std::vector<Index> low;
  std::vector<char> mask;
};

template <typename DegreeFn>
Split top_fraction(std::size_t n, double fraction, const std::vector<std::string>& ids,
                   DegreeFn degree) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    fail(ErrorCode::kInvalidArgument,
         fmt::format("partition fraction must lie in (0, 1), got {}", fraction));
  }
  if (n == 0) fail(ErrorCode::kEmptyDataset, "cannot partition an empty set");

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    std::size_t da = degree(a), db = degree(b);
    if (da != db) return da > db;
    return ids[a] < ids[b];
  });
  // The epsilon keeps products such as 0.05 * 100 from rounding up a slot.
  auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  count = std::min(count, n);

  Split out;
  out.mask.assign(n, 0);
  for (std::size_t r = 0; r < count; ++r) out.mask[order[r]] = 1;
  for (Index e = 0; e < n; ++e) (out.mask[e] ? out.high : out.low).push_back(e);
  return out;
}

}  // namespace

UserPartition partition_users(const InteractionSet& train, double fraction) {
  if (train.empty()) fail(ErrorCode::kEmptyDataset, "cannot partition users of an empty set");
  auto s = top_fraction(train.num_users(), fraction, train.user_ids(),
                        [&](Index u) { return train.user_degree(u); });
  return {std::move(s.high), std::move(s.low), std::move(s.mask), {"top-fraction-by-degree", fraction}};
}

ItemPartition partition_items(const InteractionSet& train, double fraction) {
  if (train.empty()) fail(ErrorCode::kEmptyDataset, "cannot partition items of an empty set");
  auto s = top_fraction(train.num_items(), fraction, train.item_ids(),
                        [&](Index i) { return train.item_degree(i); });
  return {std::move(s.high), std::move(s.low), std::move(s.mask), {"top-fraction-by-degree", fraction}};
}

namespace {

nlohmann::json names(const std::vector<Index>& group, const std::vector<std::string>& ids) {
  auto out = nlohmann::json::array();
  for (Index e : group) out.push_back(ids[e]);
  return out;
}

}  // namespace

nlohmann::json to_json(const UserPartition& p, const InteractionSet& set) {
  return {{"rule", {{"type", p.rule.type}, {"fraction", p.rule.fraction}}},
          {"activeUsers", names(p.active, set.user_ids())},
          {"inactiveUsers", names(p.inactive, set.user_ids())}};
}

nlohmann::json to_json(const ItemPartition& p, const InteractionSet& set) {
  return {{"rule", {{"type", p.rule.type}, {"fraction", p.rule.fraction}}},
          {"popularItems", names(p.popular, set.item_ids())},
          {"unpopularItems", names(p.unpopular, set.item_ids())}};
}

}  // namespace simaug
