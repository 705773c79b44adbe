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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/eval.hpp"
#include "simaug/kernels.hpp"

namespace simaug {

std::vector<Index> top_items(std::span<const double> scores, std::span<const Index> excluded,
                             std::size_t limit) {
  std::vector<Index> order;
  order.reserve(scores.size());
  std::size_t x = 0;
  for (Index i = 0; i < scores.size(); ++i) {
    while (x < excluded.size() && excluded[x] < i) ++x;
    if (x < excluded.size() && excluded[x] == i) continue;
    order.push_back(i);
  }
  auto better = [&](Index a, Index b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  const std::size_t n = std::min(limit, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), better);
  order.resize(n);
  return order;
}

namespace {

void score_user(const Matrix& final_user, const Matrix& final_item, Index user,
                std::vector<double>& scores) {
  scores.resize(final_item.rows);
  const double* eu = final_user.row(user).data();
  for (std::size_t i = 0; i < final_item.rows; ++i) {
    scores[i] = kernels::dot(eu, final_item.row(i).data(), final_item.cols);
  }
}

}  // namespace

std::vector<Index> rank_items(const TrainedModel& model, Index user,
                              const InteractionSet* exclude_train) {
  std::vector<double> scores;
  score_user(model.final_user, model.final_item, user, scores);
  std::span<const Index> excluded;
  if (exclude_train != nullptr) excluded = exclude_train->items_of(user);
  return top_items(scores, excluded, scores.size());
}

Rankings rank_users(const Matrix& final_user, const Matrix& final_item,
                    const InteractionSet& train, std::span<const Edge> targets,
                    std::size_t cutoff, std::size_t threads) {
  std::vector<Index> users;
  for (const Edge& e : targets) users.push_back(e.user);
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());

  Rankings rankings(final_user.rows);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> scores;
    for (std::size_t n = begin; n < end; ++n) {
      const Index u = users[n];
      score_user(final_user, final_item, u, scores);
      rankings[u] = top_items(scores, train.items_of(u), cutoff);
    }
  };
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, users.size()));
  if (threads == 1) {
    work(0, users.size());
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(work, users.size() * t / threads, users.size() * (t + 1) / threads);
    }
  }
  return rankings;
}

Rankings rank_users(const TrainedModel& model, const InteractionSet& train,
                    std::span<const Edge> targets, std::size_t cutoff, std::size_t threads) {
  return rank_users(model.final_user, model.final_item, train, targets, cutoff, threads);
}

namespace {

struct Accumulator {
  double recall = 0, ndcg = 0, precision = 0, f1 = 0, hitrate = 0;
  std::size_t users = 0;
};

// `relevant` must be sorted.
void add_user(Accumulator& acc, std::span<const Index> ranking, std::span<const Index> relevant,
              std::size_t cutoff) {
  const std::size_t depth = std::min(cutoff, ranking.size());
  std::size_t hits = 0;
  double dcg = 0.0;
  for (std::size_t p = 0; p < depth; ++p) {
    if (std::binary_search(relevant.begin(), relevant.end(), ranking[p])) {
      ++hits;
      dcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);
    }
  }
  double idcg = 0.0;
  const std::size_t ideal = std::min(relevant.size(), cutoff);
  for (std::size_t p = 0; p < ideal; ++p) idcg += 1.0 / std::log2(static_cast<double>(p) + 2.0);

  const double recall = static_cast<double>(hits) / static_cast<double>(relevant.size());
  const double precision = static_cast<double>(hits) / static_cast<double>(cutoff);
  acc.recall += recall;
  acc.precision += precision;
  acc.f1 += (recall + precision) > 0.0 ? 2.0 * recall * precision / (recall + precision) : 0.0;
  acc.hitrate += hits > 0 ? 1.0 : 0.0;
  acc.ndcg += dcg / idcg;
  ++acc.users;
}

RankingMetrics finish(const Accumulator& acc, std::size_t cutoff) {
  RankingMetrics m;
  m.cutoff = cutoff;
  m.num_evaluated_users = acc.users;
  if (acc.users == 0) return m;
  const double n = static_cast<double>(acc.users);
  m.recall = acc.recall / n;
  m.ndcg = acc.ndcg / n;
  m.precision = acc.precision / n;
  m.f1 = acc.f1 / n;
  m.hitrate = acc.hitrate / n;
  m.avg = (m.recall + m.ndcg + m.precision + m.f1 + m.hitrate) / 5.0;
  return m;
}

// Groups edges by user; each group's items sorted.
std::vector<std::pair<Index, std::vector<Index>>> by_user(std::span<const Edge> edges) {
  std::vector<Edge> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<Index, std::vector<Index>>> out;
  for (const Edge& e : sorted) {
    if (out.empty() || out.back().first != e.user) out.push_back({e.user, {}});
    if (out.back().second.empty() || out.back().second.back() != e.item) out.back().second.push_back(e.item);
  }
  return out;
}

const std::vector<Index>& ranking_of(const Rankings& rankings, Index user) {
  static const std::vector<Index> kEmpty;
  return user < rankings.size() ? rankings[user] : kEmpty;
}

}  // namespace

RankingMetrics metrics_at_n(const Rankings& rankings, std::span<const Edge> test,
                            std::size_t cutoff) {
  if (cutoff == 0) fail(ErrorCode::kInvalidArgument, "metric cutoff must be positive");
  Accumulator acc;
  for (const auto& [user, items] : by_user(test)) {
    add_user(acc, ranking_of(rankings, user), items, cutoff);
  }
  return finish(acc, cutoff);
}

std::optional<double> fairness_percent(double pop_avg, double unpop_avg) {
  if (!(pop_avg > 0.0)) return std::nullopt;
  return 100.0 * unpop_avg / pop_avg;
}

GroupMetrics group_metrics(const Rankings& rankings, std::span<const Edge> test,
                           const ItemPartition& items, std::size_t cutoff) {
  if (cutoff == 0) fail(ErrorCode::kInvalidArgument, "metric cutoff must be positive");
  Accumulator pop, unpop;
  std::vector<Index> pop_items, unpop_items;
  for (const auto& [user, relevant] : by_user(test)) {
    pop_items.clear();
    unpop_items.clear();
    for (Index i : relevant) {
      if (i >= items.is_popular.size()) {
        fail(ErrorCode::kInvalidArgument, "item partition does not cover the test items");
      }
      (items.is_popular[i] ? pop_items : unpop_items).push_back(i);
    }
    const auto& ranking = ranking_of(rankings, user);
    if (!pop_items.empty()) add_user(pop, ranking, pop_items, cutoff);
    if (!unpop_items.empty()) add_user(unpop, ranking, unpop_items, cutoff);
  }
  GroupMetrics g;
  g.popular = finish(pop, cutoff);
  g.unpopular = finish(unpop, cutoff);
  g.pop_avg = g.popular.avg;
  g.unpop_avg = g.unpopular.avg;
  g.fairness = fairness_percent(g.pop_avg, g.unpop_avg);
  return g;
}

void to_json(nlohmann::json& j, const RankingMetrics& m) {
  j = nlohmann::json{{"recall", m.recall},       {"ndcg", m.ndcg},
                     {"precision", m.precision}, {"f1", m.f1},
                     {"hitrate", m.hitrate},     {"avg", m.avg},
                     {"N", m.cutoff},            {"numEvaluatedUsers", m.num_evaluated_users}};
}

void from_json(const nlohmann::json& j, RankingMetrics& m) {
  j.at("recall").get_to(m.recall);
  j.at("ndcg").get_to(m.ndcg);
  j.at("precision").get_to(m.precision);
  j.at("f1").get_to(m.f1);
  j.at("hitrate").get_to(m.hitrate);
  j.at("avg").get_to(m.avg);
  m.cutoff = j.value("N", kDefaultCutoff);
  m.num_evaluated_users = j.value("numEvaluatedUsers", std::size_t{0});
}

void to_json(nlohmann::json& j, const GroupMetrics& m) {
  j = nlohmann::json{{"popular", m.popular},
                     {"unpopular", m.unpopular},
                     {"popAvg", m.pop_avg},
                     {"unpopAvg", m.unpop_avg}};
  j["fairness"] = m.fairness ? nlohmann::json(*m.fairness) : nlohmann::json(nullptr);
}

}  // namespace simaug
