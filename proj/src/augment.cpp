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

#include "simaug/augment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/rng.hpp"

namespace simaug {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kSimAugItem: return "simaug-item";
    case Strategy::kAugRandom: return "aug-random";
    case Strategy::kAugRec: return "aug-rec";
    case Strategy::kSimAugUser: return "simaug-user";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "simaug-item" || name == "simaug") return Strategy::kSimAugItem;
  if (name == "aug-random") return Strategy::kAugRandom;
  if (name == "aug-rec") return Strategy::kAugRec;
  if (name == "simaug-user") return Strategy::kSimAugUser;
  fail(ErrorCode::kInvalidArgument, fmt::format("unknown augmentation strategy '{}'", name));
}

namespace {

struct Candidate {
  Index target;
  double score;
  Index source;
};

// Collapses repeated targets to their best-scoring origin (score desc, then
// lower source index) and returns them ordered by target.
void reduce_candidates(std::vector<Candidate>& pool) {
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.target != b.target) return a.target < b.target;
    if (a.score != b.score) return a.score > b.score;
    return a.source < b.source;
  });
  pool.erase(std::unique(pool.begin(), pool.end(),
                         [](const Candidate& a, const Candidate& b) { return a.target == b.target; }),
             pool.end());
}

void check_alignment(const EmbeddingMatrix& emb, const std::vector<std::string>& ids,
                     const char* what) {
  if (emb.rows() != ids.size()) {
    fail(ErrorCode::kMisaligned,
         fmt::format("{} embeddings have {} rows for {} entities", what, emb.rows(), ids.size()));
  }
  for (std::size_t r = 0; r < ids.size(); ++r) {
    if (emb.id(r) != ids[r]) {
      fail(ErrorCode::kMisaligned,
           fmt::format("{} embedding row {} is '{}', expected '{}'", what, r, emb.id(r), ids[r]));
    }
  }
}

// Runs fn(begin, end) over [0, n) split across workers; each worker owns a
// contiguous slice so output slots never overlap.
template <typename Fn>
void parallel_slices(std::size_t n, std::size_t workers, Fn fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, n));
  if (workers == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back(fn, n * w / workers, n * (w + 1) / workers);
  }
}

struct EntityDraw {
  std::vector<Candidate> chosen;
  std::size_t shortfall = 0;
};

EntityDraw draw(std::vector<Candidate> pool, std::size_t count, std::uint64_t stream) {
  EntityDraw out;
  const std::size_t m = std::min(count, pool.size());
  out.shortfall = count - m;
  Rng rng(stream);
  partial_shuffle(std::span<Candidate>(pool), m, rng);
  pool.resize(m);
  std::sort(pool.begin(), pool.end(),
            [](const Candidate& a, const Candidate& b) { return a.target < b.target; });
  out.chosen = std::move(pool);
  return out;
}

}  // namespace

AugmentedEdges simaug_item(const InteractionSet& train, const UserPartition& users,
                           const ItemPartition& items, const EmbeddingMatrix& item_emb,
                           const AugmentationPlan& plan, const AugmentOptions& options) {
  if (plan.strategy != Strategy::kSimAugItem && plan.strategy != Strategy::kAugRec) {
    fail(ErrorCode::kInvalidArgument, "simaug_item needs an item-based strategy");
  }
  if (plan.pool_k == 0 || plan.per_user == 0) {
    fail(ErrorCode::kInvalidArgument, "augmentation needs k >= 1 and K >= 1");
  }
  AugmentedEdges out;
  out.plan = plan;
  if (users.inactive.empty()) return out;
  if (items.unpopular.empty()) fail(ErrorCode::kEmptyUnpopular, "no unpopular items to augment with");
  check_alignment(item_emb, train.item_ids(), "item");

  std::vector<Index> queries;
  for (Index u : users.inactive) {
    auto h = train.items_of(u);
    queries.insert(queries.end(), h.begin(), h.end());
  }
  std::sort(queries.begin(), queries.end());
  queries.erase(std::unique(queries.begin(), queries.end()), queries.end());

  SimilarityIndex index(item_emb, plan.measure);
  TopKResult neighbors = index.topk(queries, items.unpopular, plan.pool_k, {.workers = options.workers});
  std::vector<std::size_t> slot(train.num_items(), 0);
  for (std::size_t q = 0; q < queries.size(); ++q) slot[queries[q]] = q;

  std::vector<EntityDraw> draws(users.inactive.size());
  parallel_slices(users.inactive.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    std::vector<Candidate> pool;
    for (std::size_t n = begin; n < end; ++n) {
      const Index u = users.inactive[n];
      pool.clear();
      for (Index i : train.items_of(u)) {
        for (const Neighbor& nb : neighbors[slot[i]]) pool.push_back({nb.index, nb.score, i});
      }
      reduce_candidates(pool);
      std::erase_if(pool, [&](const Candidate& c) { return train.has_edge(u, c.target); });
      draws[n] = draw(pool, plan.per_user, stream_seed(plan.seed, train.user_id(u)));
    }
  });

  for (std::size_t n = 0; n < draws.size(); ++n) {
    const Index u = users.inactive[n];
    for (const Candidate& c : draws[n].chosen) {
      out.edges.push_back({u, c.target});
      out.provenance.push_back({plan.strategy, c.source, c.score});
    }
    out.shortfall += draws[n].shortfall;
    out.short_entities += draws[n].shortfall > 0;
  }
  return out;
}

AugmentedEdges aug_random(const InteractionSet& train, const UserPartition& users,
                          std::size_t per_user, std::uint64_t seed) {
  if (per_user == 0) fail(ErrorCode::kInvalidArgument, "aug_random needs K >= 1");
  AugmentedEdges out;
  out.plan.strategy = Strategy::kAugRandom;
  out.plan.per_user = per_user;
  out.plan.seed = seed;
  const std::size_t ni = train.num_items();
  std::vector<Index> chosen;
  for (Index u : users.inactive) {
    const std::size_t eligible = ni - train.user_degree(u);
    const std::size_t m = std::min(per_user, eligible);
    Rng rng(stream_seed(seed, train.user_id(u)));
    chosen.clear();
    if (2 * m >= eligible) {
      for (Index i = 0; i < ni; ++i) {
        if (!train.has_edge(u, i)) chosen.push_back(i);
      }
      partial_shuffle(std::span<Index>(chosen), m, rng);
      chosen.resize(m);
    } else {
      while (chosen.size() < m) {
        auto i = static_cast<Index>(rng.below(ni));
        if (train.has_edge(u, i) || std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        chosen.push_back(i);
      }
    }
    std::sort(chosen.begin(), chosen.end());
    for (Index i : chosen) {
      out.edges.push_back({u, i});
      out.provenance.push_back({Strategy::kAugRandom, std::nullopt, std::nullopt});
    }
    out.shortfall += per_user - m;
    out.short_entities += per_user > m;
  }
  return out;
}

std::vector<std::size_t> spread_budget(const std::vector<std::size_t>& capacity,
                                       std::size_t budget) {
  auto filled = [&](std::size_t level) {
    std::size_t total = 0;
    for (std::size_t c : capacity) total += std::min(c, level);
    return total;
  };
  std::size_t hi = capacity.empty() ? 0 : *std::max_element(capacity.begin(), capacity.end());
  std::size_t lo = 0;
  // Largest level whose fill does not exceed the budget.
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (filled(mid) <= budget) lo = mid;
    else hi = mid - 1;
  }
  std::vector<std::size_t> quota(capacity.size());
  std::size_t used = 0;
  for (std::size_t i = 0; i < capacity.size(); ++i) {
    quota[i] = std::min(capacity[i], lo);
    used += quota[i];
  }
  std::size_t remainder = budget - std::min(budget, used);
  for (std::size_t i = 0; i < capacity.size() && remainder > 0; ++i) {
    if (capacity[i] > quota[i]) {
      ++quota[i];
      --remainder;
    }
  }
  return quota;
}

AugmentedEdges simaug_user(const InteractionSet& train, const UserPartition& users,
                           const ItemPartition& items, const EmbeddingMatrix& user_emb,
                           const AugmentationPlan& plan, const AugmentOptions& options) {
  if (plan.strategy != Strategy::kSimAugUser) {
    fail(ErrorCode::kInvalidArgument, "simaug_user needs the user-based strategy");
  }
  if (!plan.edge_budget) fail(ErrorCode::kConfig, "user-based augmentation needs an edge budget");
  if (plan.pool_k == 0) fail(ErrorCode::kInvalidArgument, "augmentation needs k >= 1");
  AugmentedEdges out;
  out.plan = plan;
  const std::size_t budget = *plan.edge_budget;
  if (budget == 0) return out;
  if (items.unpopular.empty()) fail(ErrorCode::kEmptyUnpopular, "no unpopular items to augment");
  check_alignment(user_emb, train.user_ids(), "user");
  if (users.inactive.empty()) {
    out.shortfall = budget;
    return out;
  }

  std::vector<Index> queries;
  for (Index i : items.unpopular) {
    auto h = train.users_of(i);
    queries.insert(queries.end(), h.begin(), h.end());
  }
  std::sort(queries.begin(), queries.end());
  queries.erase(std::unique(queries.begin(), queries.end()), queries.end());

  SimilarityIndex index(user_emb, plan.measure);
  TopKResult neighbors = index.topk(queries, users.inactive, plan.pool_k, {.workers = options.workers});
  std::vector<std::size_t> slot(train.num_users(), 0);
  for (std::size_t q = 0; q < queries.size(); ++q) slot[queries[q]] = q;

  std::vector<std::vector<Candidate>> pools(items.unpopular.size());
  parallel_slices(pools.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const Index i = items.unpopular[n];
      auto& pool = pools[n];
      for (Index u : train.users_of(i)) {
        for (const Neighbor& nb : neighbors[slot[u]]) pool.push_back({nb.index, nb.score, u});
      }
      reduce_candidates(pool);
      std::erase_if(pool, [&](const Candidate& c) { return train.has_edge(c.target, i); });
    }
  });

  std::vector<std::size_t> capacity(pools.size());
  for (std::size_t n = 0; n < pools.size(); ++n) capacity[n] = pools[n].size();
  std::vector<std::size_t> quota = spread_budget(capacity, budget);

  struct Row {
    Edge edge;
    Provenance prov;
  };
  std::vector<Row> rows;
  std::size_t emitted = 0;
  for (std::size_t n = 0; n < pools.size(); ++n) {
    if (quota[n] == 0) continue;
    const Index i = items.unpopular[n];
    EntityDraw d = draw(std::move(pools[n]), quota[n], stream_seed(plan.seed, train.item_id(i)));
    for (const Candidate& c : d.chosen) {
      rows.push_back({{c.target, i}, {plan.strategy, c.source, c.score}});
    }
    emitted += d.chosen.size();
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.edge < b.edge; });
  for (auto& r : rows) {
    out.edges.push_back(r.edge);
    out.provenance.push_back(r.prov);
  }
  out.shortfall = budget - emitted;
  return out;
}

InteractionSet merge(const InteractionSet& train, const AugmentedEdges& aug) {
  if (aug.edges.empty()) return train;
  std::vector<Edge> added = aug.edges;
  std::sort(added.begin(), added.end());
  for (std::size_t n = 0; n < added.size(); ++n) {
    const Edge& e = added[n];
    if (e.user >= train.num_users() || e.item >= train.num_items()) {
      fail(ErrorCode::kIntegrity, "augmented edge outside the train id universe");
    }
    if (n > 0 && added[n - 1] == e) {
      fail(ErrorCode::kIntegrity, fmt::format("duplicate augmented edge ({}, {})",
                                              train.user_id(e.user), train.item_id(e.item)));
    }
    if (train.has_edge(e.user, e.item)) {
      fail(ErrorCode::kIntegrity, fmt::format("augmented edge ({}, {}) already in train",
                                              train.user_id(e.user), train.item_id(e.item)));
    }
  }
  std::vector<Edge> all = train.edges();
  all.insert(all.end(), added.begin(), added.end());
  return InteractionSet::build(train.user_ids(), train.item_ids(), std::move(all), false);
}

EmbeddingMatrix user_text_embeddings(const InteractionSet& train,
                                     const EmbeddingMatrix& aligned_item_emb) {
  check_alignment(aligned_item_emb, train.item_ids(), "item");
  std::vector<std::vector<Index>> lists(train.num_users());
  for (Index u = 0; u < train.num_users(); ++u) {
    auto h = train.items_of(u);
    lists[u].assign(h.begin(), h.end());
  }
  return mean_pool(aligned_item_emb, lists, train.user_ids(),
                   aligned_item_emb.source_tag() + "+user-mean-pool");
}

nlohmann::json to_json(const AugmentationPlan& plan) {
  nlohmann::json j{{"strategy", to_string(plan.strategy)},
                   {"k", plan.pool_k},
                   {"K", plan.per_user},
                   {"seed", plan.seed},
                   {"similarity", plan.measure == SimilarityMeasure::kCosine ? "cosine" : "dot"}};
  j["edgeBudget"] = plan.edge_budget ? nlohmann::json(*plan.edge_budget) : nlohmann::json(nullptr);
  return j;
}

AugmentationPlan plan_from_json(const nlohmann::json& j) {
  AugmentationPlan plan;
  plan.strategy = parse_strategy(j.at("strategy").get<std::string>());
  plan.pool_k = j.at("k").get<std::size_t>();
  plan.per_user = j.at("K").get<std::size_t>();
  plan.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("edgeBudget") && !j["edgeBudget"].is_null()) {
    plan.edge_budget = j["edgeBudget"].get<std::size_t>();
  }
  if (j.value("similarity", "cosine") == "dot") plan.measure = SimilarityMeasure::kDot;
  return plan;
}

void write_augmented(const std::filesystem::path& path, const AugmentedEdges& aug,
                     const InteractionSet& train) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  nlohmann::json header{{"plan", to_json(aug.plan)},
                        {"edges", aug.edges.size()},
                        {"shortfall", aug.shortfall},
                        {"shortEntities", aug.short_entities}};
  out << '#' << header.dump() << '\n';
  for (std::size_t n = 0; n < aug.edges.size(); ++n) {
    const Edge& e = aug.edges[n];
    const Provenance& p = aug.provenance[n];
    std::string source = "-";
    if (p.source) {
      source = p.strategy == Strategy::kSimAugUser ? train.user_id(*p.source) : train.item_id(*p.source);
    }
    std::string score = p.score ? fmt::format("{:.17g}", *p.score) : "-";
    out << train.user_id(e.user) << '\t' << train.item_id(e.item) << '\t' << to_string(p.strategy)
        << '\t' << source << '\t' << score << '\n';
  }
}

AugmentedEdges read_augmented(const std::filesystem::path& path, const InteractionSet& train) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  std::unordered_map<std::string, Index> user_index, item_index;
  for (Index u = 0; u < train.num_users(); ++u) user_index.emplace(train.user_id(u), u);
  for (Index i = 0; i < train.num_items(); ++i) item_index.emplace(train.item_id(i), i);
  auto lookup = [&](const std::unordered_map<std::string, Index>& index, const std::string& key,
                    std::size_t line_no) {
    auto it = index.find(key);
    if (it == index.end()) {
      fail(ErrorCode::kParse, fmt::format("{}:{}: unknown id '{}'", path.string(), line_no, key));
    }
    return it->second;
  };

  AugmentedEdges aug;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto header = nlohmann::json::parse(line.substr(1));
      aug.plan = plan_from_json(header.at("plan"));
      aug.shortfall = header.value("shortfall", std::size_t{0});
      aug.short_entities = header.value("shortEntities", std::size_t{0});
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    if (f.size() != 5) {
      fail(ErrorCode::kParse, fmt::format("{}:{}: expected 5 fields, got {}", path.string(), line_no, f.size()));
    }
    Provenance p{parse_strategy(f[2]), std::nullopt, std::nullopt};
    if (f[3] != "-") {
      p.source = p.strategy == Strategy::kSimAugUser ? lookup(user_index, f[3], line_no)
                                                     : lookup(item_index, f[3], line_no);
    }
    if (f[4] != "-") p.score = std::stod(f[4]);
    aug.edges.push_back({lookup(user_index, f[0], line_no), lookup(item_index, f[1], line_no)});
    aug.provenance.push_back(p);
  }
  return aug;
}

}  // namespace simaug
