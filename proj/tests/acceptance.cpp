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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: simaug_acceptance [path-to-simaug-cli]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "simaug/augment.hpp"
#include "simaug/error.hpp"
#include "simaug/pipeline.hpp"
#include "simaug/synth.hpp"

namespace fs = std::filesystem;
using namespace simaug;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("simaug_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Seven large corpora: users, items, interactions, vanilla Avg@20.
struct Corpus {
  const char* name;
  double users, items, interactions, avg20;
};
constexpr Corpus kCorpora[] = {
    {"grocery", 257363, 95555, 2437551, 0.0348}, {"movies", 106074, 54679, 1233612, 0.0701},
    {"office", 137461, 55075, 1106657, 0.0363},  {"patio", 238042, 89710, 1921639, 0.0250},
    {"pet", 365763, 80194, 3101564, 0.0438},     {"sports", 215038, 91719, 1780007, 0.0310},
    {"toys", 268929, 117230, 2375168, 0.0334},
};

Outcome correlation_reproduction() {
  const auto dir = scratch("correlation");
  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const Corpus& c : kCorpora) {
    DatasetStats s;
    s.num_users = static_cast<std::size_t>(c.users);
    s.num_items = static_cast<std::size_t>(c.items);
    s.num_interactions = static_cast<std::size_t>(c.interactions);
    s.density = c.interactions / (c.users * c.items);
    s.avg_degree_popular = 2;
    s.avg_degree_unpopular = 1;
    nlohmann::json sj = s;
    sj["name"] = c.name;
    write_json(dir / (std::string(c.name) + ".stats.json"), sj);
    write_json(dir / (std::string(c.name) + ".metrics.json"), nlohmann::json{{"overall", {{"avg", c.avg20}}}});
    pairs.push_back({dir / (std::string(c.name) + ".stats.json"), dir / (std::string(c.name) + ".metrics.json")});
  }
  const auto t0 = Clock::now();
  const auto r = cmd_analyze(pairs).correlation;
  const double elapsed = seconds_since(t0);
  fs::remove_all(dir);

  Outcome o;
  o.detail = fmt::format("pearson {:.4f} (p {:.4f}), spearman {:.4f} (p {:.4f}), kendall {:.4f} (p {:.4f}), {:.3f}s",
                         r.pearson.coefficient, r.pearson.p_value, r.spearman.coefficient, r.spearman.p_value,
                         r.kendall.coefficient, r.kendall.p_value, elapsed);
  o.require(within(r.spearman.coefficient, 0.8571, 0.0005), "spearman rho");
  o.require(within(r.spearman.p_value, 0.0137, 0.001), "spearman p");
  o.require(within(r.kendall.coefficient, 0.7143, 0.0005), "kendall tau");
  o.require(within(r.kendall.p_value, 0.0302, 0.003), "kendall p");
  o.require(within(r.pearson.coefficient, 0.8871, 0.01), "pearson r");
  o.require(within(r.pearson.p_value, 0.0077, 0.003), "pearson p");
  o.require(elapsed < 1.0, "runtime");
  return o;
}

Outcome fairness_scale() {
  const auto a = fairness_percent(0.0626, 0.0215);
  const auto b = fairness_percent(0.0510, 0.0011);
  Outcome o;
  o.require(a && within(*a, 34.35, 0.1), "0.0215/0.0626");
  o.require(b && within(*b, 2.16, 0.15), "0.0011/0.0510");
  if (a && b) o.detail = fmt::format("{:.3f} and {:.3f}", *a, *b) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// Builds a corpus with 100 popular and 100 unpopular items whose mean degrees
// equal the given columns, then recomputes the ratio through degree_stats.
Outcome degree_ratios() {
  struct Row {
    const char* name;
    double pop, unpop, ratio;
  };
  const Row rows[] = {
      {"appliances", 8.22, 1.62, 5.07}, {"baby", 39.63, 4.76, 8.32},  {"grocery", 31.55, 4.59, 6.87},
      {"movies", 24.33, 4.50, 5.41},    {"office", 21.25, 3.97, 5.35}, {"patio", 23.59, 4.10, 5.75},
      {"pet", 66.22, 5.93, 11.17},      {"sports", 20.35, 3.86, 5.27}, {"toys", 20.99, 4.08, 5.15},
  };
  constexpr std::size_t kUsers = 100, kGroup = 100;
  Outcome o;
  for (const Row& row : rows) {
    std::vector<Edge> edges;
    auto add_group = [&](Index first, double mean) {
      const auto total = static_cast<std::size_t>(std::llround(mean * kGroup));
      for (Index n = 0; n < kGroup; ++n) {
        const std::size_t deg = total / kGroup + (n < total % kGroup ? 1 : 0);
        for (std::size_t j = 0; j < deg; ++j) edges.push_back({static_cast<Index>((n * 7 + j) % kUsers), first + n});
      }
    };
    add_group(0, row.pop);
    add_group(kGroup, row.unpop);
    const auto set = InteractionSet::build(oracle::make_ids("u", kUsers), oracle::make_ids("i", 2 * kGroup), edges);
    const auto st = degree_stats(set, partition_items(set, 0.5));
    if (!within(st.pop_unpop_ratio, row.ratio, 0.01)) {
      o.require(false, fmt::format("{} {:.4f} vs {}", row.name, st.pop_unpop_ratio, row.ratio));
    }
  }
  if (o.pass) o.detail = fmt::format("{} rows within 0.01", std::size(rows));
  return o;
}

Outcome kcore_oracle() {
  const auto t0 = Clock::now();
  Rng rng(2024);
  Outcome o;
  std::size_t checked = 0, empty = 0;
  for (int g = 0; g < 200; ++g) {
    const std::size_t nu = 1 + rng.below(60), ni = 1 + rng.below(60);
    const auto graph = oracle::random_graph(rng, nu, ni, 0.02 + 0.3 * rng.uniform());
    if (graph.empty()) continue;
    const std::size_t k = 1 + rng.below(6);
    const auto expected = oracle::naive_kcore(graph, k);
    ++checked;
    try {
      const auto core = k_core_filter(graph, k);
      o.require(oracle::edge_ids(core) == expected, fmt::format("graph {} differs", g));
      o.require(k_core_filter(core, k) == core, fmt::format("graph {} not idempotent", g));
    } catch (const Error& e) {
      ++empty;
      o.require(expected.empty() && e.code() == ErrorCode::kEmptyCore, fmt::format("graph {}: {}", g, e.what()));
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 5.0, "runtime");
  o.detail = fmt::format("{} graphs ({} empty cores), {:.2f}s", checked, empty, elapsed) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome similarity_oracle() {
  const auto t0 = Clock::now();
  Rng rng(77);
  Outcome o;
  std::size_t queries = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t rows = 5 + rng.below(120), dim = 1 + rng.below(24);
    const auto emb = oracle::integer_embeddings(rng, rows, dim, 2 + rng.below(rows));
    std::vector<Index> q, c;
    for (Index r = 0; r < rows; ++r) {
      if (rng.uniform() < 0.5) q.push_back(r);
      if (rng.uniform() < 0.6) c.push_back(r);
    }
    if (c.empty()) c.push_back(0);
    const std::size_t k = 1 + rng.below(rows + 2);
    const auto one = cosine_topk(emb, q, c, k, {.workers = 1, .query_tile = 1 + rng.below(8), .candidate_tile = 1 + rng.below(16)});
    const auto many = cosine_topk(emb, q, c, k, {.workers = 1 + rng.below(6)});
    o.require(one == many, fmt::format("instance {} depends on workers/tiles", t));
    for (std::size_t n = 0; n < q.size(); ++n) {
      o.require(one[n] == oracle::naive_topk(emb, q[n], c, k), fmt::format("instance {} query {}", t, q[n]));
    }
    queries += q.size();
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 5.0, "runtime");
  o.detail = fmt::format("50 instances, {} queries, {:.2f}s", queries, elapsed) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome recommender_numerics() {
  const auto t0 = Clock::now();
  Outcome o;
  // (a) dense oracles
  Rng rng(5);
  double worst_adj = 0, worst_prop = 0;
  for (int t = 0; t < 10; ++t) {
    const auto g = InteractionSet::build(oracle::make_ids("u", 25), oracle::make_ids("i", 20),
                                         oracle::random_graph(rng, 25, 20, 0.2).edges());
    const auto adj = build_adjacency(g);
    const auto dense = oracle::dense_adjacency(g);
    for (Index u = 0; u < g.num_users(); ++u) {
      for (Index i = 0; i < g.num_items(); ++i) {
        worst_adj = std::max(worst_adj, std::abs(adj.weight(u, i) - dense[u][g.num_users() + i]));
      }
    }
    Matrix e0(adj.num_nodes(), 6);
    for (double& x : e0.data) x = rng.normal();
    worst_prop = std::max(worst_prop, oracle::max_abs_diff(propagate(adj, e0, 2), oracle::dense_propagate(dense, e0, 2)));
  }
  o.require(worst_adj <= 1e-10 && worst_prop <= 1e-10, fmt::format("dense oracle {:.2e}/{:.2e}", worst_adj, worst_prop));

  // (b) three-edge example
  const auto tri = InteractionSet::build({"u1", "u2"}, {"i1", "i2"}, {{0, 0}, {0, 1}, {1, 0}});
  const auto tri_adj = build_adjacency(tri);
  Matrix e0(4, 2);
  e0(2, 0) = 1;
  e0(3, 1) = 1;
  Matrix e1(4, 2);
  tri_adj.multiply(e0, e1);
  const auto fin = propagate(tri_adj, e0, 1);
  auto r4 = [](double x) { return std::round(x * 1e4) / 1e4; };
  o.require(r4(tri_adj.weight(0, 0)) == 0.5 && r4(tri_adj.weight(0, 1)) == 0.7071 && r4(tri_adj.weight(1, 0)) == 0.7071,
            "hand weights");
  o.require(r4(e1(0, 0)) == 0.5 && r4(e1(0, 1)) == 0.7071, "hand layer 1");
  o.require(r4(fin(0, 0)) == 0.25 && r4(fin(0, 1)) == 0.3536, "hand final");

  // (c) finite differences
  SynthSpec spec;
  spec.groups = 2;
  spec.users_per_group = 5;
  spec.items_per_group = 5;
  spec.min_user_degree = 2;
  spec.dim = 4;
  const auto data = generate_synthetic(spec);
  const auto adj = build_adjacency(data.interactions);
  const auto content = ContentFeatures::from_embeddings(user_text_embeddings(data.interactions, data.item_embeddings),
                                                        data.item_embeddings);
  const auto& g = data.interactions;
  const std::vector<Triple> batch{{0, g.items_of(0)[0], static_cast<Index>(g.num_items() - 1)},
                                  {3, g.items_of(3)[0], 1},
                                  {6, g.items_of(6)[0], 0}};
  std::string fd;
  for (Variant v : {Variant::kIdOnly, Variant::kContentOnly, Variant::kContentIdAdd, Variant::kContentIdCat}) {
    ModelConfig mc;
    mc.embedding_dim = 3;
    mc.l2_weight = 0.05;
    mc.variant = v;
    const LightGcn model(mc, adj, &content);
    const double err = oracle::gradient_check(model, model.init_parameters(), batch);
    fd += fmt::format("{}{} {:.1e}", fd.empty() ? "" : ", ", to_string(v), err);
    o.require(err < 1e-4, fmt::format("gradient {}", to_string(v)));
  }

  // (d) sigma(0) loss
  ModelConfig mc;
  mc.embedding_dim = 3;
  mc.l2_weight = 0;
  const LightGcn model(mc, adj, nullptr);
  Parameters p = model.init_parameters();
  std::fill(p.ids.data.begin(), p.ids.data.end(), 0.0);
  o.require(model.loss(p, batch) == std::log(2.0), "ln 2 loss");

  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30.0, "runtime");
  o.detail = fmt::format("fd rel err [{}], {:.2f}s", fd, elapsed) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome metric_oracles() {
  Rng rng(99);
  Outcome o;
  auto close = [](const RankingMetrics& a, const RankingMetrics& b) {
    return a.num_evaluated_users == b.num_evaluated_users && within(a.recall, b.recall, 1e-12) &&
           within(a.ndcg, b.ndcg, 1e-12) && within(a.precision, b.precision, 1e-12) && within(a.f1, b.f1, 1e-12) &&
           within(a.hitrate, b.hitrate, 1e-12) && within(a.avg, b.avg, 1e-12);
  };
  for (int t = 0; t < 100; ++t) {
    const std::size_t nu = 3 + rng.below(12), ni = 5 + rng.below(30), d = 1 + rng.below(4), n = 1 + rng.below(10);
    const auto full = oracle::random_graph(rng, nu, ni, 0.3);
    std::vector<Edge> train_edges, test;
    for (const Edge& e : full.edges()) (rng.uniform() < 0.7 ? train_edges : test).push_back(e);
    const auto train = InteractionSet::build(full.user_ids(), full.item_ids(), train_edges, false);
    Matrix users(nu, d), items(ni, d), scores(nu, ni);
    for (double& x : users.data) x = static_cast<double>(rng.below(3));
    for (double& x : items.data) x = static_cast<double>(rng.below(3));
    for (std::size_t u = 0; u < nu; ++u) {
      for (std::size_t i = 0; i < ni; ++i) {
        for (std::size_t j = 0; j < d; ++j) scores(u, i) += users(u, j) * items(i, j);
      }
    }
    ItemPartition part;
    part.is_popular.assign(ni, 0);
    for (Index i = 0; i < ni; ++i) {
      part.is_popular[i] = rng.uniform() < 0.3;
      (part.is_popular[i] ? part.popular : part.unpopular).push_back(i);
    }
    std::vector<Edge> pop, unpop;
    for (const Edge& e : test) (part.is_popular[e.item] ? pop : unpop).push_back(e);
    const auto rankings = rank_users(users, items, train, test, n);
    o.require(close(metrics_at_n(rankings, test, n), oracle::brute_metrics(scores, train, test, n)),
              fmt::format("instance {} overall", t));
    const auto g = group_metrics(rankings, test, part, n);
    o.require(close(g.popular, oracle::brute_metrics(scores, train, pop, n)) &&
                  close(g.unpopular, oracle::brute_metrics(scores, train, unpop, n)),
              fmt::format("instance {} groups", t));
  }
  const Rankings hand{{4, 8, 9}};
  const std::vector<Edge> first{{0, 4}}, third{{0, 9}};
  o.require(metrics_at_n(hand, first, 3).ndcg == 1.0, "ndcg rank 1");
  o.require(metrics_at_n(hand, third, 3).ndcg == 0.5, "ndcg rank 3");
  if (o.pass) o.detail = "100 instances, hand NDCG cases exact";
  return o;
}

// The default planted set: 4 groups of 75 users and 50 items.
struct Planted {
  SynthDataset data;
  UserPartition users;
  ItemPartition items;
};

Planted planted() {
  Planted p;
  p.data = generate_synthetic(SynthSpec{});
  p.users = partition_users(p.data.interactions, kDefaultActiveFraction);
  p.items = partition_items(p.data.interactions, kDefaultPopularFraction);
  return p;
}

Outcome augmentation_structure() {
  const auto t0 = Clock::now();
  const Planted p = planted();
  const auto& train = p.data.interactions;
  Outcome o;

  ModelConfig mc;
  mc.embedding_dim = 32;
  mc.learning_rate = 0.005;
  mc.batch_size = 256;
  mc.max_epochs = 5;
  mc.early_stopping = false;
  SplitDataset whole{train, {}, {}, 0, {}};
  const auto rec_model = simaug::train(whole, mc);
  const auto rec_emb = to_embedding_matrix(rec_model.final_item, train.item_ids(), "recommender-export");

  AugmentationPlan plan;
  plan.pool_k = 10;
  plan.per_user = 3;
  plan.seed = 11;
  const auto item = simaug_item(train, p.users, p.items, p.data.item_embeddings, plan);
  AugmentationPlan rec_plan = plan;
  rec_plan.strategy = Strategy::kAugRec;
  const auto rec = simaug_item(train, p.users, p.items, rec_emb, rec_plan);
  const auto random = aug_random(train, p.users, plan.per_user, plan.seed);
  AugmentationPlan user_plan = plan;
  user_plan.strategy = Strategy::kSimAugUser;
  user_plan.edge_budget = item.size();
  const auto user = simaug_user(train, p.users, p.items, user_text_embeddings(train, p.data.item_embeddings), user_plan);

  for (const auto* aug : {&item, &rec}) {
    std::set<Edge> seen;
    for (const Edge& e : aug->edges) {
      if (!p.users.is_active[e.user] && !p.items.is_popular[e.item]) continue;
      o.require(false, fmt::format("{} edge outside inactive x unpopular", to_string(aug->plan.strategy)));
      break;
    }
    for (const Edge& e : aug->edges) {
      o.require(seen.insert(e).second && !train.has_edge(e.user, e.item),
                fmt::format("{} duplicate or existing edge", to_string(aug->plan.strategy)));
    }
  }
  for (const auto* aug : {&random, &user}) {
    std::set<Edge> seen(aug->edges.begin(), aug->edges.end());
    o.require(seen.size() == aug->size(), "duplicate baseline edge");
  }
  const bool pools_suffice = item.shortfall == 0 && rec.shortfall == 0 && random.shortfall == 0 && user.shortfall == 0;
  o.require(pools_suffice, "candidate pools ran short");
  o.require(item.size() == rec.size() && item.size() == random.size() && item.size() == user.size(),
            fmt::format("budget parity {}/{}/{}/{}", item.size(), rec.size(), random.size(), user.size()));

  std::vector<float> scaled(p.data.item_embeddings.values().begin(), p.data.item_embeddings.values().end());
  for (float& v : scaled) v *= 8.0f;
  const EmbeddingMatrix big(train.item_ids(), scaled, p.data.item_embeddings.dim(), "scaled");
  o.require(simaug_item(train, p.users, p.items, big, plan).edges == item.edges, "scale invariance");
  for (std::size_t w : {2u, 4u, 7u}) {
    o.require(simaug_item(train, p.users, p.items, p.data.item_embeddings, plan, {.workers = w}).edges == item.edges,
              fmt::format("workers {}", w));
  }

  const double elapsed = seconds_since(t0);
  o.require(elapsed < 10.0, "runtime");
  o.detail = fmt::format("{} users x {} items, {} inactive, {} edges per strategy, {:.2f}s", train.num_users(),
                         train.num_items(), p.users.inactive.size(), item.size(), elapsed) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// Desk-scale fixture for the directional comparison.
RunConfig directional_config(const fs::path& dir) {
  SynthSpec spec;
  spec.popularity_skew = 0.7;
  write_synthetic(generate_synthetic(spec), dir);
  RunConfig c;
  c.interactions = dir / "interactions.tsv";
  c.delimiter = "tab";
  c.item_embeddings = dir / "items";
  c.k_core = 0;
  c.arms = {Strategy::kSimAugItem, Strategy::kAugRandom};
  c.pool_k = 2;
  c.per_user = 2;
  c.seeds = {1, 2, 3, 4, 5};
  c.model.embedding_dim = 32;
  c.model.learning_rate = 0.005;
  c.model.l2_weight = 1e-3;
  c.model.batch_size = 256;
  c.model.max_epochs = 200;
  c.model.patience = 20;
  return c;
}

Outcome directional() {
  const auto t0 = Clock::now();
  const auto dir = scratch("directional");
  const RunConfig c = directional_config(dir);
  const auto r = run_pipeline(c, prepare(c));
  fs::remove_all(dir);

  const auto& vanilla = r.arms.at(0);
  auto wins = [&](const ArmResult& arm) {
    std::size_t n = 0;
    for (std::size_t s = 0; s < arm.seeds.size(); ++s) n += arm.seeds[s].overall.recall > vanilla.seeds[s].overall.recall;
    return n;
  };
  const std::size_t simaug_wins = wins(r.arms.at(1));
  const std::size_t random_wins = wins(r.arms.at(2));
  std::size_t max_epochs = 0;
  for (const auto& arm : r.arms) {
    for (const auto& s : arm.seeds) max_epochs = std::max(max_epochs, s.epochs);
  }
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.require(simaug_wins >= 4, "simaug wins");
  o.require(random_wins <= 2, "aug-random wins");
  o.require(max_epochs <= 200, "epoch cap");
  o.require(elapsed < 600.0, "runtime");
  o.detail = fmt::format("recall@20 vanilla {:.4f}, simaug {:.4f} ({}/5 seeds up), aug-random {:.4f} ({}/5 up), {:.1f}s",
                         vanilla.mean_overall.recall, r.arms[1].mean_overall.recall, simaug_wins,
                         r.arms[2].mean_overall.recall, random_wins, elapsed) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome reproducibility(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.require(false, "command-line binary path not given");
    return o;
  }
  const auto dir = scratch("repro");
  SynthSpec spec;
  spec.users_per_group = 30;
  spec.items_per_group = 25;
  write_synthetic(generate_synthetic(spec), dir / "data");
  const std::string first = fmt::format(
      "{} pipeline --interactions {} --delimiter tab --item-embeddings {} --kcore 0 "
      "--arms simaug-item,aug-random,aug-rec,simaug-user --seeds 3,4 --dim 16 --lr 0.01 --batch-size 128 "
      "--max-epochs 15 --patience 5 --per-user 2 --pool-k 4 --workers 3 --output {} > /dev/null",
      quote(cli), quote(dir / "data" / "interactions.tsv"), quote(dir / "data" / "items"), quote(dir / "a"));
  const std::string second = fmt::format("{} pipeline --config {} --output {} > /dev/null", quote(cli),
                                         quote(dir / "a" / "config.ini"), quote(dir / "b"));
  o.require(std::system(first.c_str()) == 0, "first run failed");
  o.require(std::system(second.c_str()) == 0, "rerun from config failed");
  std::size_t compared = 0;
  if (o.pass) {
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
      if (entry.path().extension() != ".json") continue;
      const auto rel = fs::relative(entry.path(), dir / "a");
      o.require(fs::exists(dir / "b" / rel) && slurp(entry.path()) == slurp(dir / "b" / rel),
                fmt::format("{} differs", rel.string()));
      ++compared;
    }
    o.require(compared >= 5, "too few metrics files");
  }
  fs::remove_all(dir);
  o.detail = fmt::format("{} JSON files bit-identical after rerun from config.ini", compared) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"correlation reproduction", correlation_reproduction},
      {"fairness scale", fairness_scale},
      {"degree ratios", degree_ratios},
      {"k-core oracle", kcore_oracle},
      {"similarity oracle", similarity_oracle},
      {"recommender numerics", recommender_numerics},
      {"metric oracles", metric_oracles},
      {"augmentation structure", augmentation_structure},
      {"directional end-to-end", directional},
      {"reproducibility", [&] { return reproducibility(cli); }},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
