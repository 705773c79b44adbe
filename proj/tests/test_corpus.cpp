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

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "simaug/error.hpp"
#include "simaug/partition.hpp"

namespace simaug {
namespace {

InteractionSet parse(const std::string& text, Delimiter d = Delimiter::kWhitespace) {
  std::istringstream in(text);
  return parse_interactions(in, d).set;
}

using testing::code_of;

TEST(Ingest, DensifiesIdsInFirstAppearanceOrder) {
  std::istringstream in("bob x\nann y\nbob y\nbob x\n\n");
  auto r = parse_interactions(in, Delimiter::kWhitespace);
  EXPECT_EQ(r.duplicates, 1u);
  EXPECT_EQ(r.set.num_users(), 2u);
  EXPECT_EQ(r.set.user_id(0), "bob");
  EXPECT_EQ(r.set.item_id(1), "y");
  EXPECT_EQ(r.set.num_edges(), 3u);
  EXPECT_TRUE(r.set.has_edge(1, 1));
  EXPECT_FALSE(r.set.has_edge(1, 0));
}

TEST(Ingest, DelimitersAndExtraColumns) {
  auto s = parse("u1,i1,5.0,123\nu2,i1\n", Delimiter::kComma);
  EXPECT_EQ(s.num_edges(), 2u);
  EXPECT_EQ(s.item_degree(0), 2u);
  auto t = parse("a b\tc\td\n", Delimiter::kTab);
  EXPECT_EQ(t.user_id(0), "a b");
  EXPECT_EQ(t.item_id(0), "c");
}

TEST(Ingest, Errors) {
  EXPECT_EQ(code_of([] { parse("lonely\n"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse("\n  \n"); }), ErrorCode::kEmptyDataset);
  EXPECT_EQ(code_of([] { parse("a,,\n", Delimiter::kComma); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { load_interactions("/nonexistent/file.tsv"); }), ErrorCode::kIo);
  EXPECT_EQ(code_of([] { parse_delimiter("pipe"); }), ErrorCode::kInvalidArgument);
}

TEST(Ingest, FileRoundTrip) {
  auto s = parse("u1 i1\nu1 i2\nu2 i2\n");
  auto path = std::filesystem::temp_directory_path() / "simaug_roundtrip.tsv";
  write_interactions(path, s);
  auto back = load_interactions(path, Delimiter::kTab).set;
  EXPECT_EQ(back, s);
  EXPECT_EQ(back.fingerprint(), s.fingerprint());
  std::filesystem::remove(path);
}

TEST(InteractionSet, DropIsolatedRedensifies) {
  auto s = InteractionSet::build({"a", "b", "c"}, {"x", "y", "z"}, {{0, 2}, {2, 2}, {2, 0}});
  ASSERT_EQ(s.num_users(), 2u);
  EXPECT_EQ(s.user_id(1), "c");
  EXPECT_EQ(s.item_ids(), (std::vector<std::string>{"x", "z"}));
  auto kept = InteractionSet::build({"a", "b"}, {"x"}, {{0, 0}}, false);
  EXPECT_EQ(kept.num_users(), 2u);
  EXPECT_EQ(kept.user_degree(1), 0u);
}

TEST(KCore, MatchesPeelingOracle) {
  Rng rng(7);
  for (int g = 0; g < 100; ++g) {
    const std::size_t nu = 1 + rng.below(40), ni = 1 + rng.below(40);
    auto graph = oracle::random_graph(rng, nu, ni, 0.05 + 0.3 * rng.uniform());
    if (graph.empty()) continue;
    const std::size_t k = 1 + rng.below(5);
    auto expected = oracle::naive_kcore(graph, k);
    if (expected.empty()) {
      EXPECT_EQ(code_of([&] { k_core_filter(graph, k); }), ErrorCode::kEmptyCore);
      continue;
    }
    auto core = k_core_filter(graph, k);
    EXPECT_EQ(oracle::edge_ids(core), expected) << "graph " << g << " k " << k;
    for (Index u = 0; u < core.num_users(); ++u) EXPECT_GE(core.user_degree(u), k);
    for (Index i = 0; i < core.num_items(); ++i) EXPECT_GE(core.item_degree(i), k);
    EXPECT_EQ(k_core_filter(core, k), core);
  }
}

TEST(KCore, RejectsZero) {
  auto s = parse("a x\n");
  EXPECT_EQ(code_of([&] { k_core_filter(s, 0); }), ErrorCode::kInvalidArgument);
}

TEST(Split, TenEdgesGiveEightOneOne) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += "u i" + std::to_string(i) + "\n";
  auto s = parse(text);
  auto sp = split(s, {}, 3);
  EXPECT_EQ(sp.train.num_edges(), 8u);
  EXPECT_EQ(sp.validation.size(), 1u);
  EXPECT_EQ(sp.test.size(), 1u);
}

TEST(Split, PartitionsEveryUserHistory) {
  Rng rng(11);
  auto g = oracle::random_graph(rng, 60, 50, 0.15);
  auto a = split(g, {}, 5);
  auto b = split(g, {}, 5);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  EXPECT_NE(a.fingerprint(), split(g, {}, 6).fingerprint());
  EXPECT_EQ(a.train.num_users(), g.num_users());
  EXPECT_EQ(a.train.num_items(), g.num_items());

  std::set<Edge> all;
  for (const Edge& e : a.train.edges()) all.insert(e);
  for (const Edge& e : a.validation) EXPECT_TRUE(all.insert(e).second);
  for (const Edge& e : a.test) EXPECT_TRUE(all.insert(e).second);
  auto original = g.edges();
  EXPECT_EQ(std::vector<Edge>(all.begin(), all.end()), original);
  for (Index u = 0; u < g.num_users(); ++u) {
    if (g.user_degree(u) >= 3) EXPECT_GE(a.train.user_degree(u), 1u);
    else EXPECT_EQ(a.train.user_degree(u), g.user_degree(u));
  }
}

TEST(Split, RejectsBadRatios) {
  auto s = parse("a x\n");
  EXPECT_EQ(code_of([&] { split(s, {0.8, 0.1, 0.2}, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { split(s, {1.0, 0.0, 0.0}, 0); }), ErrorCode::kInvalidArgument);
}

TEST(Split, FileRoundTrip) {
  Rng rng(2);
  auto g = oracle::random_graph(rng, 30, 20, 0.3);
  auto sp = split(g, {0.7, 0.15, 0.15}, 9);
  auto path = std::filesystem::temp_directory_path() / "simaug_split.tsv";
  write_split(path, sp);
  auto back = read_split(path);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_DOUBLE_EQ(back.ratios.validation, 0.15);
  EXPECT_EQ(back.train.num_edges(), sp.train.num_edges());
  EXPECT_EQ(back.validation.size(), sp.validation.size());
  EXPECT_EQ(back.test.size(), sp.test.size());
  for (const Edge& e : back.test) {
    const auto u = back.train.user_id(e.user);
    const auto i = back.train.item_id(e.item);
    EXPECT_TRUE(std::any_of(sp.test.begin(), sp.test.end(), [&](const Edge& o) {
      return sp.train.user_id(o.user) == u && sp.train.item_id(o.item) == i;
    }));
  }
  std::filesystem::remove(path);
}

TEST(Stats, Density) {
  auto full = InteractionSet::build(oracle::make_ids("u", 3), oracle::make_ids("i", 4),
                                    {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 1}, {1, 2}, {1, 3},
                                     {2, 0}, {2, 1}, {2, 2}, {2, 3}});
  EXPECT_DOUBLE_EQ(density(full), 1.0);
  auto one = InteractionSet::build(oracle::make_ids("u", 10), oracle::make_ids("i", 10), {{0, 0}}, false);
  EXPECT_DOUBLE_EQ(density(one), 0.01);
  // Appliances-sized corpus; pairs (e mod U, e mod I) are distinct below lcm(U, I).
  std::vector<Edge> edges;
  for (Index e = 0; e < 65694; ++e) edges.push_back({e % 18830, e % 6542});
  auto big = InteractionSet::build(oracle::make_ids("u", 18830), oracle::make_ids("i", 6542), edges);
  ASSERT_EQ(big.num_edges(), 65694u);
  EXPECT_NEAR(density(big), 5.333e-4, 5e-8);
}

TEST(Stats, DegreeTableExample) {
  // Item degrees 10, 8, 2, 2 with the first two popular.
  std::vector<Edge> edges;
  const std::size_t degs[] = {10, 8, 2, 2};
  for (Index i = 0; i < 4; ++i) {
    for (Index u = 0; u < degs[i]; ++u) edges.push_back({u, i});
  }
  auto s = InteractionSet::build(oracle::make_ids("u", 10), oracle::make_ids("i", 4), edges);
  auto items = partition_items(s, 0.5);
  EXPECT_EQ(items.popular, (std::vector<Index>{0, 1}));
  auto st = degree_stats(s, items);
  EXPECT_DOUBLE_EQ(st.avg_degree_popular, 9.0);
  EXPECT_DOUBLE_EQ(st.avg_degree_unpopular, 2.0);
  EXPECT_DOUBLE_EQ(st.pop_unpop_ratio, 4.5);
  EXPECT_EQ(code_of([] { degree_ratio(3.0, 0.0); }), ErrorCode::kUndefinedRatio);
}

TEST(Partition, TopFractionWithIdTieBreak) {
  auto s = parse("b x\nb y\na x\nc x\nc y\nd z\n");
  auto users = partition_users(s, 0.5);
  // b and c tie on degree 2; both are in the top half.
  ASSERT_EQ(users.active.size(), 2u);
  EXPECT_EQ(s.user_id(users.active[0]), "b");
  EXPECT_EQ(s.user_id(users.active[1]), "c");
  auto one = partition_users(s, 0.25);
  ASSERT_EQ(one.active.size(), 1u);
  EXPECT_EQ(s.user_id(one.active[0]), "b");
  EXPECT_EQ(one.inactive.size() + one.active.size(), s.num_users());
  EXPECT_EQ(code_of([&] { partition_items(s, 1.0); }), ErrorCode::kInvalidArgument);
  Rng rng(1);
  EXPECT_EQ(partition_users(oracle::random_graph(rng, 100, 3, 0.9), 0.05).active.size(), 5u);
}

}  // namespace
}  // namespace simaug
