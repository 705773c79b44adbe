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

#include "simaug/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <unordered_map>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/partition.hpp"
#include "simaug/rng.hpp"

namespace simaug {

namespace {

std::uint64_t fnv(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv_edges(std::uint64_t h, const std::vector<Edge>& edges) {
  for (const Edge& e : edges) {
    h = fnv(h, &e.user, sizeof(e.user));
    h = fnv(h, &e.item, sizeof(e.item));
  }
  return h;
}

void build_csr(std::size_t rows, const std::vector<std::pair<Index, Index>>& pairs,
               std::vector<std::size_t>& offsets, std::vector<Index>& adj) {
  offsets.assign(rows + 1, 0);
  for (const auto& [r, c] : pairs) ++offsets[r + 1];
  for (std::size_t r = 0; r < rows; ++r) offsets[r + 1] += offsets[r];
  adj.resize(pairs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [r, c] : pairs) adj[cursor[r]++] = c;
}

}  // namespace

InteractionSet InteractionSet::build(std::vector<std::string> user_ids,
                                     std::vector<std::string> item_ids,
                                     std::vector<Edge> edges,
                                     bool drop_isolated) {
  for (const Edge& e : edges) {
    if (e.user >= user_ids.size() || e.item >= item_ids.size()) {
      fail(ErrorCode::kInvalidArgument,
           fmt::format("edge ({}, {}) outside id range {}x{}", e.user, e.item,
                       user_ids.size(), item_ids.size()));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  if (drop_isolated) {
    std::vector<Index> user_map(user_ids.size(), 0);
    std::vector<Index> item_map(item_ids.size(), 0);
    std::vector<char> user_seen(user_ids.size(), 0);
    std::vector<char> item_seen(item_ids.size(), 0);
    for (const Edge& e : edges) {
      user_seen[e.user] = 1;
      item_seen[e.item] = 1;
    }
    auto compact = [](std::vector<std::string>& ids, const std::vector<char>& seen,
                      std::vector<Index>& map) {
      std::size_t next = 0;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!seen[i]) continue;
        map[i] = static_cast<Index>(next);
        if (next != i) ids[next] = std::move(ids[i]);
        ++next;
      }
      ids.resize(next);
    };
    compact(user_ids, user_seen, user_map);
    compact(item_ids, item_seen, item_map);
    for (Edge& e : edges) {
      e.user = user_map[e.user];
      e.item = item_map[e.item];
    }
    // Remapping is monotone, so edges stay sorted.
  }

  InteractionSet set;
  set.user_ids_ = std::move(user_ids);
  set.item_ids_ = std::move(item_ids);
  set.num_edges_ = edges.size();

  std::vector<std::pair<Index, Index>> by_user;
  by_user.reserve(edges.size());
  for (const Edge& e : edges) by_user.emplace_back(e.user, e.item);
  build_csr(set.user_ids_.size(), by_user, set.user_offsets_, set.user_adj_);

  std::vector<std::pair<Index, Index>> by_item;
  by_item.reserve(edges.size());
  for (const Edge& e : edges) by_item.emplace_back(e.item, e.user);
  // Edges are user-sorted, so each item's user list comes out increasing.
  build_csr(set.item_ids_.size(), by_item, set.item_offsets_, set.item_adj_);
  return set;
}

bool InteractionSet::has_edge(Index user, Index item) const {
  auto items = items_of(user);
  return std::binary_search(items.begin(), items.end(), item);
}

std::vector<Edge> InteractionSet::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Index u = 0; u < num_users(); ++u) {
    for (Index i : items_of(u)) out.push_back({u, i});
  }
  return out;
}

std::uint64_t InteractionSet::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& id : user_ids_) h = fnv(h, id.data(), id.size() + 1);
  for (const auto& id : item_ids_) h = fnv(h, id.data(), id.size() + 1);
  return fnv_edges(h, edges());
}

bool operator==(const InteractionSet& a, const InteractionSet& b) {
  return a.user_ids_ == b.user_ids_ && a.item_ids_ == b.item_ids_ &&
         a.user_offsets_ == b.user_offsets_ && a.user_adj_ == b.user_adj_;
}

Delimiter parse_delimiter(const std::string& name) {
  if (name == "whitespace" || name == "space" || name == " ") return Delimiter::kWhitespace;
  if (name == "tab" || name == "\t" || name == "\\t") return Delimiter::kTab;
  if (name == "comma" || name == ",") return Delimiter::kComma;
  fail(ErrorCode::kInvalidArgument, fmt::format("unknown delimiter '{}'", name));
}

LoadResult parse_interactions(std::istream& in, Delimiter delimiter) {
  std::vector<std::string> users;
  std::vector<std::string> items;
  std::unordered_map<std::string, Index> user_index;
  std::unordered_map<std::string, Index> item_index;
  std::vector<Edge> edges;

  auto intern = [](std::unordered_map<std::string, Index>& index,
                   std::vector<std::string>& ids, const std::string& key) {
    auto [it, inserted] = index.try_emplace(key, static_cast<Index>(ids.size()));
    if (inserted) ids.push_back(key);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    fields.clear();
    if (delimiter == Delimiter::kWhitespace) {
      std::istringstream tokens(line);
      std::string token;
      while (tokens >> token) fields.push_back(token);
    } else {
      char sep = delimiter == Delimiter::kTab ? '\t' : ',';
      std::size_t start = 0;
      while (true) {
        std::size_t pos = line.find(sep, start);
        fields.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
    }
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      fail(ErrorCode::kParse,
           fmt::format("line {}: expected user and item fields, got {}", line_no,
                       fields.size()));
    }
    Index u = intern(user_index, users, fields[0]);
    Index i = intern(item_index, items, fields[1]);
    edges.push_back({u, i});
  }
  if (edges.empty()) fail(ErrorCode::kEmptyDataset, "no interactions in input");

  std::size_t raw = edges.size();
  LoadResult result;
  result.set = InteractionSet::build(std::move(users), std::move(items),
                                     std::move(edges));
  result.duplicates = raw - result.set.num_edges();
  return result;
}

LoadResult load_interactions(const std::filesystem::path& path, Delimiter delimiter) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  return parse_interactions(in, delimiter);
}

void write_interactions(const std::filesystem::path& path, const InteractionSet& set,
                        char delimiter) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  for (const Edge& e : set.edges()) {
    out << set.user_id(e.user) << delimiter << set.item_id(e.item) << '\n';
  }
}

InteractionSet k_core_filter(const InteractionSet& set, std::size_t k) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "k-core requires k >= 1");
  const std::size_t nu = set.num_users();
  const std::size_t ni = set.num_items();
  std::vector<std::size_t> user_deg(nu), item_deg(ni);
  std::vector<char> user_alive(nu, 1), item_alive(ni, 1);
  // Nodes 0..nu-1 are users, nu.. are items.
  std::queue<std::size_t> pending;
  for (Index u = 0; u < nu; ++u) {
    user_deg[u] = set.user_degree(u);
    if (user_deg[u] < k) {
      user_alive[u] = 0;
      pending.push(u);
    }
  }
  for (Index i = 0; i < ni; ++i) {
    item_deg[i] = set.item_degree(i);
    if (item_deg[i] < k) {
      item_alive[i] = 0;
      pending.push(nu + i);
    }
  }
  while (!pending.empty()) {
    std::size_t node = pending.front();
    pending.pop();
    if (node < nu) {
      for (Index i : set.items_of(static_cast<Index>(node))) {
        if (item_alive[i] && --item_deg[i] < k) {
          item_alive[i] = 0;
          pending.push(nu + i);
        }
      }
    } else {
      for (Index u : set.users_of(static_cast<Index>(node - nu))) {
        if (user_alive[u] && --user_deg[u] < k) {
          user_alive[u] = 0;
          pending.push(u);
        }
      }
    }
  }

  std::vector<Edge> kept;
  for (const Edge& e : set.edges()) {
    if (user_alive[e.user] && item_alive[e.item]) kept.push_back(e);
  }
  if (kept.empty()) {
    fail(ErrorCode::kEmptyCore, fmt::format("{}-core of the interaction set is empty", k));
  }
  return InteractionSet::build(set.user_ids(), set.item_ids(), std::move(kept));
}

std::uint64_t SplitDataset::fingerprint() const {
  std::uint64_t h = train.fingerprint();
  h = fnv_edges(h, validation);
  return fnv_edges(h ^ 0x9e3779b97f4a7c15ULL, test);
}

SplitDataset split(const InteractionSet& set, const SplitRatios& ratios,
                   std::uint64_t seed) {
  if (!(ratios.train > 0 && ratios.validation > 0 && ratios.test > 0) ||
      std::abs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidArgument,
         fmt::format("split ratios must be positive and sum to 1, got {}/{}/{}",
                     ratios.train, ratios.validation, ratios.test));
  }
  SplitDataset out;
  out.seed = seed;
  out.ratios = ratios;
  std::vector<Edge> train_edges;
  train_edges.reserve(set.num_edges());

  std::vector<Index> items;
  for (Index u = 0; u < set.num_users(); ++u) {
    auto history = set.items_of(u);
    const std::size_t n = history.size();
    if (n < 3) {
      for (Index i : history) train_edges.push_back({u, i});
      continue;
    }
    auto n_test = std::max<std::size_t>(1, std::llround(n * ratios.test));
    auto n_val = std::max<std::size_t>(1, std::llround(n * ratios.validation));
    while (n_test + n_val > n - 1) {
      if (n_val >= n_test) --n_val;
      else --n_test;
    }
    items.assign(history.begin(), history.end());
    Rng rng(stream_seed(seed, set.user_id(u)));
    shuffle(std::span<Index>(items), rng);
    for (std::size_t p = 0; p < n; ++p) {
      Edge e{u, items[p]};
      if (p < n_test) out.test.push_back(e);
      else if (p < n_test + n_val) out.validation.push_back(e);
      else train_edges.push_back(e);
    }
  }
  std::sort(out.test.begin(), out.test.end());
  std::sort(out.validation.begin(), out.validation.end());
  out.train = InteractionSet::build(set.user_ids(), set.item_ids(),
                                    std::move(train_edges), false);
  return out;
}

void write_split(const std::filesystem::path& path, const SplitDataset& split) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  const nlohmann::json header{
      {"seed", split.seed},
      {"ratios", {split.ratios.train, split.ratios.validation, split.ratios.test}}};
  out << '#' << header.dump() << '\n';
  const InteractionSet& t = split.train;
  auto emit = [&](const Edge& e, const char* part) {
    out << t.user_id(e.user) << '\t' << t.item_id(e.item) << '\t' << part << '\n';
  };
  for (const Edge& e : t.edges()) emit(e, "train");
  for (const Edge& e : split.validation) emit(e, "validation");
  for (const Edge& e : split.test) emit(e, "test");
  if (!out) fail(ErrorCode::kIo, fmt::format("failed writing {}", path.string()));
}

SplitDataset read_split(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  SplitDataset out;
  std::vector<std::string> users, items;
  std::unordered_map<std::string, Index> user_index, item_index;
  auto intern = [](std::unordered_map<std::string, Index>& index, std::vector<std::string>& ids,
                   const std::string& key) {
    auto [it, inserted] = index.try_emplace(key, static_cast<Index>(ids.size()));
    if (inserted) ids.push_back(key);
    return it->second;
  };
  std::vector<Edge> train;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      try {
        const auto header = nlohmann::json::parse(line.substr(1));
        out.seed = header.at("seed").get<std::uint64_t>();
        const auto r = header.at("ratios").get<std::vector<double>>();
        if (r.size() != 3) fail(ErrorCode::kParse, "split header needs three ratios");
        out.ratios = {r[0], r[1], r[2]};
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kParse, fmt::format("{} line {}: {}", path.string(), line_no, e.what()));
      }
      continue;
    }
    std::istringstream fields(line);
    std::string user, item, part;
    if (!(fields >> user >> item >> part)) {
      fail(ErrorCode::kParse, fmt::format("{} line {}: expected user, item and part", path.string(), line_no));
    }
    const Edge e{intern(user_index, users, user), intern(item_index, items, item)};
    if (part == "train") {
      train.push_back(e);
    } else if (part == "validation") {
      out.validation.push_back(e);
    } else if (part == "test") {
      out.test.push_back(e);
    } else {
      fail(ErrorCode::kParse, fmt::format("{} line {}: unknown part '{}'", path.string(), line_no, part));
    }
  }
  if (users.empty()) fail(ErrorCode::kEmptyDataset, fmt::format("{} holds no edges", path.string()));
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.test.begin(), out.test.end());
  out.train = InteractionSet::build(std::move(users), std::move(items), std::move(train), false);
  return out;
}

double density(const InteractionSet& set) {
  if (set.num_users() == 0 || set.num_items() == 0) {
    fail(ErrorCode::kEmptyDataset, "density of an empty interaction set");
  }
  return static_cast<double>(set.num_edges()) /
         (static_cast<double>(set.num_users()) * static_cast<double>(set.num_items()));
}

double degree_ratio(double avg_popular, double avg_unpopular) {
  if (!(avg_unpopular > 0.0)) {
    fail(ErrorCode::kUndefinedRatio, "unpopular average degree is zero");
  }
  return avg_popular / avg_unpopular;
}

DatasetStats degree_stats(const InteractionSet& set, const ItemPartition& items) {
  if (items.popular.size() + items.unpopular.size() != set.num_items()) {
    fail(ErrorCode::kInvalidArgument, "item partition does not cover the item set");
  }
  if (items.popular.empty() || items.unpopular.empty()) {
    fail(ErrorCode::kUndefinedRatio, "item partition has an empty group");
  }
  auto mean_degree = [&](const std::vector<Index>& group) {
    double total = 0.0;
    for (Index i : group) total += static_cast<double>(set.item_degree(i));
    return total / static_cast<double>(group.size());
  };
  DatasetStats s;
  s.num_users = set.num_users();
  s.num_items = set.num_items();
  s.num_interactions = set.num_edges();
  s.density = density(set);
  s.avg_degree_popular = mean_degree(items.popular);
  s.avg_degree_unpopular = mean_degree(items.unpopular);
  s.pop_unpop_ratio = degree_ratio(s.avg_degree_popular, s.avg_degree_unpopular);
  return s;
}

void to_json(nlohmann::json& j, const DatasetStats& s) {
  j = nlohmann::json{{"numUsers", s.num_users},
                     {"numItems", s.num_items},
                     {"numInteractions", s.num_interactions},
                     {"density", s.density},
                     {"avgDegreePopular", s.avg_degree_popular},
                     {"avgDegreeUnpopular", s.avg_degree_unpopular},
                     {"popUnpopRatio", s.pop_unpop_ratio}};
}

void from_json(const nlohmann::json& j, DatasetStats& s) {
  j.at("numUsers").get_to(s.num_users);
  j.at("numItems").get_to(s.num_items);
  j.at("numInteractions").get_to(s.num_interactions);
  j.at("density").get_to(s.density);
  j.at("avgDegreePopular").get_to(s.avg_degree_popular);
  j.at("avgDegreeUnpopular").get_to(s.avg_degree_unpopular);
  j.at("popUnpopRatio").get_to(s.pop_unpop_ratio);
}

}  // namespace simaug
