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
#include <fstream>

#include <fmt/format.h>

#include "simaug/error.hpp"
#include "simaug/rng.hpp"
#include "simaug/synth.hpp"

namespace simaug {

void SynthSpec::validate() const {
  if (groups == 0 || users_per_group == 0 || items_per_group == 0 || dim == 0) {
    fail(ErrorCode::kInvalidArgument, "synthetic groups, sizes and dim must be positive");
  }
  if (min_user_degree == 0 || min_user_degree > groups * items_per_group) {
    fail(ErrorCode::kInvalidArgument, "min user degree must be in [1, number of items]");
  }
  if (!(in_block >= 0.0 && in_block <= 1.0)) fail(ErrorCode::kInvalidArgument, "in-block probability must be in [0, 1]");
  if (!(noise >= 0.0) || !(activity_sigma >= 0.0) || !(popularity_skew >= 0.0) || !(taste >= 0.0)) {
    fail(ErrorCode::kInvalidArgument, "noise, activity sigma, skew and taste must be non-negative");
  }
}

namespace {

// Index into `cumulative` (running weight sums) drawn proportionally.
std::size_t draw_weighted(const std::vector<double>& cumulative, Rng& rng) {
  const double r = rng.uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

}  // namespace

SynthDataset generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  const std::size_t G = spec.groups;
  const std::size_t B = spec.items_per_group;
  const std::size_t num_users = G * spec.users_per_group;
  const std::size_t num_items = G * B;
  const std::size_t dim = spec.dim;

  std::vector<std::string> user_ids(num_users), item_ids(num_items);
  for (std::size_t u = 0; u < num_users; ++u) user_ids[u] = fmt::format("u{:05}", u);
  for (std::size_t i = 0; i < num_items; ++i) item_ids[i] = fmt::format("i{:05}", i);

  Rng centroid_rng(stream_seed(spec.seed, "centroids"));
  std::vector<double> centroids(G * dim);
  for (std::size_t g = 0; g < G; ++g) {
    double* c = centroids.data() + g * dim;
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      c[k] = centroid_rng.normal();
      norm += c[k] * c[k];
    }
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < dim; ++k) c[k] /= norm;
  }

  // Unit offset direction per item; the embedding is centroid + noise * offset.
  std::vector<double> offsets(num_items * dim);
  for (std::size_t i = 0; i < num_items; ++i) {
    Rng rng(stream_seed(spec.seed, item_ids[i]));
    double* o = offsets.data() + i * dim;
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      o[k] = rng.normal();
      norm += o[k] * o[k];
    }
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < dim; ++k) o[k] /= norm;
  }
  auto offset_cos = [&](std::size_t a, std::size_t b) {
    double d = 0.0;
    for (std::size_t k = 0; k < dim; ++k) d += offsets[a * dim + k] * offsets[b * dim + k];
    return d;
  };

  std::vector<double> zipf(B);
  for (std::size_t j = 0; j < B; ++j) zipf[j] = 1.0 / std::pow(static_cast<double>(j + 1), spec.popularity_skew);
  std::vector<double> other_cum(B);
  double acc = 0.0;
  for (std::size_t j = 0; j < B; ++j) other_cum[j] = acc += zipf[j];

  const std::size_t max_degree = std::max(spec.min_user_degree, num_items / 2);
  std::vector<Edge> edges;
  std::vector<char> taken(num_items, 0);
  std::vector<double> own_cum(B);
  for (std::size_t u = 0; u < num_users; ++u) {
    Rng rng(stream_seed(spec.seed, user_ids[u]));
    const std::size_t group = u / spec.users_per_group;
    const std::size_t anchor = group * B + rng.below(B);
    acc = 0.0;
    for (std::size_t j = 0; j < B; ++j) {
      own_cum[j] = acc += zipf[j] * std::exp(spec.taste * offset_cos(anchor, group * B + j));
    }
    const double scale = std::exp(spec.activity_sigma * rng.normal());
    const auto degree = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(static_cast<double>(spec.min_user_degree) * scale)),
        spec.min_user_degree, max_degree);
    std::fill(taken.begin(), taken.end(), 0);
    std::size_t have = 0;
    for (std::size_t attempt = 0; have < degree && attempt < 100 * degree; ++attempt) {
      std::size_t item;
      if (G > 1 && rng.uniform() >= spec.in_block) {
        const std::size_t block = (group + 1 + rng.below(G - 1)) % G;
        item = block * B + draw_weighted(other_cum, rng);
      } else {
        item = group * B + draw_weighted(own_cum, rng);
      }
      if (taken[item]) continue;
      taken[item] = 1;
      ++have;
      edges.push_back({static_cast<Index>(u), static_cast<Index>(item)});
    }
  }

  SynthDataset out;
  out.interactions = InteractionSet::build(user_ids, item_ids, std::move(edges), true);
  const InteractionSet& set = out.interactions;

  // Surviving entities keep their ids, so recover original positions from them.
  auto original = [](const std::string& id) { return std::stoul(id.substr(1)); };
  out.user_group.resize(set.num_users());
  out.item_group.resize(set.num_items());
  for (Index u = 0; u < set.num_users(); ++u) out.user_group[u] = original(set.user_id(u)) / spec.users_per_group;
  std::vector<float> values;
  values.reserve(set.num_items() * dim);
  for (Index i = 0; i < set.num_items(); ++i) {
    const std::size_t orig = original(set.item_id(i));
    out.item_group[i] = orig / B;
    const double* c = centroids.data() + out.item_group[i] * dim;
    const double* o = offsets.data() + orig * dim;
    for (std::size_t k = 0; k < dim; ++k) values.push_back(static_cast<float>(c[k] + spec.noise * o[k]));
  }
  out.item_embeddings = EmbeddingMatrix(set.item_ids(), std::move(values), dim, "synthetic");
  return out;
}

void write_synthetic(const SynthDataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_interactions(dir / "interactions.tsv", data.interactions, '\t');
  save_embeddings(data.item_embeddings, semb_ids_path(dir / "items"), semb_matrix_path(dir / "items"));
}

}  // namespace simaug
