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

#include "simaug/corpus.hpp"
#include "simaug/simvec.hpp"

namespace simaug {

// Planted-structure corpus: each user group prefers one item block, and item
// embeddings scatter around their block's centroid. Inside its block a user
// also leans toward items whose embedding offset is close to a personal anchor
// (strength `taste`), so text similarity carries preference signal.
struct SynthSpec {
  std::size_t groups = 4;
  std::size_t users_per_group = 75;
  std::size_t items_per_group = 50;
  std::size_t min_user_degree = 4;
  double activity_sigma = 0.6;    // log-normal spread of user degrees
  double popularity_skew = 1.0;   // Zipf exponent within a block
  double in_block = 0.85;         // probability a sampled item comes from the user's block
  double noise = 0.1;             // embedding noise norm relative to unit centroids
  double taste = 4.0;             // weight multiplier exp(taste * cos(anchor, item offset))
  std::size_t dim = 32;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthDataset {
  InteractionSet interactions;
  EmbeddingMatrix item_embeddings;
  std::vector<std::size_t> user_group;  // by user index
  std::vector<std::size_t> item_group;  // by item index
};

SynthDataset generate_synthetic(const SynthSpec& spec);

// Writes <dir>/interactions.tsv and the <dir>/items.{ids,semb} pair.
void write_synthetic(const SynthDataset& data, const std::filesystem::path& dir);

}  // namespace simaug
