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
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "simaug/corpus.hpp"

namespace simaug {

// Entity-aligned float32 matrix, row-major, one row per id.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  // Validates shape, id uniqueness and finiteness.
  EmbeddingMatrix(std::vector<std::string> ids, std::vector<float> values, std::size_t dim,
                  std::string source_tag);

  std::size_t rows() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t row) const { return ids_[row]; }
  const std::string& source_tag() const { return source_tag_; }
  std::span<const float> row(std::size_t r) const { return {values_.data() + r * dim_, dim_}; }
  std::span<const float> values() const { return values_; }

  std::optional<std::size_t> find(const std::string& id) const;

  friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&);

 private:
  std::vector<std::string> ids_;
  std::vector<float> values_;
  std::size_t dim_ = 0;
  std::string source_tag_;
  std::unordered_map<std::string, std::size_t> index_;
};

// SEMB file pair: UTF-8 ids file (one id per line, row order) and a matrix
// file with a 24-byte little-endian header
//   "SEMB" | version u32 (=1) | rows u64 | dim u32 | reserved u32 (=0)
// followed by rows*dim IEEE-754 float32 values, row-major.
inline constexpr std::uint32_t kSembVersion = 1;
inline constexpr std::size_t kSembHeaderBytes = 24;

// The source tag is not part of the binary contract. When `source_tag` is
// empty it is read from an optional "<matrix>.meta.json" sidecar, falling
// back to the matrix file stem.
EmbeddingMatrix load_embeddings(const std::filesystem::path& ids_path,
                                const std::filesystem::path& matrix_path,
                                const std::string& source_tag = {});

// Writes the pair plus the sidecar carrying the source tag.
void save_embeddings(const EmbeddingMatrix& emb, const std::filesystem::path& ids_path,
                     const std::filesystem::path& matrix_path);

// Conventional pair naming: <prefix>.ids and <prefix>.semb
std::filesystem::path semb_ids_path(const std::filesystem::path& prefix);
std::filesystem::path semb_matrix_path(const std::filesystem::path& prefix);

enum class AlignPolicy { kError, kDrop };

struct AlignResult {
  EmbeddingMatrix embeddings;  // row i is internal item i of `corpus`
  InteractionSet corpus;       // input corpus minus dropped items
  std::vector<std::string> dropped;
};

AlignResult align(const EmbeddingMatrix& emb, const InteractionSet& corpus, AlignPolicy policy);

// Reorders rows to follow `ids`; every id must be present.
EmbeddingMatrix select_rows(const EmbeddingMatrix& emb, const std::vector<std::string>& ids);

enum class SimilarityMeasure { kCosine, kDot };

struct Neighbor {
  Index index;   // candidate row
  double score;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Score descending, then candidate index ascending.
inline bool ranks_before(const Neighbor& a, const Neighbor& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.index < b.index;
}

using TopKResult = std::vector<std::vector<Neighbor>>;

struct TopKOptions {
  std::size_t workers = 1;
  std::size_t query_tile = 16;
  std::size_t candidate_tile = 512;
};

// Exact top-k search over a fixed matrix. Row norms are computed once at
// construction and reused by every query.
class SimilarityIndex {
 public:
  explicit SimilarityIndex(const EmbeddingMatrix& emb,
                           SimilarityMeasure measure = SimilarityMeasure::kCosine);

  const EmbeddingMatrix& matrix() const { return *emb_; }
  SimilarityMeasure measure() const { return measure_; }

  double similarity(Index a, Index b) const;

  // One result list per query, each of length min(k, pool) where the pool is
  // `candidates` minus the query itself.
  TopKResult topk(std::span<const Index> queries, std::span<const Index> candidates,
                  std::size_t k, const TopKOptions& options = {}) const;

  // Number of normalization passes performed so far (always 1 after
  // construction); lets callers verify norms are cached.
  std::size_t normalization_passes() const { return normalization_passes_; }

 private:
  void check_row(Index row) const;

  const EmbeddingMatrix* emb_;
  SimilarityMeasure measure_;
  std::vector<double> inv_norm_;
  std::size_t normalization_passes_ = 0;
};

TopKResult cosine_topk(const EmbeddingMatrix& emb, std::span<const Index> queries,
                       std::span<const Index> candidates, std::size_t k,
                       const TopKOptions& options = {});

// Row e of the result is the mean of the rows listed in index_lists[e].
EmbeddingMatrix mean_pool(const EmbeddingMatrix& emb,
                          const std::vector<std::vector<Index>>& index_lists,
                          std::vector<std::string> output_ids, std::string source_tag);

}  // namespace simaug
