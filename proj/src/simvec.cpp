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
#include <thread>

#include <fmt/core.h>

#include "simaug/error.hpp"
#include "simaug/kernels.hpp"
#include "simaug/simvec.hpp"

namespace simaug {

SimilarityIndex::SimilarityIndex(const EmbeddingMatrix& emb, SimilarityMeasure measure)
    : emb_(&emb), measure_(measure), inv_norm_(emb.rows(), 0.0) {
  if (measure_ == SimilarityMeasure::kCosine) {
    for (std::size_t r = 0; r < emb.rows(); ++r) {
      auto row = emb.row(r);
      double sq = kernels::dot(row.data(), row.data(), row.size());
      inv_norm_[r] = sq > 0.0 ? 1.0 / std::sqrt(sq) : 0.0;
    }
  } else {
    std::fill(inv_norm_.begin(), inv_norm_.end(), 1.0);
  }
  ++normalization_passes_;
}

void SimilarityIndex::check_row(Index row) const {
  if (row >= emb_->rows()) {
    fail(ErrorCode::kInvalidArgument,
         fmt::format("row {} outside embedding matrix of {} rows", row, emb_->rows()));
  }
  if (measure_ == SimilarityMeasure::kCosine && inv_norm_[row] == 0.0) {
    fail(ErrorCode::kDegenerateVector,
         fmt::format("zero-norm embedding for '{}'", emb_->id(row)));
  }
}

double SimilarityIndex::similarity(Index a, Index b) const {
  check_row(a);
  check_row(b);
  const std::size_t d = emb_->dim();
  return kernels::dot(emb_->row(a).data(), emb_->row(b).data(), d) * inv_norm_[a] * inv_norm_[b];
}

namespace {

// Bounded selection keeping the k best under ranks_before; the heap top is
// the current worst survivor.
class TopKHeap {
 public:
  explicit TopKHeap(std::size_t k) : k_(k) { items_.reserve(k); }

  void offer(Neighbor n) {
    if (items_.size() < k_) {
      items_.push_back(n);
      std::push_heap(items_.begin(), items_.end(), ranks_before);
    } else if (ranks_before(n, items_.front())) {
      std::pop_heap(items_.begin(), items_.end(), ranks_before);
      items_.back() = n;
      std::push_heap(items_.begin(), items_.end(), ranks_before);
    }
  }

  std::vector<Neighbor> take() {
    std::sort_heap(items_.begin(), items_.end(), ranks_before);
    return std::move(items_);
  }

 private:
  std::size_t k_;
  std::vector<Neighbor> items_;
};

}  // namespace

TopKResult SimilarityIndex::topk(std::span<const Index> queries,
                                 std::span<const Index> candidates, std::size_t k,
                                 const TopKOptions& options) const {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "top-k requires k >= 1");
  if (candidates.empty()) fail(ErrorCode::kInvalidArgument, "top-k requires a non-empty candidate set");
  for (Index q : queries) check_row(q);
  std::vector<Index> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  for (Index c : pool) check_row(c);

  const std::size_t d = emb_->dim();
  const std::size_t qt = std::max<std::size_t>(1, options.query_tile);
  const std::size_t ct = std::max<std::size_t>(1, options.candidate_tile);
  const std::size_t num_tiles = (queries.size() + qt - 1) / qt;
  TopKResult result(queries.size());

  auto run_tiles = [&](std::size_t tile_begin, std::size_t tile_end) {
    std::vector<TopKHeap> heaps;
    for (std::size_t tile = tile_begin; tile < tile_end; ++tile) {
      const std::size_t q0 = tile * qt;
      const std::size_t q1 = std::min(queries.size(), q0 + qt);
      heaps.assign(q1 - q0, TopKHeap(k));
      for (std::size_t c0 = 0; c0 < pool.size(); c0 += ct) {
        const std::size_t c1 = std::min(pool.size(), c0 + ct);
        for (std::size_t qi = q0; qi < q1; ++qi) {
          const Index q = queries[qi];
          const float* qrow = emb_->row(q).data();
          TopKHeap& heap = heaps[qi - q0];
          for (std::size_t ci = c0; ci < c1; ++ci) {
            const Index c = pool[ci];
            if (c == q) continue;
            double s = kernels::dot(qrow, emb_->row(c).data(), d) * inv_norm_[q] * inv_norm_[c];
            heap.offer({c, s});
          }
        }
      }
      for (std::size_t qi = q0; qi < q1; ++qi) result[qi] = heaps[qi - q0].take();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(1, num_tiles));
  if (workers == 1) {
    run_tiles(0, num_tiles);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t begin = num_tiles * w / workers;
      std::size_t end = num_tiles * (w + 1) / workers;
      threads.emplace_back(run_tiles, begin, end);
    }
  }
  return result;
}

TopKResult cosine_topk(const EmbeddingMatrix& emb, std::span<const Index> queries,
                       std::span<const Index> candidates, std::size_t k,
                       const TopKOptions& options) {
  return SimilarityIndex(emb).topk(queries, candidates, k, options);
}

EmbeddingMatrix mean_pool(const EmbeddingMatrix& emb,
                          const std::vector<std::vector<Index>>& index_lists,
                          std::vector<std::string> output_ids, std::string source_tag) {
  if (output_ids.size() != index_lists.size()) {
    fail(ErrorCode::kInvalidArgument, "mean_pool needs one output id per index list");
  }
  const std::size_t d = emb.dim();
  std::vector<float> values(index_lists.size() * d);
  std::vector<double> acc(d);
  for (std::size_t e = 0; e < index_lists.size(); ++e) {
    const auto& list = index_lists[e];
    if (list.empty()) {
      fail(ErrorCode::kEmptyIndexList, fmt::format("no rows to pool for '{}'", output_ids[e]));
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    for (Index r : list) {
      if (r >= emb.rows()) {
        fail(ErrorCode::kInvalidArgument, fmt::format("row {} out of range for '{}'", r, output_ids[e]));
      }
      auto row = emb.row(r);
      for (std::size_t j = 0; j < d; ++j) acc[j] += row[j];
    }
    const double n = static_cast<double>(list.size());
    for (std::size_t j = 0; j < d; ++j) values[e * d + j] = static_cast<float>(acc[j] / n);
  }
  return EmbeddingMatrix(std::move(output_ids), std::move(values), d, std::move(source_tag));
}

}  // namespace simaug
