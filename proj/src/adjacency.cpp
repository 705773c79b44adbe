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

#include "simaug/error.hpp"
#include "simaug/kernels.hpp"
#include "simaug/recsys.hpp"

namespace simaug {

NormalizedAdjacency NormalizedAdjacency::build(const InteractionSet& train) {
  if (train.empty()) fail(ErrorCode::kEmptyDataset, "cannot build adjacency of an empty set");
  NormalizedAdjacency adj;
  adj.num_users_ = train.num_users();
  adj.num_items_ = train.num_items();
  const std::size_t nu = adj.num_users_;
  adj.offsets_.assign(adj.num_nodes() + 1, 0);
  adj.cols_.reserve(2 * train.num_edges());
  adj.weights_.reserve(2 * train.num_edges());

  auto inv_sqrt_deg = [](std::size_t d) { return 1.0 / std::sqrt(static_cast<double>(d)); };
  for (Index u = 0; u < nu; ++u) {
    const double du = inv_sqrt_deg(train.user_degree(u));
    for (Index i : train.items_of(u)) {
      adj.cols_.push_back(static_cast<Index>(nu + i));
      adj.weights_.push_back(du * inv_sqrt_deg(train.item_degree(i)));
    }
    adj.offsets_[u + 1] = adj.cols_.size();
  }
  for (Index i = 0; i < adj.num_items_; ++i) {
    const auto users = train.users_of(i);
    if (!users.empty()) {
      const double di = inv_sqrt_deg(users.size());
      for (Index u : users) {
        adj.cols_.push_back(u);
        // Same operand order as the user side keeps the matrix exactly symmetric.
        adj.weights_.push_back(inv_sqrt_deg(train.user_degree(u)) * di);
      }
    }
    adj.offsets_[nu + i + 1] = adj.cols_.size();
  }
  return adj;
}

NormalizedAdjacency build_adjacency(const InteractionSet& train) {
  return NormalizedAdjacency::build(train);
}

double NormalizedAdjacency::weight(Index user, Index item) const {
  auto nb = neighbors(user);
  auto target = static_cast<Index>(num_users_ + item);
  auto it = std::lower_bound(nb.begin(), nb.end(), target);
  if (it == nb.end() || *it != target) return 0.0;
  return weights(user)[static_cast<std::size_t>(it - nb.begin())];
}

void NormalizedAdjacency::multiply(const Matrix& in, Matrix& out, std::size_t threads) const {
  if (in.rows != num_nodes()) fail(ErrorCode::kInvalidArgument, "adjacency/embedding row mismatch");
  out.rows = in.rows;
  out.cols = in.cols;
  out.data.assign(in.data.size(), 0.0);
  const std::size_t d = in.cols;
  auto rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      double* dst = out.data.data() + v * d;
      auto nb = neighbors(v);
      auto w = weights(v);
      for (std::size_t e = 0; e < nb.size(); ++e) {
        kernels::axpy(w[e], in.data.data() + static_cast<std::size_t>(nb[e]) * d, dst, d);
      }
    }
  };
  const std::size_t n = num_nodes();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, n));
  if (threads == 1) {
    rows(0, n);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(rows, n * t / threads, n * (t + 1) / threads);
}

Matrix propagate(const NormalizedAdjacency& adj, const Matrix& layer0, std::size_t layers,
                 std::size_t threads) {
  Matrix acc = layer0;
  Matrix cur = layer0;
  Matrix next;
  for (std::size_t l = 0; l < layers; ++l) {
    adj.multiply(cur, next, threads);
    for (std::size_t k = 0; k < acc.data.size(); ++k) acc.data[k] += next.data[k];
    std::swap(cur, next);
  }
  const double count = static_cast<double>(layers + 1);
  for (double& x : acc.data) x /= count;
  return acc;
}

}  // namespace simaug
