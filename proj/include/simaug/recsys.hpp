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
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "simaug/corpus.hpp"
#include "simaug/simvec.hpp"

namespace simaug {

// Dense row-major double matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  bool empty() const { return data.empty(); }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

enum class Variant { kIdOnly, kContentOnly, kContentIdAdd, kContentIdCat };
enum class OptimizerKind { kAdam, kSgd };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);
std::string_view to_string(OptimizerKind o);
OptimizerKind parse_optimizer(std::string_view name);

struct ModelConfig {
  std::size_t embedding_dim = 64;
  std::size_t num_layers = 2;
  double learning_rate = 1e-4;
  double l2_weight = 1e-4;
  std::size_t batch_size = 2048;
  std::size_t max_epochs = 1000;
  std::size_t patience = 50;
  bool early_stopping = true;
  std::uint64_t seed = 0;
  Variant variant = Variant::kIdOnly;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  double init_std = 0.1;
  std::size_t eval_cutoff = 20;  // validation Recall@N used for early stopping
  std::size_t threads = 1;

  void validate() const;
  // Width of propagated embeddings: 2d for the concatenation variant.
  std::size_t effective_dim() const {
    return variant == Variant::kContentIdCat ? 2 * embedding_dim : embedding_dim;
  }
};

nlohmann::json to_json(const ModelConfig& c);
ModelConfig model_config_from_json(const nlohmann::json& j);

// Symmetric-normalized bipartite adjacency over users (0..U-1) followed by
// items (U..U+I-1), in CSR form. Edge (u, i) weighs 1/sqrt(deg(u) deg(i)).
class NormalizedAdjacency {
 public:
  static NormalizedAdjacency build(const InteractionSet& train);

  std::size_t num_users() const { return num_users_; }
  std::size_t num_items() const { return num_items_; }
  std::size_t num_nodes() const { return num_users_ + num_items_; }
  std::size_t nnz() const { return cols_.size(); }

  std::span<const Index> neighbors(std::size_t node) const {
    return {cols_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }
  std::span<const double> weights(std::size_t node) const {
    return {weights_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }
  // Zero when (u, i) is not an edge.
  double weight(Index user, Index item) const;

  // out = A * in; rows are independent, so any thread count gives the same bits.
  void multiply(const Matrix& in, Matrix& out, std::size_t threads = 1) const;

 private:
  std::size_t num_users_ = 0;
  std::size_t num_items_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> cols_;
  std::vector<double> weights_;
};

NormalizedAdjacency build_adjacency(const InteractionSet& train);

// Layer mean (1/(L+1)) * sum_{l=0..L} A^l E0. The operator is self-adjoint
// because A is symmetric, so the same call back-propagates gradients.
Matrix propagate(const NormalizedAdjacency& adj, const Matrix& layer0, std::size_t layers,
                 std::size_t threads = 1);

// Frozen text features stacked as users then items, plus their width.
struct ContentFeatures {
  Matrix rows;  // (U + I) x contentDim

  static ContentFeatures from_embeddings(const EmbeddingMatrix& user_content,
                                         const EmbeddingMatrix& item_content);
  std::size_t dim() const { return rows.cols; }
};

// Learnable parameters. Unused blocks stay empty for a given variant.
struct Parameters {
  Matrix ids;         // (U + I) x d, users first
  Matrix projection;  // contentDim x d

  std::vector<Matrix*> blocks() { return {&ids, &projection}; }
  std::vector<const Matrix*> blocks() const { return {&ids, &projection}; }
  friend bool operator==(const Parameters&, const Parameters&) = default;
};

// Layer-0 embeddings (U + I rows) for a variant.
Matrix assemble_embeddings(Variant variant, const Parameters& params,
                           const ContentFeatures* content);

struct Triple {
  Index user;
  Index positive;
  Index negative;
};

// -ln sigma(x) computed without overflow.
double softplus_neg(double x);

// Embedding-propagation recommender trained with the BPR objective
//   mean_b [ -ln sigma(s(u,i+) - s(u,i-)) + l2 * (|e_u|^2 + |e_i+|^2 + |e_i-|^2) ]
// where the regularized rows are the layer-0 embeddings touched by the batch.
class LightGcn {
 public:
  LightGcn(const ModelConfig& config, const NormalizedAdjacency& adj,
           const ContentFeatures* content);

  Parameters init_parameters() const;
  Matrix final_embeddings(const Parameters& params) const;

  double loss(const Parameters& params, std::span<const Triple> batch) const;
  // Returns the loss and overwrites `grad` with its gradient.
  double loss_and_gradient(const Parameters& params, std::span<const Triple> batch,
                           Parameters& grad) const;

  const ModelConfig& config() const { return config_; }

 private:
  ModelConfig config_;
  const NormalizedAdjacency* adj_;
  const ContentFeatures* content_;
};

class Optimizer {
 public:
  Optimizer(OptimizerKind kind, double learning_rate) : kind_(kind), lr_(learning_rate) {}
  void step(Parameters& params, const Parameters& grad);

 private:
  OptimizerKind kind_;
  double lr_;
  std::size_t t_ = 0;
  Parameters m_, v_;
};

struct EpochLog {
  std::size_t epoch;
  double loss;
  double val_recall;
};

struct TrainedModel {
  Parameters params;      // best-validation layer-0 parameters
  Matrix final_user;      // propagated embeddings used for scoring
  Matrix final_item;
  ModelConfig config;
  std::vector<EpochLog> log;
  std::size_t best_epoch = 0;

  double score(Index user, Index item) const;
};

// One optimizer step; throws kNonFiniteLoss when the loss diverges.
double bpr_step(const LightGcn& model, Parameters& params, Optimizer& opt,
                std::span<const Triple> batch);

TrainedModel train(const SplitDataset& split, const ModelConfig& config,
                   const ContentFeatures* content = nullptr);

// Writes final item rows as an SEMB pair tagged "recommender-export".
void export_item_embeddings(const TrainedModel& model, const InteractionSet& train,
                            const std::filesystem::path& prefix);
EmbeddingMatrix to_embedding_matrix(const Matrix& m, const std::vector<std::string>& ids,
                                    const std::string& tag);

// SEMB pair per table, JSON config sidecar, CSV training log.
void save_checkpoint(const TrainedModel& model, const InteractionSet& train,
                     const std::filesystem::path& dir);
void write_training_log(const TrainedModel& model, const std::filesystem::path& path);

}  // namespace simaug
