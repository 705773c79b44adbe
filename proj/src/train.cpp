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
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/eval.hpp"
#include "simaug/recsys.hpp"
#include "simaug/rng.hpp"

namespace simaug {
namespace {

// Uniform over items the user has not interacted with in train.
Index sample_negative(const InteractionSet& train, Index user, Rng& rng) {
  const std::size_t items = train.num_items();
  for (;;) {
    const auto i = static_cast<Index>(rng.below(items));
    if (!train.has_edge(user, i)) return i;
  }
}

void split_final(const Matrix& final, std::size_t num_users, Matrix& users, Matrix& items) {
  users = Matrix(num_users, final.cols);
  items = Matrix(final.rows - num_users, final.cols);
  const auto cut = final.data.begin() + static_cast<std::ptrdiff_t>(num_users * final.cols);
  std::copy(final.data.begin(), cut, users.data.begin());
  std::copy(cut, final.data.end(), items.data.begin());
}

}  // namespace

TrainedModel train(const SplitDataset& split, const ModelConfig& config,
                   const ContentFeatures* content) {
  config.validate();
  const InteractionSet& data = split.train;
  if (data.empty()) fail(ErrorCode::kEmptyDataset, "training set has no interactions");
  if (config.early_stopping && split.validation.empty()) {
    fail(ErrorCode::kConfig, "early stopping needs a non-empty validation split");
  }

  const NormalizedAdjacency adj = build_adjacency(data);
  const LightGcn model(config, adj, content);
  Parameters params = model.init_parameters();
  Optimizer opt(config.optimizer, config.learning_rate);

  // Users whose every item is in train cannot draw a negative.
  std::vector<Edge> positives;
  positives.reserve(data.num_edges());
  for (const Edge& e : data.edges()) {
    if (data.user_degree(e.user) < data.num_items()) positives.push_back(e);
  }
  if (positives.empty()) fail(ErrorCode::kEmptyDataset, "no user has an unobserved item to sample");

  TrainedModel out;
  out.config = config;
  double best = -1.0;
  std::size_t since_best = 0;
  std::vector<Triple> batch;
  batch.reserve(config.batch_size);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const std::uint64_t epoch_seed = stream_seed(config.seed, epoch);
    Rng order_rng(epoch_seed);
    shuffle(std::span<Edge>(positives), order_rng);

    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t begin = 0; begin < positives.size(); begin += config.batch_size) {
      const std::size_t end = std::min(positives.size(), begin + config.batch_size);
      Rng neg_rng(stream_seed(epoch_seed, batches + 1));
      batch.clear();
      for (std::size_t k = begin; k < end; ++k) {
        const Edge& e = positives[k];
        batch.push_back({e.user, e.item, sample_negative(data, e.user, neg_rng)});
      }
      loss_sum += bpr_step(model, params, opt, batch);
      ++batches;
    }

    double val_recall = 0.0;
    if (!split.validation.empty()) {
      Matrix fu, fi;
      split_final(model.final_embeddings(params), data.num_users(), fu, fi);
      const auto rankings = rank_users(fu, fi, data, split.validation, config.eval_cutoff, config.threads);
      val_recall = metrics_at_n(rankings, split.validation, config.eval_cutoff).recall;
    }
    out.log.push_back({epoch, loss_sum / static_cast<double>(batches), val_recall});

    if (!config.early_stopping) {
      out.params = params;
      out.best_epoch = epoch;
      continue;
    }
    if (val_recall > best) {
      best = val_recall;
      out.params = params;
      out.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }

  const Matrix final = propagate(adj, assemble_embeddings(config.variant, out.params, content),
                                 config.num_layers, config.threads);
  split_final(final, data.num_users(), out.final_user, out.final_item);
  return out;
}

EmbeddingMatrix to_embedding_matrix(const Matrix& m, const std::vector<std::string>& ids,
                                    const std::string& tag) {
  if (ids.size() != m.rows) fail(ErrorCode::kMisaligned, "row count differs from id count");
  std::vector<float> values(m.data.size());
  std::transform(m.data.begin(), m.data.end(), values.begin(),
                 [](double x) { return static_cast<float>(x); });
  return EmbeddingMatrix(ids, std::move(values), m.cols, tag);
}

void export_item_embeddings(const TrainedModel& model, const InteractionSet& train,
                            const std::filesystem::path& prefix) {
  const auto emb = to_embedding_matrix(model.final_item, train.item_ids(), "recommender-export");
  save_embeddings(emb, semb_ids_path(prefix), semb_matrix_path(prefix));
}

void write_training_log(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  out << fmt::format("epoch,loss,valRecall@{}\n", model.config.eval_cutoff);
  for (const EpochLog& e : model.log) out << fmt::format("{},{:.17g},{:.17g}\n", e.epoch, e.loss, e.val_recall);
  if (!out) fail(ErrorCode::kIo, fmt::format("failed writing {}", path.string()));
}

void save_checkpoint(const TrainedModel& model, const InteractionSet& train,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto users = to_embedding_matrix(model.final_user, train.user_ids(), "recommender-user");
  save_embeddings(users, semb_ids_path(dir / "users"), semb_matrix_path(dir / "users"));
  export_item_embeddings(model, train, dir / "items");

  nlohmann::json meta{{"config", to_json(model.config)},
                      {"bestEpoch", model.best_epoch},
                      {"epochsRun", model.log.size()}};
  std::ofstream out(dir / "model.json");
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", (dir / "model.json").string()));
  out << meta.dump(2) << '\n';
  write_training_log(model, dir / "training_log.csv");
}

}  // namespace simaug
