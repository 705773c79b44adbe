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

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/kernels.hpp"
#include "simaug/recsys.hpp"
#include "simaug/rng.hpp"

namespace simaug {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::kIdOnly: return "id-only";
    case Variant::kContentOnly: return "content-only";
    case Variant::kContentIdAdd: return "content-id-add";
    case Variant::kContentIdCat: return "content-id-cat";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "id-only") return Variant::kIdOnly;
  if (name == "content-only") return Variant::kContentOnly;
  if (name == "content-id-add") return Variant::kContentIdAdd;
  if (name == "content-id-cat") return Variant::kContentIdCat;
  fail(ErrorCode::kInvalidArgument, fmt::format("unknown model variant '{}'", name));
}

std::string_view to_string(OptimizerKind o) { return o == OptimizerKind::kAdam ? "adam" : "sgd"; }

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "sgd") return OptimizerKind::kSgd;
  fail(ErrorCode::kInvalidArgument, fmt::format("unknown optimizer '{}'", name));
}

void ModelConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::kConfig, fmt::format("model config: {}", what));
  };
  require(embedding_dim > 0, "embedding dimension must be positive");
  require(learning_rate > 0.0, "learning rate must be positive");
  require(l2_weight >= 0.0, "l2 weight must be non-negative");
  require(batch_size > 0, "batch size must be positive");
  require(max_epochs > 0, "max epochs must be positive");
  require(patience > 0, "patience must be positive");
  require(init_std > 0.0, "init std must be positive");
  require(eval_cutoff > 0, "evaluation cutoff must be positive");
}

nlohmann::json to_json(const ModelConfig& c) {
  return {{"embeddingDim", c.embedding_dim}, {"numLayers", c.num_layers},
          {"learningRate", c.learning_rate}, {"l2Weight", c.l2_weight},
          {"batchSize", c.batch_size},       {"maxEpochs", c.max_epochs},
          {"patience", c.patience},          {"earlyStopping", c.early_stopping},
          {"seed", c.seed},                  {"variant", to_string(c.variant)},
          {"optimizer", to_string(c.optimizer)}, {"initStd", c.init_std},
          {"evalCutoff", c.eval_cutoff}};
}

ModelConfig model_config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.embedding_dim = j.at("embeddingDim").get<std::size_t>();
  c.num_layers = j.at("numLayers").get<std::size_t>();
  c.learning_rate = j.at("learningRate").get<double>();
  c.l2_weight = j.at("l2Weight").get<double>();
  c.batch_size = j.at("batchSize").get<std::size_t>();
  c.max_epochs = j.at("maxEpochs").get<std::size_t>();
  c.patience = j.at("patience").get<std::size_t>();
  c.early_stopping = j.value("earlyStopping", true);
  c.seed = j.at("seed").get<std::uint64_t>();
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.optimizer = parse_optimizer(j.value("optimizer", std::string("adam")));
  c.init_std = j.value("initStd", 0.1);
  c.eval_cutoff = j.value("evalCutoff", std::size_t{20});
  return c;
}

ContentFeatures ContentFeatures::from_embeddings(const EmbeddingMatrix& user_content,
                                                 const EmbeddingMatrix& item_content) {
  if (user_content.dim() != item_content.dim()) {
    fail(ErrorCode::kInvalidArgument, "user and item content widths differ");
  }
  ContentFeatures f;
  f.rows = Matrix(user_content.rows() + item_content.rows(), item_content.dim());
  auto copy = [&](const EmbeddingMatrix& m, std::size_t offset) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto src = m.row(r);
      std::copy(src.begin(), src.end(), f.rows.row(offset + r).begin());
    }
  };
  copy(user_content, 0);
  copy(item_content, user_content.rows());
  return f;
}

namespace {

bool uses_ids(Variant v) { return v != Variant::kContentOnly; }
bool uses_content(Variant v) { return v != Variant::kIdOnly; }

// out = C * P
Matrix project(const Matrix& content, const Matrix& projection) {
  Matrix out(content.rows, projection.cols);
  for (std::size_t n = 0; n < content.rows; ++n) {
    double* dst = out.row(n).data();
    for (std::size_t k = 0; k < content.cols; ++k) {
      const double c = content(n, k);
      if (c != 0.0) kernels::axpy(c, projection.row(k).data(), dst, projection.cols);
    }
  }
  return out;
}

// grad_P += C^T * G restricted to columns [col0, col0 + grad_P.cols) of G
void project_transpose(const Matrix& content, const Matrix& g, std::size_t col0, Matrix& grad_p) {
  for (std::size_t n = 0; n < content.rows; ++n) {
    const double* src = g.row(n).data() + col0;
    for (std::size_t k = 0; k < content.cols; ++k) {
      const double c = content(n, k);
      if (c != 0.0) kernels::axpy(c, src, grad_p.row(k).data(), grad_p.cols);
    }
  }
}

void check_content(Variant variant, const ContentFeatures* content, std::size_t rows) {
  if (!uses_content(variant)) return;
  if (content == nullptr || content->rows.empty()) {
    fail(ErrorCode::kConfig, fmt::format("variant {} needs content features", to_string(variant)));
  }
  if (rows != 0 && content->rows.rows != rows) {
    fail(ErrorCode::kMisaligned,
         fmt::format("content has {} rows, model has {}", content->rows.rows, rows));
  }
}

}  // namespace

Matrix assemble_embeddings(Variant variant, const Parameters& params,
                           const ContentFeatures* content) {
  if (variant == Variant::kIdOnly) return params.ids;
  check_content(variant, content, params.ids.rows);
  if (params.projection.rows != content->dim()) {
    fail(ErrorCode::kMisaligned, "projection input width does not match content width");
  }
  Matrix projected = project(content->rows, params.projection);
  switch (variant) {
    case Variant::kContentOnly:
      return projected;
    case Variant::kContentIdAdd:
      if (params.ids.cols != projected.cols) {
        fail(ErrorCode::kMisaligned, "id and projected content widths differ");
      }
      for (std::size_t k = 0; k < projected.data.size(); ++k) projected.data[k] += params.ids.data[k];
      return projected;
    case Variant::kContentIdCat: {
      Matrix out(projected.rows, params.ids.cols + projected.cols);
      for (std::size_t n = 0; n < out.rows; ++n) {
        auto dst = out.row(n);
        auto id = params.ids.row(n);
        auto pc = projected.row(n);
        std::copy(id.begin(), id.end(), dst.begin());
        std::copy(pc.begin(), pc.end(), dst.begin() + static_cast<std::ptrdiff_t>(id.size()));
      }
      return out;
    }
    case Variant::kIdOnly:
      break;
  }
  return params.ids;
}

double softplus_neg(double x) {
  if (x > 0.0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

namespace {

// d/dx softplus_neg(x) = -sigma(-x)
double softplus_neg_grad(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(x));
}

}  // namespace

LightGcn::LightGcn(const ModelConfig& config, const NormalizedAdjacency& adj,
                   const ContentFeatures* content)
    : config_(config), adj_(&adj), content_(content) {
  config_.validate();
  check_content(config_.variant, content_, adj.num_nodes());
}

Parameters LightGcn::init_parameters() const {
  Parameters p;
  Rng rng(stream_seed(config_.seed, "init"));
  const std::size_t d = config_.embedding_dim;
  if (uses_ids(config_.variant)) {
    p.ids = Matrix(adj_->num_nodes(), d);
    for (double& x : p.ids.data) x = config_.init_std * rng.normal();
  }
  if (uses_content(config_.variant)) {
    const std::size_t c = content_->dim();
    p.projection = Matrix(c, d);
    const double std = 1.0 / std::sqrt(static_cast<double>(c));
    for (double& x : p.projection.data) x = std * rng.normal();
  }
  return p;
}

Matrix LightGcn::final_embeddings(const Parameters& params) const {
  return propagate(*adj_, assemble_embeddings(config_.variant, params, content_),
                   config_.num_layers, config_.threads);
}

namespace {

void check_batch(std::span<const Triple> batch, std::size_t nu, std::size_t ni) {
  if (batch.empty()) fail(ErrorCode::kInvalidArgument, "empty training batch");
  for (const Triple& t : batch) {
    if (t.user >= nu || t.positive >= ni || t.negative >= ni) {
      fail(ErrorCode::kInvalidArgument,
           fmt::format("triple ({}, {}, {}) outside {} users x {} items", t.user, t.positive,
                       t.negative, nu, ni));
    }
  }
}

}  // namespace

double LightGcn::loss(const Parameters& params, std::span<const Triple> batch) const {
  check_batch(batch, adj_->num_users(), adj_->num_items());
  const Matrix layer0 = assemble_embeddings(config_.variant, params, content_);
  const Matrix final = propagate(*adj_, layer0, config_.num_layers, config_.threads);
  const std::size_t nu = adj_->num_users();
  const std::size_t d = final.cols;
  double total = 0.0;
  for (const Triple& t : batch) {
    const double* eu = final.row(t.user).data();
    const double x = kernels::dot(eu, final.row(nu + t.positive).data(), d) -
                     kernels::dot(eu, final.row(nu + t.negative).data(), d);
    double reg = 0.0;
    for (std::size_t node : {std::size_t{t.user}, nu + t.positive, nu + t.negative}) {
      const double* r = layer0.row(node).data();
      reg += kernels::dot(r, r, d);
    }
    total += softplus_neg(x) + config_.l2_weight * reg;
  }
  return total / static_cast<double>(batch.size());
}

double LightGcn::loss_and_gradient(const Parameters& params, std::span<const Triple> batch,
                                   Parameters& grad) const {
  check_batch(batch, adj_->num_users(), adj_->num_items());
  const Matrix layer0 = assemble_embeddings(config_.variant, params, content_);
  const Matrix final = propagate(*adj_, layer0, config_.num_layers, config_.threads);
  const std::size_t nu = adj_->num_users();
  const std::size_t d = final.cols;
  const double inv_b = 1.0 / static_cast<double>(batch.size());

  Matrix g_final(final.rows, d);
  Matrix g_reg(final.rows, d);
  std::vector<double> diff(d);
  double total = 0.0;
  for (const Triple& t : batch) {
    const std::size_t u = t.user, p = nu + t.positive, n = nu + t.negative;
    const double* eu = final.row(u).data();
    const double* ep = final.row(p).data();
    const double* en = final.row(n).data();
    const double x = kernels::dot(eu, ep, d) - kernels::dot(eu, en, d);
    double reg = 0.0;
    for (std::size_t node : {u, p, n}) {
      const double* r = layer0.row(node).data();
      reg += kernels::dot(r, r, d);
      kernels::axpy(2.0 * config_.l2_weight * inv_b, r, g_reg.row(node).data(), d);
    }
    total += softplus_neg(x) + config_.l2_weight * reg;

    const double g = softplus_neg_grad(x) * inv_b;
    for (std::size_t k = 0; k < d; ++k) diff[k] = ep[k] - en[k];
    kernels::axpy(g, diff.data(), g_final.row(u).data(), d);
    kernels::axpy(g, eu, g_final.row(p).data(), d);
    kernels::axpy(-g, eu, g_final.row(n).data(), d);
  }

  Matrix g0 = propagate(*adj_, g_final, config_.num_layers, config_.threads);
  for (std::size_t k = 0; k < g0.data.size(); ++k) g0.data[k] += g_reg.data[k];

  grad = Parameters{};
  const std::size_t width = config_.embedding_dim;
  switch (config_.variant) {
    case Variant::kIdOnly:
      grad.ids = std::move(g0);
      break;
    case Variant::kContentOnly:
      grad.projection = Matrix(params.projection.rows, width);
      project_transpose(content_->rows, g0, 0, grad.projection);
      break;
    case Variant::kContentIdAdd:
      grad.projection = Matrix(params.projection.rows, width);
      project_transpose(content_->rows, g0, 0, grad.projection);
      grad.ids = std::move(g0);
      break;
    case Variant::kContentIdCat:
      grad.projection = Matrix(params.projection.rows, width);
      project_transpose(content_->rows, g0, width, grad.projection);
      grad.ids = Matrix(g0.rows, width);
      for (std::size_t r = 0; r < g0.rows; ++r) {
        auto src = g0.row(r);
        std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(width), grad.ids.row(r).begin());
      }
      break;
  }
  return total * inv_b;
}

void Optimizer::step(Parameters& params, const Parameters& grad) {
  ++t_;
  auto p_blocks = params.blocks();
  auto g_blocks = grad.blocks();
  auto m_blocks = m_.blocks();
  auto v_blocks = v_.blocks();
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
  for (std::size_t b = 0; b < p_blocks.size(); ++b) {
    Matrix& p = *p_blocks[b];
    const Matrix& g = *g_blocks[b];
    if (p.empty()) continue;
    if (g.data.size() != p.data.size()) fail(ErrorCode::kInvalidArgument, "gradient shape mismatch");
    if (kind_ == OptimizerKind::kSgd) {
      kernels::axpy(-lr_, g.data.data(), p.data.data(), p.data.size());
      continue;
    }
    Matrix& m = *m_blocks[b];
    Matrix& v = *v_blocks[b];
    if (m.empty()) {
      m = Matrix(p.rows, p.cols);
      v = Matrix(p.rows, p.cols);
    }
    for (std::size_t k = 0; k < p.data.size(); ++k) {
      const double gk = g.data[k];
      m.data[k] = kBeta1 * m.data[k] + (1.0 - kBeta1) * gk;
      v.data[k] = kBeta2 * v.data[k] + (1.0 - kBeta2) * gk * gk;
      const double mhat = m.data[k] / c1;
      const double vhat = v.data[k] / c2;
      p.data[k] -= lr_ * mhat / (std::sqrt(vhat) + kEps);
    }
  }
}

double TrainedModel::score(Index user, Index item) const {
  return kernels::dot(final_user.row(user).data(), final_item.row(item).data(), final_user.cols);
}

double bpr_step(const LightGcn& model, Parameters& params, Optimizer& opt,
                std::span<const Triple> batch) {
  Parameters grad;
  const double loss = model.loss_and_gradient(params, batch, grad);
  if (!std::isfinite(loss)) {
    fail(ErrorCode::kNonFiniteLoss,
         fmt::format("BPR loss became {} (learning rate {}); check the data and learning rate",
                     loss, model.config().learning_rate));
  }
  opt.step(params, grad);
  return loss;
}

}  // namespace simaug
