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

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "simaug/augment.hpp"
#include "simaug/corpus.hpp"
#include "simaug/error.hpp"
#include "simaug/eval.hpp"
#include "simaug/kernels.hpp"
#include "simaug/partition.hpp"
#include "simaug/pipeline.hpp"
#include "simaug/recsys.hpp"
#include "simaug/simvec.hpp"
#include "simaug/synth.hpp"

namespace {

using namespace simaug;
namespace fs = std::filesystem;

struct Ratios {
  double train = 0.8, validation = 0.1, test = 0.1;
  SplitRatios get() const { return {train, validation, test}; }
};

void add_ratios(CLI::App* app, Ratios& r) {
  app->add_option("--train-ratio", r.train, "train fraction")->capture_default_str();
  app->add_option("--val-ratio", r.validation, "validation fraction")->capture_default_str();
  app->add_option("--test-ratio", r.test, "test fraction")->capture_default_str();
}

// Model options shared by train, pipeline and sweep-k.
struct ModelOptions {
  ModelConfig config;
  std::string variant = "id-only";
  std::string optimizer = "adam";

  void add(CLI::App* app) {
    app->add_option("--dim", config.embedding_dim, "embedding dimension")->capture_default_str();
    app->add_option("--layers", config.num_layers, "propagation layers")->capture_default_str();
    app->add_option("--lr", config.learning_rate, "learning rate")->capture_default_str();
    app->add_option("--l2", config.l2_weight, "L2 weight")->capture_default_str();
    app->add_option("--batch-size", config.batch_size)->capture_default_str();
    app->add_option("--max-epochs", config.max_epochs)->capture_default_str();
    app->add_option("--patience", config.patience)->capture_default_str();
    app->add_option("--early-stopping", config.early_stopping)->capture_default_str();
    app->add_option("--variant", variant, "id-only|content-only|content-id-add|content-id-cat")
        ->capture_default_str();
    app->add_option("--optimizer", optimizer, "adam|sgd")->capture_default_str();
    app->add_option("--init-std", config.init_std)->capture_default_str();
    app->add_option("--threads", config.threads, "threads for propagation")->capture_default_str();
  }

  ModelConfig resolve() {
    config.variant = parse_variant(variant);
    config.optimizer = parse_optimizer(optimizer);
    return config;
  }
};

struct RunOptions {
  RunConfig config;
  Ratios ratios;
  ModelOptions model;
  std::string align = "drop";
  std::string similarity = "cosine";
  std::vector<std::string> arms;

  void add(CLI::App* app) {
    app->add_option("--interactions", config.interactions, "interaction file")->required();
    app->add_option("--delimiter", config.delimiter, "whitespace|tab|comma")->capture_default_str();
    app->add_option("--item-embeddings", config.item_embeddings, "SEMB prefix (<prefix>.ids, <prefix>.semb)");
    app->add_option("--align", align, "error|drop")->capture_default_str();
    app->add_option("--kcore", config.k_core, "k-core threshold (0 skips)")->capture_default_str();
    add_ratios(app, ratios);
    app->add_option("--split-seed", config.split_seed)->capture_default_str();
    app->add_option("--active-fraction", config.active_fraction)->capture_default_str();
    app->add_option("--popular-fraction", config.popular_fraction)->capture_default_str();
    app->add_option("--arms", arms, "simaug-item, aug-random, aug-rec, simaug-user")->delimiter(',');
    app->add_option("--pool-k", config.pool_k, "per-source top-k pool")->capture_default_str();
    app->add_option("--per-user", config.per_user, "augmented items per inactive user")->capture_default_str();
    app->add_option("--similarity", similarity, "cosine|dot")->capture_default_str();
    model.add(app);
    app->add_option("--seeds", config.seeds, "model and augmentation seeds")->delimiter(',');
    app->add_option("--cutoff", config.cutoff, "N for metrics@N")->capture_default_str();
    app->add_option("--workers", config.workers, "workers for search and ranking")->capture_default_str();
    app->add_option("--output", config.output_dir, "run directory")->required();
  }

  RunConfig resolve() {
    RunConfig c = config;
    c.ratios = ratios.get();
    c.model = model.resolve();
    c.model.eval_cutoff = c.cutoff;
    if (align == "drop") {
      c.align = AlignPolicy::kDrop;
    } else if (align == "error") {
      c.align = AlignPolicy::kError;
    } else {
      fail(ErrorCode::kConfig, fmt::format("unknown align policy '{}'", align));
    }
    c.measure = similarity == "dot" ? SimilarityMeasure::kDot : SimilarityMeasure::kCosine;
    if (similarity != "dot" && similarity != "cosine") {
      fail(ErrorCode::kConfig, fmt::format("unknown similarity '{}'", similarity));
    }
    c.arms.clear();
    for (const auto& a : arms) c.arms.push_back(parse_strategy(a));
    return c;
  }
};

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

EmbeddingMatrix load_prefix(const fs::path& prefix) {
  return load_embeddings(semb_ids_path(prefix), semb_matrix_path(prefix));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simaug: text-similarity augmentation for implicit-feedback recommendation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file; keys match option names under a [subcommand] section");
  std::string kernel_choice = "auto";
  app.add_option("--kernels", kernel_choice, "scalar|avx2|neon|auto")->capture_default_str();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "load an interaction log, report stats");
  fs::path ingest_in, ingest_out, ingest_stats;
  std::string ingest_delim = "whitespace";
  double ingest_pop = kDefaultPopularFraction;
  ingest->add_option("--input", ingest_in)->required();
  ingest->add_option("--delimiter", ingest_delim)->capture_default_str();
  ingest->add_option("--output", ingest_out, "normalized TSV");
  ingest->add_option("--stats", ingest_stats, "DatasetStats JSON");
  ingest->add_option("--popular-fraction", ingest_pop)->capture_default_str();

  // kcore
  auto* kcore = app.add_subcommand("kcore", "k-core filter");
  fs::path kcore_in, kcore_out;
  std::string kcore_delim = "whitespace";
  std::size_t kcore_k = 5;
  kcore->add_option("--input", kcore_in)->required();
  kcore->add_option("--delimiter", kcore_delim)->capture_default_str();
  kcore->add_option("-k", kcore_k)->capture_default_str();
  kcore->add_option("--output", kcore_out)->required();

  // split
  auto* split_cmd = app.add_subcommand("split", "per-user train/validation/test split");
  fs::path split_in, split_out;
  std::string split_delim = "whitespace";
  std::uint64_t split_seed = 0;
  Ratios split_ratios;
  split_cmd->add_option("--input", split_in)->required();
  split_cmd->add_option("--delimiter", split_delim)->capture_default_str();
  split_cmd->add_option("--seed", split_seed)->capture_default_str();
  add_ratios(split_cmd, split_ratios);
  split_cmd->add_option("--output", split_out, "split file")->required();

  // partition
  auto* part = app.add_subcommand("partition", "active/inactive users and popular/unpopular items");
  fs::path part_split, part_out;
  double part_active = kDefaultActiveFraction, part_pop = kDefaultPopularFraction;
  part->add_option("--split", part_split)->required();
  part->add_option("--active-fraction", part_active)->capture_default_str();
  part->add_option("--popular-fraction", part_pop)->capture_default_str();
  part->add_option("--output", part_out)->required();

  // gen-synth
  auto* synth = app.add_subcommand("gen-synth", "planted-structure synthetic dataset");
  SynthSpec synth_spec;
  fs::path synth_out;
  synth->add_option("--groups", synth_spec.groups)->capture_default_str();
  synth->add_option("--users-per-group", synth_spec.users_per_group)->capture_default_str();
  synth->add_option("--items-per-group", synth_spec.items_per_group)->capture_default_str();
  synth->add_option("--min-degree", synth_spec.min_user_degree)->capture_default_str();
  synth->add_option("--activity-sigma", synth_spec.activity_sigma)->capture_default_str();
  synth->add_option("--skew", synth_spec.popularity_skew)->capture_default_str();
  synth->add_option("--in-block", synth_spec.in_block)->capture_default_str();
  synth->add_option("--noise", synth_spec.noise)->capture_default_str();
  synth->add_option("--taste", synth_spec.taste)->capture_default_str();
  synth->add_option("--dim", synth_spec.dim)->capture_default_str();
  synth->add_option("--seed", synth_spec.seed)->capture_default_str();
  synth->add_option("--output", synth_out, "output directory")->required();

  // augment
  auto* aug_cmd = app.add_subcommand("augment", "synthesize interactions for inactive users");
  fs::path aug_split, aug_emb, aug_out;
  std::string aug_strategy = "simaug-item";
  AugmentationPlan aug_plan;
  std::size_t aug_budget = 0, aug_workers = 1;
  double aug_active = kDefaultActiveFraction, aug_pop = kDefaultPopularFraction;
  aug_cmd->add_option("--split", aug_split)->required();
  aug_cmd->add_option("--item-embeddings", aug_emb, "SEMB prefix (text or recommender export)");
  aug_cmd->add_option("--strategy", aug_strategy)->capture_default_str();
  aug_cmd->add_option("--pool-k", aug_plan.pool_k)->capture_default_str();
  aug_cmd->add_option("--per-user", aug_plan.per_user)->capture_default_str();
  aug_cmd->add_option("--seed", aug_plan.seed)->capture_default_str();
  auto* budget_opt = aug_cmd->add_option("--budget", aug_budget, "edge budget for simaug-user");
  aug_cmd->add_option("--active-fraction", aug_active)->capture_default_str();
  aug_cmd->add_option("--popular-fraction", aug_pop)->capture_default_str();
  aug_cmd->add_option("--workers", aug_workers)->capture_default_str();
  aug_cmd->add_option("--output", aug_out)->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "train the recommender on a split");
  fs::path train_split, train_aug, train_emb, train_out;
  ModelOptions train_model;
  std::uint64_t train_seed = 0;
  std::size_t train_cutoff = kDefaultCutoff;
  train_cmd->add_option("--split", train_split)->required();
  train_cmd->add_option("--augmented", train_aug, "augmented edges merged into train");
  train_cmd->add_option("--item-embeddings", train_emb, "content features for content variants");
  train_model.add(train_cmd);
  train_cmd->add_option("--seed", train_seed)->capture_default_str();
  train_cmd->add_option("--cutoff", train_cutoff, "N for validation Recall@N")->capture_default_str();
  train_cmd->add_option("--output", train_out, "checkpoint directory")->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint on the test split");
  fs::path eval_split, eval_model, eval_out;
  std::size_t eval_cutoff = kDefaultCutoff, eval_workers = 1;
  double eval_pop = kDefaultPopularFraction;
  eval_cmd->add_option("--split", eval_split)->required();
  eval_cmd->add_option("--model", eval_model, "checkpoint directory")->required();
  eval_cmd->add_option("--cutoff", eval_cutoff)->capture_default_str();
  eval_cmd->add_option("--popular-fraction", eval_pop)->capture_default_str();
  eval_cmd->add_option("--workers", eval_workers)->capture_default_str();
  eval_cmd->add_option("--output", eval_out, "metrics JSON");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "vanilla and augmentation arms end to end");
  pipe->fallthrough();
  RunOptions pipe_opts;
  pipe_opts.add(pipe);

  // sweep-k
  auto* sweep = app.add_subcommand("sweep-k", "Avg@N as a function of K");
  sweep->fallthrough();
  RunOptions sweep_opts;
  sweep_opts.add(sweep);
  std::vector<std::size_t> sweep_k;
  sweep->add_option("--k-values", sweep_k, "K values")->delimiter(',')->required();

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "density/utility correlation and degree table");
  std::vector<fs::path> an_stats, an_metrics;
  fs::path an_out, an_degrees;
  analyze_cmd->add_option("--stats", an_stats, "DatasetStats JSON per dataset")->required();
  analyze_cmd->add_option("--metrics", an_metrics, "metrics JSON per dataset, same order")->required();
  analyze_cmd->add_option("--output", an_out, "report JSON");
  analyze_cmd->add_option("--degrees", an_degrees, "degree table CSV");

  CLI11_PARSE(app, argc, argv);

  std::string stage = app.get_subcommands().front()->get_name();
  try {
    kernels::select(kernels::parse_backend(kernel_choice));

    if (*ingest) {
      const auto loaded = load_interactions(ingest_in, parse_delimiter(ingest_delim));
      const auto& set = loaded.set;
      if (!ingest_out.empty()) write_interactions(ingest_out, set);
      DatasetStats stats = degree_stats(set, partition_items(set, ingest_pop));
      nlohmann::json j = stats;
      j["duplicates"] = loaded.duplicates;
      if (!ingest_stats.empty()) write_json(ingest_stats, j);
      print_json(j);
    } else if (*kcore) {
      const auto loaded = load_interactions(kcore_in, parse_delimiter(kcore_delim));
      const auto core = k_core_filter(loaded.set, kcore_k);
      write_interactions(kcore_out, core);
      fmt::print("{} users, {} items, {} interactions (from {}, {}, {})\n", core.num_users(),
                 core.num_items(), core.num_edges(), loaded.set.num_users(), loaded.set.num_items(),
                 loaded.set.num_edges());
    } else if (*split_cmd) {
      const auto loaded = load_interactions(split_in, parse_delimiter(split_delim));
      const auto s = split(loaded.set, split_ratios.get(), split_seed);
      write_split(split_out, s);
      fmt::print("train {}, validation {}, test {} (fingerprint {:016x})\n", s.train.num_edges(),
                 s.validation.size(), s.test.size(), s.fingerprint());
    } else if (*part) {
      const auto s = read_split(part_split);
      const auto users = partition_users(s.train, part_active);
      const auto items = partition_items(s.train, part_pop);
      write_json(part_out, {{"users", to_json(users, s.train)}, {"items", to_json(items, s.train)}});
      fmt::print("{} active / {} inactive users, {} popular / {} unpopular items\n", users.active.size(),
                 users.inactive.size(), items.popular.size(), items.unpopular.size());
    } else if (*synth) {
      const auto data = generate_synthetic(synth_spec);
      write_synthetic(data, synth_out);
      fmt::print("{} users, {} items, {} interactions\n", data.interactions.num_users(),
                 data.interactions.num_items(), data.interactions.num_edges());
    } else if (*aug_cmd) {
      const auto s = read_split(aug_split);
      const auto users = partition_users(s.train, aug_active);
      const auto items = partition_items(s.train, aug_pop);
      aug_plan.strategy = parse_strategy(aug_strategy);
      if (budget_opt->count() > 0) aug_plan.edge_budget = aug_budget;
      const AugmentOptions opts{aug_workers};
      AugmentedEdges out;
      if (aug_plan.strategy == Strategy::kAugRandom) {
        out = aug_random(s.train, users, aug_plan.per_user, aug_plan.seed);
      } else {
        if (aug_emb.empty()) fail(ErrorCode::kConfig, "--item-embeddings is required for this strategy");
        const auto emb = align(load_prefix(aug_emb), s.train, AlignPolicy::kError).embeddings;
        if (aug_plan.strategy == Strategy::kSimAugUser) {
          out = simaug_user(s.train, users, items, user_text_embeddings(s.train, emb), aug_plan, opts);
        } else {
          out = simaug_item(s.train, users, items, emb, aug_plan, opts);
        }
      }
      write_augmented(aug_out, out, s.train);
      fmt::print("{} edges ({} short across {} entities)\n", out.size(), out.shortfall, out.short_entities);
    } else if (*train_cmd) {
      SplitDataset s = read_split(train_split);
      if (!train_aug.empty()) s.train = merge(s.train, read_augmented(train_aug, s.train));
      ModelConfig config = train_model.resolve();
      config.seed = train_seed;
      config.eval_cutoff = train_cutoff;
      std::optional<ContentFeatures> content;
      if (config.variant != Variant::kIdOnly) {
        if (train_emb.empty()) fail(ErrorCode::kConfig, "--item-embeddings is required for content variants");
        const auto emb = align(load_prefix(train_emb), s.train, AlignPolicy::kError).embeddings;
        content = ContentFeatures::from_embeddings(user_text_embeddings(s.train, emb), emb);
      }
      const auto model = train(s, config, content ? &*content : nullptr);
      save_checkpoint(model, s.train, train_out);
      fmt::print("{} epochs, best epoch {}\n", model.log.size(), model.best_epoch);
    } else if (*eval_cmd) {
      const auto s = read_split(eval_split);
      const auto users = select_rows(load_prefix(eval_model / "users"), s.train.user_ids());
      const auto items = select_rows(load_prefix(eval_model / "items"), s.train.item_ids());
      auto to_matrix = [](const EmbeddingMatrix& e) {
        Matrix m(e.rows(), e.dim());
        std::copy(e.values().begin(), e.values().end(), m.data.begin());
        return m;
      };
      const auto rankings = rank_users(to_matrix(users), to_matrix(items), s.train, s.test, eval_cutoff,
                                       eval_workers);
      nlohmann::json j{{"overall", metrics_at_n(rankings, s.test, eval_cutoff)},
                       {"groups", group_metrics(rankings, s.test, partition_items(s.train, eval_pop),
                                                eval_cutoff)},
                       {"splitFingerprint", fmt::format("{:016x}", s.fingerprint())}};
      if (!eval_out.empty()) write_json(eval_out, j);
      print_json(j);
    } else if (*pipe) {
      const auto result = cmd_pipeline(pipe_opts.resolve());
      for (const auto& arm : result.arms) {
        fmt::print("{:<12} Avg@N {:.4f}  Recall@N {:.4f}  fairness {}\n", arm.name, arm.mean_overall.avg,
                   arm.mean_overall.recall,
                   arm.mean_groups.fairness ? fmt::format("{:.2f}%", *arm.mean_groups.fairness) : "n/a");
      }
    } else if (*sweep) {
      const auto rows = cmd_sweep_k(sweep_opts.resolve(), sweep_k);
      for (const auto& r : rows) fmt::print("K={:<4} {:<12} Avg@N {:.4f}\n", r.per_user, r.arm, r.mean_overall.avg);
    } else if (*analyze_cmd) {
      if (an_stats.size() != an_metrics.size()) {
        fail(ErrorCode::kConfig, "--stats and --metrics need the same number of files");
      }
      std::vector<std::pair<fs::path, fs::path>> pairs;
      for (std::size_t k = 0; k < an_stats.size(); ++k) pairs.emplace_back(an_stats[k], an_metrics[k]);
      const auto report = cmd_analyze(pairs);
      if (!an_out.empty()) write_json(an_out, to_json(report));
      if (!an_degrees.empty()) write_degree_csv(an_degrees, report);
      print_json(to_json(report));
    }
  } catch (const Error& e) {
    fmt::print(stderr, "simaug {}: {} error: {}\n", stage, to_string(e.code()), e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "simaug {}: {}\n", stage, e.what());
    return 2;
  }
  return 0;
}
