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
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "simaug/error.hpp"
#include "simaug/pipeline.hpp"

namespace simaug {
namespace {

std::string hex(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::string measure_name(SimilarityMeasure m) { return m == SimilarityMeasure::kCosine ? "cosine" : "dot"; }

std::string align_name(AlignPolicy p) { return p == AlignPolicy::kDrop ? "drop" : "error"; }

bool uses_text(Strategy s) { return s == Strategy::kSimAugItem || s == Strategy::kSimAugUser; }

// Re-raises library errors with the failing stage prefixed.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("[{}] {}", name, e.what()));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kIo, fmt::format("[{}] {}", name, e.what()));
  }
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out = "[";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    if constexpr (std::is_same_v<T, Strategy>) {
      out += to_string(values[k]);
    } else {
      out += fmt::format("{}", values[k]);
    }
  }
  return out + "]";
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  if (seeds.empty()) fail(ErrorCode::kConfig, "at least one seed is required");
  if (cutoff == 0) fail(ErrorCode::kConfig, "cutoff must be positive");
  if (pool_k == 0 || per_user == 0) fail(ErrorCode::kConfig, "k and K must be positive");
  for (std::size_t a = 0; a < arms.size(); ++a) {
    for (std::size_t b = a + 1; b < arms.size(); ++b) {
      if (arms[a] == arms[b]) fail(ErrorCode::kConfig, fmt::format("arm '{}' listed twice", to_string(arms[a])));
    }
  }
  if (needs_item_embeddings() && item_embeddings.empty()) {
    fail(ErrorCode::kConfig, "the configured arms or model variant need item-embeddings");
  }
}

bool RunConfig::needs_item_embeddings() const {
  return model.variant != Variant::kIdOnly || std::any_of(arms.begin(), arms.end(), uses_text);
}

std::string to_ini(const RunConfig& c, std::string_view section) {
  std::string s = fmt::format("[{}]\n", section);
  auto kv = [&](std::string_view key, const std::string& value) { s += fmt::format("{}={}\n", key, value); };
  auto num = [](double x) { return fmt::format("{:.17g}", x); };
  kv("interactions", c.interactions.string());
  kv("delimiter", c.delimiter);
  if (!c.item_embeddings.empty()) kv("item-embeddings", c.item_embeddings.string());
  kv("align", align_name(c.align));
  kv("kcore", std::to_string(c.k_core));
  kv("train-ratio", num(c.ratios.train));
  kv("val-ratio", num(c.ratios.validation));
  kv("test-ratio", num(c.ratios.test));
  kv("split-seed", std::to_string(c.split_seed));
  kv("active-fraction", num(c.active_fraction));
  kv("popular-fraction", num(c.popular_fraction));
  if (!c.arms.empty()) kv("arms", join(c.arms));
  kv("pool-k", std::to_string(c.pool_k));
  kv("per-user", std::to_string(c.per_user));
  kv("similarity", measure_name(c.measure));
  kv("dim", std::to_string(c.model.embedding_dim));
  kv("layers", std::to_string(c.model.num_layers));
  kv("lr", num(c.model.learning_rate));
  kv("l2", num(c.model.l2_weight));
  kv("batch-size", std::to_string(c.model.batch_size));
  kv("max-epochs", std::to_string(c.model.max_epochs));
  kv("patience", std::to_string(c.model.patience));
  kv("early-stopping", c.model.early_stopping ? "true" : "false");
  kv("variant", std::string(to_string(c.model.variant)));
  kv("optimizer", std::string(to_string(c.model.optimizer)));
  kv("init-std", num(c.model.init_std));
  kv("threads", std::to_string(c.model.threads));
  kv("seeds", join(c.seeds));
  kv("cutoff", std::to_string(c.cutoff));
  kv("workers", std::to_string(c.workers));
  if (!c.output_dir.empty()) kv("output", c.output_dir.string());
  return s;
}

nlohmann::json to_json(const RunConfig& c) {
  std::vector<std::string> arms;
  for (Strategy s : c.arms) arms.emplace_back(to_string(s));
  return nlohmann::json{{"interactions", c.interactions.string()},
                        {"delimiter", c.delimiter},
                        {"itemEmbeddings", c.item_embeddings.string()},
                        {"align", align_name(c.align)},
                        {"kCore", c.k_core},
                        {"splitRatios", {c.ratios.train, c.ratios.validation, c.ratios.test}},
                        {"splitSeed", c.split_seed},
                        {"activeFraction", c.active_fraction},
                        {"popularFraction", c.popular_fraction},
                        {"arms", arms},
                        {"k", c.pool_k},
                        {"K", c.per_user},
                        {"similarity", measure_name(c.measure)},
                        {"model", to_json(c.model)},
                        {"seeds", c.seeds},
                        {"N", c.cutoff}};
}

PreparedData prepare(const RunConfig& c, const InteractionSet& corpus,
                     const EmbeddingMatrix* item_embeddings) {
  PreparedData out;
  InteractionSet set = corpus;
  std::optional<EmbeddingMatrix> emb;
  if (item_embeddings != nullptr) {
    AlignResult aligned = stage("align", [&] { return align(*item_embeddings, set, c.align); });
    set = std::move(aligned.corpus);
    emb = std::move(aligned.embeddings);
    out.dropped_items = std::move(aligned.dropped);
  } else if (c.needs_item_embeddings()) {
    fail(ErrorCode::kConfig, "[align] item embeddings are required but were not supplied");
  }
  if (c.k_core > 0) set = stage("kcore", [&] { return k_core_filter(set, c.k_core); });
  out.split = stage("split", [&] { return split(set, c.ratios, c.split_seed); });
  out.corpus = std::move(set);
  stage("partition", [&] {
    out.users = partition_users(out.split.train, c.active_fraction);
    out.items = partition_items(out.split.train, c.popular_fraction);
  });
  if (emb) out.item_text = stage("align", [&] { return select_rows(*emb, out.split.train.item_ids()); });
  return out;
}

PreparedData prepare(const RunConfig& c) {
  c.validate();
  auto loaded = stage("ingest", [&] { return load_interactions(c.interactions, parse_delimiter(c.delimiter)); });
  std::optional<EmbeddingMatrix> emb;
  if (!c.item_embeddings.empty()) {
    emb = stage("embeddings", [&] {
      return load_embeddings(semb_ids_path(c.item_embeddings), semb_matrix_path(c.item_embeddings));
    });
  }
  PreparedData out = prepare(c, loaded.set, emb ? &*emb : nullptr);
  out.duplicates = loaded.duplicates;
  return out;
}

RankingMetrics mean_metrics(const std::vector<RankingMetrics>& m) {
  RankingMetrics out;
  if (m.empty()) return out;
  out.cutoff = m.front().cutoff;
  for (const auto& x : m) {
    out.recall += x.recall;
    out.ndcg += x.ndcg;
    out.precision += x.precision;
    out.f1 += x.f1;
    out.hitrate += x.hitrate;
    out.avg += x.avg;
    out.num_evaluated_users += x.num_evaluated_users;
  }
  const double n = static_cast<double>(m.size());
  out.recall /= n;
  out.ndcg /= n;
  out.precision /= n;
  out.f1 /= n;
  out.hitrate /= n;
  out.avg /= n;
  out.num_evaluated_users /= m.size();
  return out;
}

GroupMetrics mean_groups(const std::vector<GroupMetrics>& g) {
  GroupMetrics out;
  std::vector<RankingMetrics> pop, unpop;
  std::vector<double> fairness;
  for (const auto& x : g) {
    pop.push_back(x.popular);
    unpop.push_back(x.unpopular);
    if (x.fairness) fairness.push_back(*x.fairness);
  }
  out.popular = mean_metrics(pop);
  out.unpopular = mean_metrics(unpop);
  out.pop_avg = out.popular.avg;
  out.unpop_avg = out.unpopular.avg;
  if (!fairness.empty() && fairness.size() == g.size()) {
    double sum = 0.0;
    for (double f : fairness) sum += f;
    out.fairness = sum / static_cast<double>(fairness.size());
  }
  return out;
}

std::optional<double> improvement_percent(double vanilla, double aug) {
  if (vanilla == 0.0) return std::nullopt;
  return 100.0 * (aug - vanilla) / vanilla;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  out << j.dump(2) << '\n';
  if (!out) fail(ErrorCode::kIo, fmt::format("failed writing {}", path.string()));
}

namespace {

struct Evaluation {
  RankingMetrics overall;
  GroupMetrics groups;
};

// Rankings exclude the un-augmented train items so that augmented edges that
// coincide with held-out items still count as hits.
Evaluation evaluate(const TrainedModel& model, const PreparedData& data, const RunConfig& c) {
  const auto rankings = rank_users(model, data.split.train, data.split.test, c.cutoff, c.workers);
  return {metrics_at_n(rankings, data.split.test, c.cutoff),
          group_metrics(rankings, data.split.test, data.items, c.cutoff)};
}

nlohmann::json seed_json(const SeedResult& s) {
  return nlohmann::json{{"seed", s.seed},           {"overall", s.overall},
                        {"groups", s.groups},       {"augmented", s.augmented},
                        {"shortfall", s.shortfall}, {"bestEpoch", s.best_epoch},
                        {"epochs", s.epochs}};
}

struct RunOptions {
  bool report_vanilla = true;
};

PipelineResult run(const RunConfig& c, const PreparedData& data,
                   const std::optional<std::filesystem::path>& out_dir, const RunOptions& opts) {
  PipelineResult result;
  result.corpus_fingerprint = data.corpus.fingerprint();
  result.split_fingerprint = data.split.fingerprint();

  const bool need_vanilla_model =
      opts.report_vanilla || std::find(c.arms.begin(), c.arms.end(), Strategy::kAugRec) != c.arms.end();

  std::optional<ContentFeatures> content;
  std::optional<EmbeddingMatrix> user_text;
  if (data.item_text) user_text = stage("augment", [&] { return user_text_embeddings(data.split.train, *data.item_text); });
  if (c.model.variant != Variant::kIdOnly) {
    content = ContentFeatures::from_embeddings(*user_text, *data.item_text);
  }
  const ContentFeatures* content_ptr = content ? &*content : nullptr;

  if (opts.report_vanilla) result.arms.push_back({"vanilla", {}, {}, {}});
  for (Strategy s : c.arms) result.arms.push_back({std::string(to_string(s)), {}, {}, {}});

  for (std::uint64_t seed : c.seeds) {
    ModelConfig mc = c.model;
    mc.seed = seed;
    const std::string seed_dir = fmt::format("seed-{}", seed);
    std::size_t arm_slot = 0;

    std::optional<TrainedModel> vanilla;
    if (need_vanilla_model) {
      vanilla = stage("train", [&] { return train(data.split, mc, content_ptr); });
      if (out_dir) {
        const auto dir = *out_dir / "arms" / "vanilla" / seed_dir;
        std::filesystem::create_directories(dir);
        write_training_log(*vanilla, dir / "training_log.csv");
        export_item_embeddings(*vanilla, data.split.train, dir / "items");
      }
    }
    if (opts.report_vanilla) {
      const Evaluation ev = stage("eval", [&] { return evaluate(*vanilla, data, c); });
      SeedResult r{seed, ev.overall, ev.groups, 0, 0, vanilla->best_epoch, vanilla->log.size()};
      result.arms[arm_slot++].seeds.push_back(r);
      if (out_dir) write_json(*out_dir / "arms" / "vanilla" / seed_dir / "metrics.json", seed_json(r));
    }

    AugmentationPlan base;
    base.pool_k = c.pool_k;
    base.per_user = c.per_user;
    base.seed = seed;
    base.measure = c.measure;
    const AugmentOptions aug_opts{c.workers};

    std::optional<std::size_t> item_count;
    auto simaug_item_edges = [&] {
      AugmentationPlan plan = base;
      plan.strategy = Strategy::kSimAugItem;
      return simaug_item(data.split.train, data.users, data.items, *data.item_text, plan, aug_opts);
    };

    for (Strategy s : c.arms) {
      AugmentedEdges aug = stage("augment", [&]() -> AugmentedEdges {
        AugmentationPlan plan = base;
        plan.strategy = s;
        switch (s) {
          case Strategy::kSimAugItem:
            return simaug_item_edges();
          case Strategy::kAugRandom:
            return aug_random(data.split.train, data.users, c.per_user, seed);
          case Strategy::kAugRec: {
            const auto rec = to_embedding_matrix(vanilla->final_item, data.split.train.item_ids(),
                                                 "recommender-export");
            return simaug_item(data.split.train, data.users, data.items, rec, plan, aug_opts);
          }
          case Strategy::kSimAugUser:
            if (!item_count) item_count = simaug_item_edges().size();
            plan.edge_budget = *item_count;
            return simaug_user(data.split.train, data.users, data.items, *user_text, plan, aug_opts);
        }
        fail(ErrorCode::kConfig, "unknown strategy");
      });
      if (s == Strategy::kSimAugItem) item_count = aug.size();

      SplitDataset arm_split{stage("merge", [&] { return merge(data.split.train, aug); }),
                             data.split.validation, data.split.test, data.split.seed, data.split.ratios};
      const TrainedModel model = stage("train", [&] { return train(arm_split, mc, content_ptr); });
      const Evaluation ev = stage("eval", [&] { return evaluate(model, data, c); });
      SeedResult r{seed, ev.overall, ev.groups, aug.size(), aug.shortfall, model.best_epoch, model.log.size()};
      ArmResult& arm = result.arms[arm_slot++];
      arm.seeds.push_back(r);
      if (out_dir) {
        const auto dir = *out_dir / "arms" / arm.name / seed_dir;
        std::filesystem::create_directories(dir);
        write_augmented(dir / "augmented.tsv", aug, data.split.train);
        write_training_log(model, dir / "training_log.csv");
        write_json(dir / "metrics.json", seed_json(r));
      }
    }
  }

  for (ArmResult& arm : result.arms) {
    std::vector<RankingMetrics> overall;
    std::vector<GroupMetrics> groups;
    for (const SeedResult& s : arm.seeds) {
      overall.push_back(s.overall);
      groups.push_back(s.groups);
    }
    arm.mean_overall = mean_metrics(overall);
    arm.mean_groups = mean_groups(groups);
  }

  ItemPartition corpus_items = partition_items(data.corpus, c.popular_fraction);
  result.stats = degree_stats(data.corpus, corpus_items);
  return result;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& c, const PreparedData& data,
                            const std::optional<std::filesystem::path>& out_dir) {
  c.validate();
  return run(c, data, out_dir, {});
}

nlohmann::json arm_report(const ArmResult& arm, const RunConfig& c, const PipelineResult& r) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const SeedResult& s : arm.seeds) seeds.push_back(seed_json(s));
  return nlohmann::json{{"arm", arm.name},
                        {"seeds", seeds},
                        {"mean", {{"overall", arm.mean_overall}, {"groups", arm.mean_groups}}},
                        {"corpusFingerprint", hex(r.corpus_fingerprint)},
                        {"splitFingerprint", hex(r.split_fingerprint)},
                        {"config", to_json(c)}};
}

void write_comparison_csv(const std::filesystem::path& path, const PipelineResult& r) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  out << "row,recall,ndcg,precision,f1,hitrate,avg,popAvg,unpopAvg,fairness\n";
  auto values = [](const ArmResult& a) {
    const auto& m = a.mean_overall;
    const auto& g = a.mean_groups;
    return std::vector<std::optional<double>>{m.recall, m.ndcg,      m.precision,
                                              m.f1,     m.hitrate,   m.avg,
                                              g.pop_avg, g.unpop_avg, g.fairness};
  };
  auto cell = [](const std::optional<double>& v) { return v ? fmt::format("{:.17g}", *v) : std::string("nan"); };
  for (const ArmResult& a : r.arms) {
    out << a.name;
    for (const auto& v : values(a)) out << ',' << cell(v);
    out << '\n';
  }
  const ArmResult& vanilla = r.arms.front();
  const auto base = values(vanilla);
  for (std::size_t k = 1; k < r.arms.size(); ++k) {
    const auto aug = values(r.arms[k]);
    out << "improve%:" << r.arms[k].name;
    for (std::size_t j = 0; j < base.size(); ++j) {
      std::optional<double> v;
      if (base[j] && aug[j]) v = improvement_percent(*base[j], *aug[j]);
      out << ',' << cell(v);
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::kIo, fmt::format("failed writing {}", path.string()));
}

PipelineResult cmd_pipeline(const RunConfig& c) {
  c.validate();
  if (c.output_dir.empty()) fail(ErrorCode::kConfig, "an output directory is required");
  const auto& dir = c.output_dir;
  std::filesystem::create_directories(dir);
  {
    std::ofstream ini(dir / "config.ini");
    ini << to_ini(c);
    if (!ini) fail(ErrorCode::kIo, fmt::format("[report] cannot write {}", (dir / "config.ini").string()));
  }
  const PreparedData data = prepare(c);
  write_json(dir / "prepared.json",
             nlohmann::json{{"corpusFingerprint", hex(data.corpus.fingerprint())},
                            {"splitFingerprint", hex(data.split.fingerprint())},
                            {"numUsers", data.corpus.num_users()},
                            {"numItems", data.corpus.num_items()},
                            {"numInteractions", data.corpus.num_edges()},
                            {"duplicates", data.duplicates},
                            {"droppedItems", data.dropped_items},
                            {"train", data.split.train.num_edges()},
                            {"validation", data.split.validation.size()},
                            {"test", data.split.test.size()},
                            {"activeUsers", data.users.active.size()},
                            {"inactiveUsers", data.users.inactive.size()},
                            {"popularItems", data.items.popular.size()},
                            {"unpopularItems", data.items.unpopular.size()}});

  const PipelineResult result = run(c, data, dir, {});
  stage("report", [&] {
    write_json(dir / "stats.json", result.stats);
    for (const ArmResult& arm : result.arms) {
      write_json(dir / "metrics" / (arm.name + ".json"), arm_report(arm, c, result));
    }
    if (result.arms.size() > 1) write_comparison_csv(dir / "comparison.csv", result);
  });
  return result;
}

std::vector<SweepRow> cmd_sweep_k(const RunConfig& c, const std::vector<std::size_t>& k_values) {
  if (k_values.size() < 2) fail(ErrorCode::kConfig, "sweep-k needs at least two values of K");
  RunConfig base = c;
  if (base.arms.empty()) base.arms = {Strategy::kSimAugItem};
  base.validate();
  const PreparedData data = prepare(base);

  std::vector<SweepRow> rows;
  RunConfig vanilla_cfg = base;
  vanilla_cfg.arms.clear();
  const PipelineResult vanilla = run(vanilla_cfg, data, std::nullopt, {});
  rows.push_back({0, "vanilla", vanilla.arms.front().mean_overall});
  for (std::size_t K : k_values) {
    RunConfig ck = base;
    ck.per_user = K;
    ck.validate();
    const PipelineResult r = run(ck, data, std::nullopt, {.report_vanilla = false});
    for (const ArmResult& arm : r.arms) rows.push_back({K, arm.name, arm.mean_overall});
  }
  if (!base.output_dir.empty()) {
    std::filesystem::create_directories(base.output_dir);
    std::ofstream ini(base.output_dir / "config.ini");
    ini << to_ini(base, "sweep-k");
    write_sweep_csv(base.output_dir / "sweep_k.csv", rows);
  }
  return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  out << "K,arm,avg,recall,ndcg,precision,f1,hitrate\n";
  for (const SweepRow& r : rows) {
    const auto& m = r.mean_overall;
    out << fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.per_user, r.arm,
                       m.avg, m.recall, m.ndcg, m.precision, m.f1, m.hitrate);
  }
}

AnalysisReport analyze(const std::vector<AnalysisInput>& inputs) {
  if (inputs.size() < 3) fail(ErrorCode::kInvalidArgument, "analyze needs at least 3 datasets");
  AnalysisReport r;
  for (const AnalysisInput& in : inputs) {
    r.names.push_back(in.name);
    r.density.push_back(in.stats.density);
    r.utility.push_back(in.utility);
    r.degrees.push_back({in.name, in.stats.avg_degree_popular, in.stats.avg_degree_unpopular,
                         degree_ratio(in.stats.avg_degree_popular, in.stats.avg_degree_unpopular)});
  }
  r.correlation = correlate(r.density, r.utility);
  return r;
}

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, fmt::format("{}: {}", path.string(), e.what()));
  }
}

double utility_of(const nlohmann::json& j, const std::filesystem::path& path) {
  if (j.contains("mean") && j["mean"].contains("overall")) return j["mean"]["overall"].at("avg").get<double>();
  if (j.contains("overall")) return j["overall"].at("avg").get<double>();
  if (j.contains("avg")) return j["avg"].get<double>();
  fail(ErrorCode::kParse, fmt::format("{}: no Avg@N value found", path.string()));
}

}  // namespace

AnalysisReport cmd_analyze(
    const std::vector<std::pair<std::filesystem::path, std::filesystem::path>>& pairs) {
  std::vector<AnalysisInput> inputs;
  for (const auto& [stats_path, metrics_path] : pairs) {
    const auto sj = read_json(stats_path);
    AnalysisInput in;
    in.name = sj.value("name", stats_path.stem().string());
    in.stats = sj.get<DatasetStats>();
    in.utility = utility_of(read_json(metrics_path), metrics_path);
    inputs.push_back(std::move(in));
  }
  return analyze(inputs);
}

nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json degrees = nlohmann::json::array();
  for (const DegreeRow& d : r.degrees) {
    degrees.push_back({{"name", d.name}, {"pop", d.avg_popular}, {"unpop", d.avg_unpopular}, {"ratio", d.ratio}});
  }
  return nlohmann::json{{"datasets", r.names},
                        {"density", r.density},
                        {"utility", r.utility},
                        {"correlation", r.correlation},
                        {"degrees", degrees}};
}

void write_degree_csv(const std::filesystem::path& path, const AnalysisReport& r) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  out << "dataset,density,avg,pop,unpop,popUnpopRatio\n";
  for (std::size_t k = 0; k < r.degrees.size(); ++k) {
    const DegreeRow& d = r.degrees[k];
    out << fmt::format("{},{:.6g},{:.6g},{:.4f},{:.4f},{:.4f}\n", d.name, r.density[k], r.utility[k],
                       d.avg_popular, d.avg_unpopular, d.ratio);
  }
}

}  // namespace simaug
