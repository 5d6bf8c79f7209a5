#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "botminer/error.hpp"
#include "botminer/parallel.hpp"
#include "io.hpp"

namespace botminer {
namespace {

using nlohmann::json;
using namespace pipeline_detail;
namespace fs = std::filesystem;

json summary_json(const MetricSummary& s) { return {{"mean", s.mean}, {"std", s.std}}; }

json report_json(const EvaluationReport& r, const ExtractedDataset& d) {
  json folds = json::array();
  for (const auto& f : r.folds) {
    folds.push_back({{"tp", f.confusion.tp},
                     {"tn", f.confusion.tn},
                     {"fp", f.confusion.fp},
                     {"fn", f.confusion.fn},
                     {"accuracy", f.metrics.accuracy},
                     {"auc", f.metrics.auc},
                     {"recall", f.metrics.recall},
                     {"precision", f.metrics.precision},
                     {"f1", f.metrics.f1}});
  }
  std::vector<std::string> features;
  for (std::size_t c : r.columns) features.push_back(d.catalog[c].name);
  return {{"model_id", r.model_id},     {"accuracy", summary_json(r.accuracy)},
          {"auc", summary_json(r.auc)}, {"recall", summary_json(r.recall)},
          {"precision", summary_json(r.precision)}, {"f1", summary_json(r.f1)},
          {"features", features},       {"folds", folds}};
}

std::string metrics_csv_cells(const EvaluationReport& r) {
  return fmt4(r.accuracy.mean) + "," + fmt4(r.auc.mean) + "," + fmt4(r.recall.mean) + "," +
         fmt4(r.precision.mean) + "," + fmt4(r.f1.mean);
}

json stamp(const ExperimentConfig& cfg) {
  return {{"config_hash", config_hash(cfg)}, {"seed", cfg.seed.value_or(0)}};
}

std::vector<std::size_t> columns_by_name(const ExtractedDataset& d,
                                         const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    const auto c = d.catalog.index_of(n);
    if (!c) throw Error(ErrorKind::SchemaMismatch, "selected feature '" + n + "' not in catalog");
    out.push_back(*c);
  }
  return out;
}

json read_json_file(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::SchemaMismatch, "malformed " + p.string() + ": " + e.what());
  }
}

class ThreadScope {
 public:
  explicit ThreadScope(std::size_t n) : previous_(thread_count()) {
    if (n > 0) set_thread_count(n);
  }
  ~ThreadScope() { set_thread_count(previous_); }

 private:
  std::size_t previous_;
};

}  // namespace

ExtractedDataset load_dataset(const ExperimentConfig& cfg, ExtractionLog* log) {
  const FeatureCatalog catalog = build_catalog(cfg.manifest.dataset_id);
  const Corpus corpus = ingest(cfg.manifest);
  return extract(corpus, catalog, cfg.manifest.platform_defaults, log);
}

RankingResult rank_columns(const ExtractedDataset& d, std::span<const std::size_t> columns,
                           RankMethod method, const ExperimentConfig& cfg) {
  const Matrix sub = d.values.select_cols(columns);
  std::vector<std::string> names;
  for (std::size_t c : columns) names.push_back(d.catalog[c].name);
  RankingResult r = rank(sub, d.labels, names, method, cfg.binning, cfg.seed.value_or(0), cfg.hp);
  for (auto& f : r.scores) f.column = columns[f.column];
  return r;
}

SelectionResult select_columns(const ExtractedDataset& d, std::span<const std::size_t> columns,
                               const ExperimentConfig& cfg, FitObserver* observer) {
  const RankingResult ranking = rank_columns(d, columns, cfg.method, cfg);
  const ExtractedDesign design(d);
  return select_topk(design, d.labels, ranking, cfg.selection, cfg.cv, cfg.hp,
                     cfg.seed.value_or(0), observer);
}

std::vector<EvaluationReport> train_models(const ExtractedDataset& d,
                                           std::span<const std::size_t> columns,
                                           const ExperimentConfig& cfg, FitObserver* observer) {
  const ExtractedDesign design(d);
  std::vector<EvaluationReport> out;
  for (const auto& m : cfg.models) {
    out.push_back(cross_validate(m, design, d.labels, columns, cfg.cv, cfg.hp,
                                 cfg.seed.value_or(0), observer));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.accuracy.mean > b.accuracy.mean;
  });
  return out;
}

std::vector<AblationRow> ablate(const ExtractedDataset& d, const ExperimentConfig& cfg,
                                FitObserver* observer) {
  const std::vector<std::size_t> account = d.columns_of(FeatureSource::account);
  const std::vector<std::size_t> content = d.columns_of(FeatureSource::content);
  std::vector<std::size_t> combined = account;
  combined.insert(combined.end(), content.begin(), content.end());
  std::sort(combined.begin(), combined.end());

  std::vector<AblationRow> rows;
  for (const auto& [name, cols] : {std::pair{"account", account}, std::pair{"content", content},
                                   std::pair{"combined", combined}}) {
    AblationRow row;
    row.feature_set = name;
    row.n_candidates = cols.size();
    row.available = !cols.empty();
    if (row.available) {
      const SelectionResult sel = select_columns(d, cols, cfg, observer);
      row.chosen_k = sel.chosen_k;
      row.chosen_features = sel.chosen_features;
      const ExtractedDesign design(d);
      row.report = cross_validate(cfg.selection.model, design, d.labels, sel.chosen_columns,
                                  cfg.cv, cfg.hp, cfg.seed.value_or(0), observer);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void cmd_extract(const ExperimentConfig& cfg) {
  ThreadScope threads(cfg.threads);
  const FeatureCatalog catalog = build_catalog(cfg.manifest.dataset_id);
  const Corpus corpus = ingest(cfg.manifest);
  ExtractionLog log;
  const ExtractedDataset d = extract(corpus, catalog, cfg.manifest.platform_defaults, &log);

  std::size_t tweetless = 0;
  for (const auto& a : corpus.accounts) {
    const auto it = corpus.tweets.find(a.id);
    tweetless += it == corpus.tweets.end() || it->second.empty() ? 1 : 0;
  }
  json report = stamp(cfg);
  report["dataset_id"] = corpus.dataset_id;
  report["accounts_read"] = corpus.report.accounts_read;
  report["tweets_read"] = corpus.report.tweets_read;
  report["rows_rejected"] = corpus.report.rows_rejected;
  report["per_class_counts"] = corpus.report.per_class_counts;
  report["tweets_orphaned"] = corpus.report.tweets_orphaned;
  report["tweets_truncated"] = corpus.report.tweets_truncated;
  report["accounts_without_tweets"] = tweetless;
  report["accounts"] = corpus.accounts.size();
  report["features"] = catalog.size();

  json timing = stamp(cfg);
  timing["group_seconds"] = log.group_seconds;
  timing["total_seconds"] = log.total_seconds;

  OutputSet out(cfg.output_dir);
  add_dataset_files(out, d, cfg);
  out.add("ingest_report.json", report.dump(2) + "\n");
  out.add("extract_log.timing.json", timing.dump(2) + "\n");
  out.commit();
}

void cmd_rank(const ExperimentConfig& cfg) {
  ThreadScope threads(cfg.threads);
  const ExtractedDataset d = read_dataset(cfg.output_dir);
  const auto cols = all_columns(d);
  json all = stamp(cfg);
  all["dataset_id"] = d.dataset_id;
  OutputSet out(cfg.output_dir);
  for (RankMethod m : all_rank_methods()) {
    const RankingResult r = rank_columns(d, cols, m, cfg);
    std::string csv = provenance_line(cfg) + "rank,feature,score,source\n";
    json entries = json::array();
    for (std::size_t i = 0; i < r.scores.size(); ++i) {
      const auto& f = r.scores[i];
      const std::string source(to_string(d.catalog[f.column].source));
      csv += std::to_string(i + 1) + "," + f.name + "," + fmt_full(f.score) + "," + source + "\n";
      entries.push_back({{"rank", i + 1}, {"feature", f.name}, {"score", f.score}, {"source", source}});
    }
    all["methods"][std::string(to_string(m))] = entries;
    out.add("ranking_" + std::string(to_string(m)) + ".csv", csv);
  }
  out.add("rankings.json", all.dump(2) + "\n");
  out.commit();
}

void cmd_select(const ExperimentConfig& cfg) {
  ThreadScope threads(cfg.threads);
  const ExtractedDataset d = read_dataset(cfg.output_dir);
  const SelectionResult sel = select_columns(d, all_columns(d), cfg);

  json j = stamp(cfg);
  j["method"] = to_string(cfg.method);
  j["model"] = cfg.selection.model;
  j["k_max"] = cfg.selection.k_max;
  j["patience"] = cfg.selection.patience;
  j["chosen_k"] = sel.chosen_k;
  j["chosen_features"] = sel.chosen_features;
  std::string curve = provenance_line(cfg) + "k,accuracy\n";
  std::string timing = provenance_line(cfg) + "k,accuracy,seconds\n";
  json points = json::array();
  for (const auto& p : sel.curve) {
    curve += std::to_string(p.k) + "," + fmt_full(p.accuracy) + "\n";
    timing += std::to_string(p.k) + "," + fmt_full(p.accuracy) + "," + fmt_full(p.seconds) + "\n";
    points.push_back({{"k", p.k}, {"accuracy", p.accuracy}});
  }
  j["curve"] = points;

  OutputSet out(cfg.output_dir);
  out.add("selection.json", j.dump(2) + "\n");
  out.add("curve.csv", curve);
  out.add("curve.timing.csv", timing);
  out.commit();
}

void cmd_train(const ExperimentConfig& cfg) {
  ThreadScope threads(cfg.threads);
  const ExtractedDataset d = read_dataset(cfg.output_dir);
  std::vector<std::size_t> cols;
  const fs::path selection = cfg.output_dir / "selection.json";
  if (fs::exists(selection)) {
    cols = columns_by_name(d, read_json_file(selection).at("chosen_features").get<std::vector<std::string>>());
  } else {
    cols = select_columns(d, all_columns(d), cfg).chosen_columns;
  }
  const auto reports = train_models(d, cols, cfg);

  json j = stamp(cfg);
  json models = json::array();
  std::string csv = provenance_line(cfg) + "model,accuracy,auc,recall,precision,f1\n";
  std::string timing = provenance_line(cfg) + "model,train_time_seconds\n";
  for (const auto& r : reports) {
    models.push_back(report_json(r, d));
    csv += r.model_id + "," + metrics_csv_cells(r) + "\n";
    timing += r.model_id + "," + fmt4(r.train_time_seconds) + "\n";
  }
  j["models"] = models;
  j["folds"] = cfg.cv.folds;

  OutputSet out(cfg.output_dir);
  out.add("train_report.json", j.dump(2) + "\n");
  out.add("train_report.csv", csv);
  out.add("train.timing.csv", timing);
  out.commit();
}

void cmd_ablate(const ExperimentConfig& cfg) {
  ThreadScope threads(cfg.threads);
  const ExtractedDataset d = read_dataset(cfg.output_dir);
  const auto rows = ablate(d, cfg);

  json j = stamp(cfg);
  json arr = json::array();
  std::string csv = provenance_line(cfg) + "feature_set,chosen_k,accuracy,auc,recall,precision,f1\n";
  std::string timing = provenance_line(cfg) + "feature_set,train_time_seconds\n";
  for (const auto& r : rows) {
    json e{{"feature_set", r.feature_set},
           {"available", r.available},
           {"candidates", r.n_candidates},
           {"chosen_k", r.chosen_k},
           {"chosen_features", r.chosen_features}};
    if (r.report) {
      e["report"] = report_json(*r.report, d);
      csv += r.feature_set + "," + std::to_string(r.chosen_k) + "," + metrics_csv_cells(*r.report) + "\n";
      timing += r.feature_set + "," + fmt4(r.report->train_time_seconds) + "\n";
    } else {
      csv += r.feature_set + ",0,unavailable,unavailable,unavailable,unavailable,unavailable\n";
      timing += r.feature_set + ",unavailable\n";
    }
    arr.push_back(e);
  }
  j["rows"] = arr;

  OutputSet out(cfg.output_dir);
  out.add("ablation.json", j.dump(2) + "\n");
  out.add("ablation.csv", csv);
  out.add("ablation.timing.csv", timing);
  out.commit();
}

void cmd_report(const fs::path& dir) {
  json report{{"format", "botminer-report"}, {"version", 1}};
  std::string hash;
  std::uint64_t seed = 0;
  bool any = false;
  auto load = [&](const char* file, const char* key) -> const json* {
    const fs::path p = dir / file;
    if (!fs::exists(p)) return nullptr;
    json j = read_json_file(p);
    if (j.contains("config_hash")) {
      hash = j.at("config_hash").get<std::string>();
      seed = j.value("seed", std::uint64_t{0});
    }
    report[key] = std::move(j);
    any = true;
    return &report[key];
  };
  const json* rankings = load("rankings.json", "rankings");
  const json* selection = load("selection.json", "selection");
  const json* train = load("train_report.json", "train");
  const json* ablation = load("ablation.json", "ablation");
  if (!any) throw Error(ErrorKind::NothingToReport, "no stage results in " + dir.string());
  report["config_hash"] = hash;
  report["seed"] = seed;

  const std::string head = "# botminer config_hash=" + hash + " seed=" + std::to_string(seed) + "\n";
  OutputSet out(dir);
  if (rankings) {
    for (const auto& [method, entries] : rankings->at("methods").items()) {
      std::string csv = head + "feature,score,source\n";
      for (const auto& e : entries) {
        csv += e.at("feature").get<std::string>() + "," + fmt_full(e.at("score").get<double>()) +
               "," + e.at("source").get<std::string>() + "\n";
      }
      out.add("fig3_" + method + ".csv", csv);
    }
  }
  if (selection) {
    std::string csv = head + "k,accuracy\n";
    for (const auto& p : selection->at("curve")) {
      csv += std::to_string(p.at("k").get<std::size_t>()) + "," +
             fmt_full(p.at("accuracy").get<double>()) + "\n";
    }
    out.add("fig4.csv", csv);
    if (fs::exists(dir / "curve.timing.csv")) {
      std::string timing = head + "k,accuracy,seconds\n";
      const auto rows = read_csv_file(dir / "curve.timing.csv");
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() == 3) timing += rows[i][0] + "," + rows[i][1] + "," + rows[i][2] + "\n";
      }
      out.add("fig4.timing.csv", timing);
    }
  }
  auto metric = [](const json& r, const char* k) { return fmt4(r.at(k).at("mean").get<double>()); };
  auto metric_cells = [&](const json& r) {
    return metric(r, "accuracy") + "," + metric(r, "auc") + "," + metric(r, "recall") + "," +
           metric(r, "precision") + "," + metric(r, "f1");
  };
  if (train) {
    std::string csv = head + "model,accuracy,auc,recall,precision,f1\n";
    for (const auto& m : train->at("models")) {
      csv += m.at("model_id").get<std::string>() + "," + metric_cells(m) + "\n";
    }
    out.add("table5.csv", csv);
  }
  if (ablation) {
    std::string csv = head + "feature_set,accuracy\n";
    for (const auto& r : ablation->at("rows")) {
      csv += r.at("feature_set").get<std::string>() + "," +
             (r.contains("report") ? metric(r.at("report"), "accuracy") : std::string("unavailable")) +
             "\n";
    }
    out.add("table8.csv", csv);
  }
  out.add("report.json", report.dump(2) + "\n");
  out.commit();
}

void cmd_run(const ExperimentConfig& cfg) {
  cmd_extract(cfg);
  cmd_rank(cfg);
  cmd_select(cfg);
  cmd_train(cfg);
  cmd_ablate(cfg);
  cmd_report(cfg.output_dir);
}

}  // namespace botminer
