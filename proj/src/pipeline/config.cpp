#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "botminer/error.hpp"
#include "botminer/pipeline.hpp"

namespace botminer {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::ConfigError, what);
}

std::string read_text(const fs::path& p, const char* what) {
  std::ifstream in(p, std::ios::binary);
  if (!in) config_error(std::string("cannot read ") + what + " " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  return out;
}

RankMethod method_from(const std::string& s) {
  const auto m = parse_rank_method(s);
  if (!m) config_error("unknown ranking method '" + s + "'");
  return *m;
}

void read_hyperparams(const json& j, Hyperparams& hp) {
  hp.n_trees = j.value("n_trees", hp.n_trees);
  hp.max_depth = j.value("max_depth", hp.max_depth);
  hp.min_samples_leaf = j.value("min_samples_leaf", hp.min_samples_leaf);
  hp.max_features = j.value("max_features", hp.max_features);
  hp.knn_k = j.value("knn_k", hp.knn_k);
  hp.epochs = j.value("epochs", hp.epochs);
  hp.learning_rate = j.value("learning_rate", hp.learning_rate);
  hp.l2 = j.value("l2", hp.l2);
  hp.nb_var_smoothing = j.value("nb_var_smoothing", hp.nb_var_smoothing);
}

void apply_file(const fs::path& file, ExperimentConfig& cfg, std::optional<std::string>& dataset) {
  json j;
  try {
    j = json::parse(read_text(file, "config"));
  } catch (const json::exception& e) {
    config_error("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) config_error("config must be a JSON object");
  const fs::path base = file.parent_path();
  try {
    if (j.contains("dataset")) {
      fs::path p = j.at("dataset").get<std::string>();
      if (p.is_relative() && fs::exists(base / p)) p = base / p;
      dataset = p.string();
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) {
      fs::path p = j.at("output_dir").get<std::string>();
      cfg.output_dir = p.is_relative() ? base / p : p;
    }
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("selection")) {
      const json& s = j.at("selection");
      if (s.contains("method")) cfg.method = method_from(s.at("method").get<std::string>());
      cfg.selection.k_max = s.value("k_max", cfg.selection.k_max);
      cfg.selection.patience = s.value("patience", cfg.selection.patience);
      cfg.selection.model = s.value("model", cfg.selection.model);
      cfg.binning.bins = s.value("bins", cfg.binning.bins);
    }
    if (j.contains("cv")) {
      cfg.cv.folds = j.at("cv").value("folds", cfg.cv.folds);
      cfg.cv.stratified = j.at("cv").value("stratified", cfg.cv.stratified);
    }
    if (j.contains("models")) cfg.models = j.at("models").get<std::vector<std::string>>();
    if (j.contains("hyperparams")) read_hyperparams(j.at("hyperparams"), cfg.hp);
  } catch (const json::exception& e) {
    config_error("config value has the wrong type: " + std::string(e.what()));
  }
}

}  // namespace

ExperimentConfig resolve_config(const std::optional<fs::path>& config_file,
                                const ConfigOverrides& o) {
  ExperimentConfig cfg;
  cfg.models = known_models();
  std::optional<std::string> dataset;
  if (config_file) apply_file(*config_file, cfg, dataset);

  if (o.dataset) dataset = o.dataset;
  if (o.seed) cfg.seed = o.seed;
  if (o.method) cfg.method = method_from(*o.method);
  if (o.models) cfg.models = split_list(*o.models);
  if (o.k_max) cfg.selection.k_max = *o.k_max;
  if (o.out) cfg.output_dir = *o.out;
  if (o.threads) cfg.threads = *o.threads;

  if (!cfg.seed) config_error("a seed is required (--seed or \"seed\" in the config)");
  if (!dataset) config_error("no dataset manifest given (--dataset or \"dataset\" in the config)");
  if (cfg.models.empty()) config_error("no models configured");
  for (const auto& m : cfg.models) make_model(m, cfg.hp);
  make_model(cfg.selection.model, cfg.hp);
  if (cfg.selection.k_max < 1) config_error("k_max must be at least 1");
  if (cfg.selection.patience < 1) config_error("patience must be at least 1");
  if (cfg.binning.bins < 2) config_error("bins must be at least 2");
  if (cfg.cv.folds < 2) config_error("cv.folds must be at least 2");
  cfg.cv.seed = *cfg.seed;

  cfg.manifest_path = *dataset;
  if (!fs::is_regular_file(cfg.manifest_path)) {
    config_error("dataset manifest not found: " + cfg.manifest_path.string());
  }
  cfg.manifest_text = read_text(cfg.manifest_path, "manifest");
  cfg.manifest = parse_manifest(cfg.manifest_text, cfg.manifest_path.parent_path());
  build_catalog(cfg.manifest.dataset_id);  // UnknownDataset early
  return cfg;
}

std::string canonical_config(const ExperimentConfig& cfg) {
  const Hyperparams& hp = cfg.hp;
  json j{{"manifest", cfg.manifest_text},
         {"dataset_id", cfg.manifest.dataset_id},
         {"seed", cfg.seed.value_or(0)},
         {"method", to_string(cfg.method)},
         {"selection",
          {{"k_max", cfg.selection.k_max},
           {"patience", cfg.selection.patience},
           {"model", cfg.selection.model},
           {"bins", cfg.binning.bins}}},
         {"cv", {{"folds", cfg.cv.folds}, {"stratified", cfg.cv.stratified}}},
         {"models", cfg.models},
         {"hyperparams",
          {{"n_trees", hp.n_trees},
           {"max_depth", hp.max_depth},
           {"min_samples_leaf", hp.min_samples_leaf},
           {"max_features", hp.max_features},
           {"knn_k", hp.knn_k},
           {"epochs", hp.epochs},
           {"learning_rate", hp.learning_rate},
           {"l2", hp.l2},
           {"nb_var_smoothing", hp.nb_var_smoothing}}}};
  return j.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::UnknownModel:
    case ErrorKind::UnknownDataset:
    case ErrorKind::InvalidArgument:
      return 2;
    default:
      return 3;
  }
}

}  // namespace botminer
