#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "botminer/cv.hpp"
#include "botminer/features.hpp"
#include "botminer/ingest.hpp"
#include "botminer/learn.hpp"
#include "botminer/select.hpp"

namespace botminer {

struct ExperimentConfig {
  std::filesystem::path manifest_path;
  /// Raw manifest text; part of the config hash.
  std::string manifest_text;
  DatasetManifest manifest;

  RankMethod method = RankMethod::rf_importance;
  SelectionSpec selection;
  BinSpec binning;
  CvSpec cv;
  std::vector<std::string> models;
  Hyperparams hp;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output_dir = "botminer-out";
  std::size_t threads = 0;  // 0 = default
};

/// Command-line overrides; unset members leave the config value alone.
struct ConfigOverrides {
  std::optional<std::string> dataset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method;
  std::optional<std::string> models;  // comma separated
  std::optional<std::size_t> k_max;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
};

/// Reads an optional JSON config file, applies overrides and loads the
/// manifest. Relative paths in the file resolve against its directory.
/// Throws ConfigError (missing seed, unknown method, bad values),
/// UnknownModel or UnknownDataset.
ExperimentConfig resolve_config(const std::optional<std::filesystem::path>& config_file,
                                const ConfigOverrides& overrides);

/// Canonical JSON of everything that affects results (not threads or the
/// output directory).
std::string canonical_config(const ExperimentConfig& cfg);
/// FNV-1a 64 of canonical_config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Ingests the manifest and extracts the catalog of its dataset id.
/// Dataset ids without a catalog throw UnknownDataset.
ExtractedDataset load_dataset(const ExperimentConfig& cfg, ExtractionLog* log = nullptr);

/// Ranking over a subset of columns; RankedFeature::column indexes d.
RankingResult rank_columns(const ExtractedDataset& d, std::span<const std::size_t> columns,
                           RankMethod method, const ExperimentConfig& cfg);

SelectionResult select_columns(const ExtractedDataset& d, std::span<const std::size_t> columns,
                               const ExperimentConfig& cfg, FitObserver* observer = nullptr);

/// Reports for cfg.models, best accuracy first (ties keep config order).
std::vector<EvaluationReport> train_models(const ExtractedDataset& d,
                                           std::span<const std::size_t> columns,
                                           const ExperimentConfig& cfg,
                                           FitObserver* observer = nullptr);

struct AblationRow {
  std::string feature_set;  // "account", "content", "combined"
  bool available = false;
  std::size_t n_candidates = 0;
  std::size_t chosen_k = 0;
  std::vector<std::string> chosen_features;
  std::optional<EvaluationReport> report;
};

std::vector<AblationRow> ablate(const ExtractedDataset& d, const ExperimentConfig& cfg,
                                FitObserver* observer = nullptr);

// ---- stage files ----------------------------------------------------------

void save_dataset(const ExtractedDataset& d, const ExperimentConfig& cfg,
                  const std::filesystem::path& dir);
/// Reads matrix.csv, mask.csv, colors.csv and catalog.json back.
ExtractedDataset read_dataset(const std::filesystem::path& dir);

// ---- commands -------------------------------------------------------------

void cmd_extract(const ExperimentConfig& cfg);
void cmd_rank(const ExperimentConfig& cfg);
void cmd_select(const ExperimentConfig& cfg);
void cmd_train(const ExperimentConfig& cfg);
void cmd_ablate(const ExperimentConfig& cfg);
/// Throws NothingToReport when the directory holds no stage results.
void cmd_report(const std::filesystem::path& output_dir);
/// extract, rank, select, train, ablate and report in sequence.
void cmd_run(const ExperimentConfig& cfg);

/// Process exit code for an error kind: 2 for configuration problems, 3 for
/// data problems.
int exit_code_for(ErrorKind kind);

}  // namespace botminer
