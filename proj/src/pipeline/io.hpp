#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "botminer/pipeline.hpp"

namespace botminer::pipeline_detail {

std::string fmt_full(double v);  // %.17g, round-trips
std::string fmt4(double v);      // %.4f

/// "# botminer config_hash=<hash> seed=<seed>\n"
std::string provenance_line(const ExperimentConfig& cfg);

std::string csv_field(std::string_view s);

/// Rows of a CSV file, skipping '#' comment lines. Throws IoFailure when
/// the file is missing, SchemaMismatch when malformed.
std::vector<std::vector<std::string>> read_csv_file(const std::filesystem::path& p);

std::string read_file(const std::filesystem::path& p);

/// Collects output files and publishes them together: each file is
/// written to a temporary name and renamed on commit. Uncommitted files
/// are removed on destruction.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  ~OutputSet();
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  void add(const std::string& name, const std::string& content);
  void commit();

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;  // tmp, final
  bool committed_ = false;
};

/// Stages matrix.csv, mask.csv, colors.csv and catalog.json.
void add_dataset_files(OutputSet& out, const ExtractedDataset& d, const ExperimentConfig& cfg);

}  // namespace botminer::pipeline_detail
