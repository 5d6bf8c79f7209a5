#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "botminer/records.hpp"

namespace botminer {

struct IngestReport {
  std::size_t accounts_read = 0;
  std::size_t tweets_read = 0;
  std::size_t rows_rejected = 0;
  /// Raw class name -> accepted accounts.
  std::map<std::string, std::size_t> per_class_counts;
  /// Tweets whose author is not among the accepted accounts.
  std::size_t tweets_orphaned = 0;
  /// Tweets dropped by max_tweets_per_user.
  std::size_t tweets_truncated = 0;

  bool operator==(const IngestReport&) const = default;
};

/// Accounts sorted by id, their tweets (oldest first) and ingest counters.
struct Corpus {
  std::string dataset_id;
  std::vector<AccountRecord> accounts;
  TweetsByAuthor tweets;
  IngestReport report;

  bool operator==(const Corpus&) const = default;
};

/// Reads a manifest file. Relative data paths resolve against the manifest's
/// directory. Throws IoFailure or ConfigError.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Same, from JSON text; relative paths resolve against base_dir.
DatasetManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);

/// Loads the dataset the manifest describes. Missing files raise IoFailure,
/// no accepted account raises EmptyDataset, an unmapped class raises
/// UnmappedClass. Malformed rows are only counted.
Corpus ingest(const DatasetManifest& manifest);

/// Builds a corpus from the manifest's synthetic section.
Corpus generate_synthetic(const DatasetManifest& manifest);

/// Versioned binary cache: 8-byte magic, u32 header length, JSON header,
/// then length-prefixed little-endian records.
void write_canonical(const Corpus& corpus, const std::filesystem::path& path);
Corpus read_canonical(const std::filesystem::path& path);

inline constexpr std::string_view kCanonicalVersion = "v1";

/// RFC 4180 reader: quoted fields may hold commas, doubled quotes and
/// newlines. A UTF-8 byte order mark at the start is skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// False at end of input. `ok` is false for a row with an unterminated
  /// quote (the rest of the input is consumed).
  bool next(std::vector<std::string>& row, bool& ok);

  /// 1-based physical line where the last returned row started.
  std::size_t line() const { return row_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t row_line_ = 0;
  bool first_ = true;
};

}  // namespace botminer
