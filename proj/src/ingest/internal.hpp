#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "botminer/ingest.hpp"

namespace botminer::ingest_detail {

/// Gathers tweets per author, keeping at most `max` most recent ones.
/// Recency is (created_at, file order); tweets without a timestamp rank
/// oldest.
class TweetCollector {
 public:
  explicit TweetCollector(std::optional<std::size_t> max) : max_(max) {}

  void add(TweetRecord t);

  /// Tweets of `known` authors in chronological order; the rest are counted
  /// as orphaned.
  TweetsByAuthor finish(const std::vector<AccountRecord>& known, IngestReport& report);

  std::size_t accepted() const { return accepted_; }

 private:
  struct Item {
    TweetRecord tweet;
    std::uint64_t seq;
  };
  void trim(std::vector<Item>& items, std::size_t keep);

  std::optional<std::size_t> max_;
  std::map<std::string, std::vector<Item>> by_author_;
  std::uint64_t seq_ = 0;
  std::size_t accepted_ = 0;
  std::size_t truncated_ = 0;
};

struct RawAccount {
  AccountRecord account;
  std::string raw_class;
};

struct RawDataset {
  explicit RawDataset(std::optional<std::size_t> max) : tweets(max) {}

  std::vector<RawAccount> accounts;
  TweetCollector tweets;
  std::size_t rejected = 0;
};

void load_cresci(const DatasetManifest& m, RawDataset& out);
void load_twibot(const DatasetManifest& m, RawDataset& out);

/// Labels, validates, deduplicates and sorts accounts, then attaches tweets.
Corpus finalize(const DatasetManifest& m, RawDataset&& raw);

// Field helpers shared by the readers.
std::string_view trim(std::string_view s);
bool is_null_field(std::string_view s);
/// nullopt for garbage; null-like fields give 0.
std::optional<std::int64_t> parse_count(std::string_view s);
bool parse_bool(std::string_view s);
/// Display name of an HTML anchor source ("<a ...>Twitter for iPhone</a>").
std::string clean_source(std::string_view s);
/// True for a set status id ("0" and null-like values are unset).
bool id_is_set(std::string_view s);

}  // namespace botminer::ingest_detail
