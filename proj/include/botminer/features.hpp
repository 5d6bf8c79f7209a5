#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botminer/catalog.hpp"
#include "botminer/cv.hpp"
#include "botminer/ingest.hpp"
#include "botminer/language.hpp"
#include "botminer/learn.hpp"
#include "botminer/records.hpp"

namespace botminer {

/// Named values produced by one extractor. Masked names hold 0 and mark a
/// failed precondition (absent input, no tweets, ...).
struct FeatureRecord {
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> masked;

  void set(std::string name, double v);
  void mask(std::string name);
  bool has(std::string_view name) const;
  double get(std::string_view name) const;  // throws InvalidArgument if absent
  bool is_masked(std::string_view name) const;
  void merge(const FeatureRecord& other);
};

// ---- account features -----------------------------------------------------

/// (crawl_time - created_at) in days, never below 1.
double user_age_days(const AccountRecord& a);

FeatureRecord account_ratios(const AccountRecord& a);
FeatureRecord name_features(const AccountRecord& a);
FeatureRecord description_readability(const AccountRecord& a);
FeatureRecord raw_features(const AccountRecord& a);

/// Retweets among the account's tweets per follower. Masked without tweets.
FeatureRecord average_retweets(const AccountRecord& a, std::span<const TweetRecord> tweets);

enum class ColorBin : std::uint8_t { absent, default_value, common, uncommon };

/// Per colour field: the platform default and the (at most 8) most frequent
/// non-default values of the fitting accounts.
struct ColorBinningModel {
  static constexpr std::size_t kCommonSize = 8;

  std::array<std::string, kColorFieldCount> defaults;
  std::array<std::vector<std::string>, kColorFieldCount> common;  // sorted
  std::string background_image_default;

  ColorBin bin(ColorField f, const std::optional<std::string>& value) const;
};

/// `defaults` maps raw field names to values (see standard_platform_defaults).
/// Throws EmptyDataset for no accounts.
ColorBinningModel fit_color_model(std::span<const AccountRecord> accounts,
                                  const std::map<std::string, std::string>& defaults);

using ColorValues = std::array<std::optional<std::string>, kColorFieldCount>;

ColorBinningModel fit_color_model(std::span<const ColorValues> colors,
                                  std::span<const std::size_t> rows,
                                  const std::map<std::string, std::string>& defaults);

/// Catalog column names of the three bins of a colour field, in the order
/// default, common, uncommon.
std::array<std::string, 3> color_bin_names(ColorField f);

/// Bin flags of the five colour fields, background tile flag and the
/// background image indicator (0 default, 1 other, 2 none).
FeatureRecord color_features(const AccountRecord& a, const ColorBinningModel& m);

// ---- content features -----------------------------------------------------

struct AccountAggregates {
  std::size_t n_tweets = 0;
  std::size_t n_retweets = 0;
  std::size_t n_replies = 0;
  std::int64_t sum_favorites = 0;
  std::int64_t sum_retweet_counts = 0;
  std::vector<Timestamp> timestamps;  // ascending
};

AccountAggregates aggregate(std::span<const TweetRecord> tweets);

/// Mean over favourites and retweets of their count per follower.
double credibility(const AccountAggregates& agg, std::int64_t followers);

/// Mean of followers, lists, retweets received and favourites received.
double engagement(std::int64_t followers, std::int64_t lists, const AccountAggregates& agg);

/// ratio_retweet plus gap statistics in hours (masked below two timestamps).
FeatureRecord temporal_features(const AccountAggregates& agg);

/// One symbol per tweet, chronological when every tweet has a timestamp.
/// Type: A plain, C reply, T retweet. Content: X for two or more entity
/// kinds among url/hashtag/mention, else U, H, M, or N.
std::string dna_type(std::span<const TweetRecord> tweets);
std::string dna_content(std::span<const TweetRecord> tweets);

/// Bytes after zlib compression at level 9.
std::size_t compressed_size(std::string_view s);

FeatureRecord dna_features(std::span<const TweetRecord> tweets);

/// Source category names in catalog order.
const std::array<std::string_view, 13>& source_categories();

/// Category of a cleaned source string, e.g. "Twitter for iPhone" -> "iphone".
std::string_view classify_source(std::string_view source);

/// `vocabulary_size`: distinct raw sources over the whole dataset.
FeatureRecord source_features(std::span<const TweetRecord> tweets, std::size_t vocabulary_size);

FeatureRecord tweet_stylometry(std::span<const TweetRecord> tweets,
                               const text::LanguageDetector& detector);
FeatureRecord tweet_stylometry(std::span<const TweetRecord> tweets);

FeatureRecord tweet_readability(std::span<const TweetRecord> tweets);

/// 1 / (1 + coefficient of variation); 1 for a zero mean or fewer than one value.
double similarity_from_cv(std::span<const double> values);

// ---- dataset extraction ---------------------------------------------------

struct ExtractionLog {
  /// Summed extractor time per feature group, in seconds.
  std::map<std::string, double> group_seconds;
  double total_seconds = 0;
};

/// Feature matrix of a corpus over a catalog. Colour bin columns hold the
/// binning fitted on all rows; per-fold refits go through
/// ExtractedDesign.
struct ExtractedDataset {
  std::string dataset_id;
  FeatureCatalog catalog;
  std::vector<std::string> account_ids;
  std::vector<int> labels;
  Matrix values;
  std::vector<std::uint8_t> mask;  // row-major, 1 = available
  std::vector<ColorValues> colors;
  std::map<std::string, std::string> defaults;

  std::size_t rows() const { return values.rows; }
  bool available(std::size_t r, std::size_t c) const { return mask[r * values.cols + c] != 0; }
  FeatureVector row(std::size_t r) const;
  /// Column indices of the features whose source is `s`.
  std::vector<std::size_t> columns_of(FeatureSource s) const;
};

std::vector<std::size_t> all_columns(const ExtractedDataset& d);

/// Distinct non-empty tweet sources across the corpus.
std::size_t source_vocabulary_size(const TweetsByAuthor& tweets);

ExtractedDataset extract(const Corpus& corpus, const FeatureCatalog& catalog,
                         const std::map<std::string, std::string>& defaults,
                         ExtractionLog* log = nullptr,
                         const text::LanguageDetector* detector = nullptr);

/// Overwrites the colour bin columns of `m` (laid out as `columns` of d)
/// for `rows` using `model`.
void apply_color_model(const ExtractedDataset& d, const ColorBinningModel& model,
                       std::span<const std::size_t> rows, std::span<const std::size_t> columns,
                       Matrix& m);

/// Design provider that refits the colour binning on each training split.
class ExtractedDesign final : public DesignProvider {
 public:
  explicit ExtractedDesign(const ExtractedDataset& d) : d_(d) {}
  std::size_t rows() const override { return d_.values.rows; }
  std::size_t cols() const override { return d_.values.cols; }
  FoldDesign materialize(std::span<const std::size_t> train_rows,
                         std::span<const std::size_t> test_rows,
                         std::span<const std::size_t> columns, std::size_t fold,
                         FitObserver* observer) const override;

 private:
  const ExtractedDataset& d_;
};

}  // namespace botminer
