#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "botminer/timestamp.hpp"

namespace botminer {

/// Canonical binary label space. Bot is the positive class everywhere.
enum class Label : std::uint8_t { human = 0, bot = 1 };

inline int to_int(Label l) { return l == Label::bot ? 1 : 0; }
std::string_view to_string(Label l);
std::optional<Label> parse_label(std::string_view s);

/// The five customisable profile colour fields, in catalog order.
enum class ColorField : std::uint8_t {
  background = 0,
  link = 1,
  sidebar_border = 2,
  sidebar_fill = 3,
  text = 4,
};
inline constexpr std::size_t kColorFieldCount = 5;
inline constexpr std::array<ColorField, kColorFieldCount> kColorFields{
    ColorField::background, ColorField::link, ColorField::sidebar_border,
    ColorField::sidebar_fill, ColorField::text};

/// Raw field name, e.g. "profile_sidebar_fill_color".
std::string_view color_field_name(ColorField f);

struct AccountRecord {
  std::string id;
  Timestamp created_at{};
  std::string name;
  std::string screen_name;
  std::string description;
  std::string location;
  std::optional<std::string> url;
  bool is_protected = false;
  bool verified = false;
  std::int64_t followers_count = 0;
  std::int64_t friends_count = 0;
  std::int64_t favourites_count = 0;
  std::int64_t listed_count = 0;
  std::int64_t statuses_count = 0;
  std::optional<std::string> lang;
  bool geo_enabled = false;
  bool default_profile = false;
  bool default_profile_image = false;
  std::optional<std::string> profile_background_color;
  std::optional<std::string> profile_link_color;
  std::optional<std::string> profile_sidebar_border_color;
  std::optional<std::string> profile_sidebar_fill_color;
  std::optional<std::string> profile_text_color;
  std::optional<std::string> profile_background_image_url;
  bool profile_background_tile = false;
  bool profile_use_background_image = false;
  Label label = Label::human;
  Timestamp crawl_time{};

  const std::optional<std::string>& color(ColorField f) const;
  std::optional<std::string>& color(ColorField f);

  bool operator==(const AccountRecord&) const = default;
};

struct TweetRecord {
  std::string author_id;
  std::optional<Timestamp> created_at;
  std::string text;
  std::optional<std::string> source;
  bool is_retweet = false;
  bool is_reply = false;
  std::optional<std::int64_t> num_hashtags;
  std::optional<std::int64_t> num_mentions;
  std::optional<std::int64_t> num_urls;
  std::optional<std::int64_t> retweet_count;
  std::optional<std::int64_t> favorite_count;

  bool operator==(const TweetRecord&) const = default;
};

/// Tweets grouped by author id. Ordered map keeps iteration deterministic.
using TweetsByAuthor = std::map<std::string, std::vector<TweetRecord>>;

/// A tweet whose text starts with the classic "RT @" marker.
bool has_retweet_marker(std::string_view text);

/// Strips an optional leading '#', accepts 3- or 6-digit hex, and returns the
/// uppercase 6-digit form ("c0d" -> "CC00DD"). nullopt when malformed.
std::optional<std::string> normalize_hex_color(std::string_view raw);

/// Invariant violations of an account; empty iff the record is valid.
/// Colour fields are accepted in any form normalize_hex_color understands.
std::vector<std::string> validate_account(const AccountRecord& a);

/// Violations of the tweet invariants.
std::vector<std::string> validate_tweet(const TweetRecord& t);

/// Copy with every colour field in canonical uppercase 6-digit form;
/// malformed colours become absent.
AccountRecord normalize_account(AccountRecord a);

enum class DatasetFormat { cresci_csv, twibot_json, synthetic };

std::string_view to_string(DatasetFormat f);
std::optional<DatasetFormat> parse_dataset_format(std::string_view s);

/// Knobs for the built-in synthetic generator (format = synthetic).
struct SyntheticSpec {
  std::size_t n_accounts = 200;
  double bot_fraction = 0.5;
  /// Which feature source carries label signal: "both", "account",
  /// "content" or "none".
  std::string signal = "both";
  std::size_t tweets_per_account = 20;
  std::uint64_t seed = 1;
  /// Fraction of bot accounts generated without any tweets.
  double tweetless_bot_fraction = 0.0;
};

struct DatasetManifest {
  std::string dataset_id;
  DatasetFormat format = DatasetFormat::synthetic;
  /// role -> file. Roles: "users", "tweets", "users:<class>", "tweets:<class>"
  /// for CSV dumps; any role name for JSON files.
  std::map<std::string, std::string> paths;
  std::map<std::string, Label> class_mapping;
  Timestamp crawl_time{};
  /// colour field name (or "profile_background_image_url") -> default value.
  std::map<std::string, std::string> platform_defaults;
  std::optional<std::size_t> max_tweets_per_user;
  /// Column holding the raw class in a users CSV without per-class files.
  std::string class_column = "class";
  SyntheticSpec synthetic;
};

/// Colour defaults used when a manifest does not override them.
const std::map<std::string, std::string>& standard_platform_defaults();

}  // namespace botminer
