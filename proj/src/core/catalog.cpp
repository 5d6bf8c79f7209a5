#include "botminer/catalog.hpp"

#include <algorithm>
#include <unordered_map>

#include "botminer/error.hpp"

namespace botminer {
namespace {

// Which raw inputs a feature needs; decides per-dataset availability.
enum class Needs {
  profile,       // account fields present in every dataset
  tweet_text,    // tweet text only (every dataset)
  tweet_time,    // tweet created_at (absent in TwiBot-20)
  tweet_source,  // tweet source (absent in TwiBot-20)
  tweet_counts,  // tweet favorite/retweet counts (absent in TwiBot-20)
};

struct Entry {
  std::string_view name;
  FeatureSource source;
  FeatureFamily family;
  Needs needs;
};

using S = FeatureSource;
using F = FeatureFamily;
using N = Needs;

// Catalog order: account literature features, account new-crafted colour
// features, retained raw account fields, content literature features,
// content new-crafted features.
constexpr Entry kEntries[] = {
    {"followers_growth_rate", S::account, F::social, N::profile},
    {"friends_growth_rate", S::account, F::social, N::profile},
    {"favourites_growth_rate", S::account, F::social, N::profile},
    {"listed_growth_rate", S::account, F::social, N::profile},
    {"followers_friends_ratio", S::account, F::social, N::profile},
    {"average_favorites", S::account, F::social, N::profile},
    {"average_retweets", S::account, F::social, N::tweet_text},
    {"reputation", S::account, F::social, N::profile},
    {"user_age", S::account, F::temporal, N::profile},
    {"tweet_freq", S::account, F::temporal, N::profile},
    {"description_flesch_reading_ease", S::account, F::readability, N::profile},
    {"description_flesch_kincaid_grade", S::account, F::readability, N::profile},
    {"description_smog_index", S::account, F::readability, N::profile},
    {"description_coleman_liau_index", S::account, F::readability, N::profile},
    {"description_automated_readability_index", S::account, F::readability, N::profile},
    {"description_dale_chall_readability_score", S::account, F::readability, N::profile},
    {"description_difficult_words", S::account, F::readability, N::profile},
    {"description_linsear_write_formula", S::account, F::readability, N::profile},
    {"description_gunning_fog", S::account, F::readability, N::profile},
    {"screen_name_length", S::account, F::stylometry, N::profile},
    {"name_length", S::account, F::stylometry, N::profile},
    {"description_length", S::account, F::stylometry, N::profile},
    {"description_digits_count", S::account, F::stylometry, N::profile},
    {"description_mean_bigram_freq", S::account, F::stylometry, N::profile},
    {"screen_name_digits_count", S::account, F::stylometry, N::profile},
    {"name_digits_count", S::account, F::stylometry, N::profile},
    {"screen_name_mean_bigram_freq", S::account, F::stylometry, N::profile},
    {"screen_name_entropy", S::account, F::stylometry, N::profile},
    {"name_mean_bigram_freq", S::account, F::stylometry, N::profile},
    {"name_entropy", S::account, F::stylometry, N::profile},
    {"description_entropy", S::account, F::stylometry, N::profile},
    {"name_sim", S::account, F::stylometry, N::profile},
    {"name_ratio", S::account, F::stylometry, N::profile},
    {"name_contains_bot", S::account, F::stylometry, N::profile},
    {"screen_name_contains_bot", S::account, F::stylometry, N::profile},
    {"description_contains_bot", S::account, F::stylometry, N::profile},
    {"description_hashtag_count", S::account, F::stylometry, N::profile},
    {"description_url_count", S::account, F::stylometry, N::profile},
    {"description_unique_url_count", S::account, F::stylometry, N::profile},
    {"description_unique_mention_count", S::account, F::stylometry, N::profile},
    {"description_fraction_of_words_lowercase", S::account, F::stylometry, N::profile},
    {"description_fraction_of_words_uppercase", S::account, F::stylometry, N::profile},
    {"description_fraction_of_words_tilecase", S::account, F::stylometry, N::profile},
    {"description_word_count", S::account, F::stylometry, N::profile},
    {"description_sentence_count", S::account, F::stylometry, N::profile},
    {"description_average_word_length", S::account, F::stylometry, N::profile},
    {"description_average_words_per_sentence", S::account, F::stylometry, N::profile},
    {"profile_background_color_is_default", S::account, F::platform, N::profile},
    {"profile_background_color_is_uncommon", S::account, F::platform, N::profile},
    {"profile_background_color_is_common", S::account, F::platform, N::profile},
    {"profile_background_image_url_default_other_none", S::account, F::platform, N::profile},
    {"has_profile_background_tile", S::account, F::platform, N::profile},
    {"profile_link_color_default", S::account, F::platform, N::profile},
    {"profile_link_color_common", S::account, F::platform, N::profile},
    {"profile_link_color_uncommon", S::account, F::platform, N::profile},
    {"profile_sidebar_border_color_default", S::account, F::platform, N::profile},
    {"profile_sidebar_border_color_common", S::account, F::platform, N::profile},
    {"profile_sidebar_border_color_uncommon", S::account, F::platform, N::profile},
    {"profile_sidebar_fill_color_default", S::account, F::platform, N::profile},
    {"profile_sidebar_fill_color_common", S::account, F::platform, N::profile},
    {"profile_sidebar_fill_color_uncommon", S::account, F::platform, N::profile},
    {"profile_text_color_default", S::account, F::platform, N::profile},
    {"profile_text_color_common", S::account, F::platform, N::profile},
    {"profile_text_color_uncommon", S::account, F::platform, N::profile},
    {"followers_count", S::account, F::raw, N::profile},
    {"friends_count", S::account, F::raw, N::profile},
    {"favourites_count", S::account, F::raw, N::profile},
    {"listed_count", S::account, F::raw, N::profile},
    {"statuses_count", S::account, F::raw, N::profile},
    {"verified", S::account, F::raw, N::profile},
    {"protected", S::account, F::raw, N::profile},
    {"geo_enabled", S::account, F::raw, N::profile},
    {"default_profile", S::account, F::raw, N::profile},
    {"default_profile_image", S::account, F::raw, N::profile},
    {"profile_use_background_image", S::account, F::raw, N::profile},
    {"ratio_retweet", S::content, F::social, N::tweet_text},
    {"average_time_between_tweets", S::content, F::temporal, N::tweet_time},
    {"idle_hours", S::content, F::temporal, N::tweet_time},
    {"size_dna_type", S::content, F::temporal, N::tweet_text},
    {"compress_size_dna_type", S::content, F::temporal, N::tweet_text},
    {"compression_ratio_type", S::content, F::temporal, N::tweet_text},
    {"size_dna_content", S::content, F::temporal, N::tweet_text},
    {"compress_size_dna_content", S::content, F::temporal, N::tweet_text},
    {"compression_ratio_content", S::content, F::temporal, N::tweet_text},
    {"flesch_reading_ease", S::content, F::readability, N::tweet_text},
    {"flesch_kincaid_grade", S::content, F::readability, N::tweet_text},
    {"smog_index", S::content, F::readability, N::tweet_text},
    {"coleman_liau_index", S::content, F::readability, N::tweet_text},
    {"automated_readability_index", S::content, F::readability, N::tweet_text},
    {"dale_chall_readability_score", S::content, F::readability, N::tweet_text},
    {"difficult_words", S::content, F::readability, N::tweet_text},
    {"linsear_write_formula", S::content, F::readability, N::tweet_text},
    {"gunning_fog", S::content, F::readability, N::tweet_text},
    {"different_sources", S::content, F::platform, N::tweet_source},
    {"source_tweetadder_percentage", S::content, F::platform, N::tweet_source},
    {"source_iphone_percentage", S::content, F::platform, N::tweet_source},
    {"source_android_percentage", S::content, F::platform, N::tweet_source},
    {"source_twitter_percentage", S::content, F::platform, N::tweet_source},
    {"source_tweetdeck_percentage", S::content, F::platform, N::tweet_source},
    {"source_ipad_percentage", S::content, F::platform, N::tweet_source},
    {"source_web_percentage", S::content, F::platform, N::tweet_source},
    {"source_facebook_percentage", S::content, F::platform, N::tweet_source},
    {"source_instagram_percentage", S::content, F::platform, N::tweet_source},
    {"source_api_percentage", S::content, F::platform, N::tweet_source},
    {"source_web_api_percentage", S::content, F::platform, N::tweet_source},
    {"source_mobile_percentage", S::content, F::platform, N::tweet_source},
    {"source_other_percentage", S::content, F::platform, N::tweet_source},
    {"bot_reference_mean", S::content, F::stylometry, N::tweet_text},
    {"average_tweet_length", S::content, F::stylometry, N::tweet_text},
    {"num_unique_urls_mean", S::content, F::stylometry, N::tweet_text},
    {"num_unique_mentions_mean", S::content, F::stylometry, N::tweet_text},
    {"max_urls_in_a_tweet", S::content, F::stylometry, N::tweet_text},
    {"max_hashtags_in_a_tweet", S::content, F::stylometry, N::tweet_text},
    {"max_mentions_in_a_tweet", S::content, F::stylometry, N::tweet_text},
    {"average_tweets_only_url", S::content, F::stylometry, N::tweet_text},
    {"average_elongated_words", S::content, F::stylometry, N::tweet_text},
    {"num_unique_langs", S::content, F::stylometry, N::tweet_text},
    {"word_count_mean", S::content, F::stylometry, N::tweet_text},
    {"sentence_count_mean", S::content, F::stylometry, N::tweet_text},
    {"average_word_length", S::content, F::stylometry, N::tweet_text},
    {"average_words_lowercase", S::content, F::stylometry, N::tweet_text},
    {"average_words_uppercase", S::content, F::stylometry, N::tweet_text},
    {"average_words_titlecase", S::content, F::stylometry, N::tweet_text},
    {"tweets_sim_length", S::content, F::stylometry, N::tweet_text},
    {"tweets_sim_punctuation", S::content, F::stylometry, N::tweet_text},
    {"credibility", S::content, F::social, N::tweet_counts},
    {"engagement", S::content, F::social, N::tweet_counts},
};

std::set<std::string> availability_for(Needs needs) {
  std::set<std::string> all{std::string(kDatasetCresci15), std::string(kDatasetCresci17),
                            std::string(kDatasetTwibot20), std::string(kDatasetSynthetic)};
  switch (needs) {
    case Needs::profile:
    case Needs::tweet_text:
      return all;
    case Needs::tweet_time:
    case Needs::tweet_source:
    case Needs::tweet_counts:
      all.erase(std::string(kDatasetTwibot20));
      return all;
  }
  return all;
}

const std::vector<FeatureDef>& full_catalog() {
  static const std::vector<FeatureDef> kDefs = [] {
    std::vector<FeatureDef> defs;
    for (const Entry& e : kEntries) {
      defs.push_back(FeatureDef{std::string(e.name), e.source, e.family,
                                availability_for(e.needs)});
    }
    return defs;
  }();
  return kDefs;
}

}  // namespace

std::string_view to_string(FeatureSource s) {
  return s == FeatureSource::account ? "account" : "content";
}

std::string_view to_string(FeatureFamily f) {
  switch (f) {
    case FeatureFamily::social: return "social";
    case FeatureFamily::temporal: return "temporal";
    case FeatureFamily::readability: return "readability";
    case FeatureFamily::stylometry: return "stylometry";
    case FeatureFamily::platform: return "platform";
    case FeatureFamily::raw: return "raw";
  }
  return "";
}

std::optional<FeatureSource> parse_feature_source(std::string_view s) {
  if (s == "account") return FeatureSource::account;
  if (s == "content") return FeatureSource::content;
  return std::nullopt;
}

std::optional<FeatureFamily> parse_feature_family(std::string_view s) {
  for (auto f : {FeatureFamily::social, FeatureFamily::temporal, FeatureFamily::readability,
                 FeatureFamily::stylometry, FeatureFamily::platform, FeatureFamily::raw}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

FeatureCatalog::FeatureCatalog(std::vector<FeatureDef> defs) : defs_(std::move(defs)) {
  std::vector<std::string_view> seen;
  for (const auto& d : defs_) {
    if (std::find(seen.begin(), seen.end(), d.name) != seen.end()) {
      throw Error(ErrorKind::InvalidArgument, "duplicate feature name '" + d.name + "'");
    }
    seen.push_back(d.name);
  }
}

std::optional<std::size_t> FeatureCatalog::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < defs_.size(); ++i) {
    if (defs_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> FeatureCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(defs_.size());
  for (const auto& d : defs_) out.push_back(d.name);
  return out;
}

FeatureCatalog FeatureCatalog::restricted_to(FeatureSource source) const {
  std::vector<FeatureDef> out;
  for (const auto& d : defs_) {
    if (d.source == source) out.push_back(d);
  }
  return FeatureCatalog(std::move(out));
}

const std::vector<std::string>& known_datasets() {
  static const std::vector<std::string> kIds{
      std::string(kDatasetCresci15), std::string(kDatasetCresci17),
      std::string(kDatasetTwibot20), std::string(kDatasetSynthetic)};
  return kIds;
}

FeatureCatalog build_catalog(std::string_view dataset_id) {
  const auto& all = full_catalog();
  if (dataset_id == "all") return FeatureCatalog(all);
  const auto& ids = known_datasets();
  if (std::find(ids.begin(), ids.end(), dataset_id) == ids.end()) {
    throw Error(ErrorKind::UnknownDataset, "unknown dataset id '" + std::string(dataset_id) + "'");
  }
  std::vector<FeatureDef> out;
  for (const auto& d : all) {
    if (d.availability.contains(std::string(dataset_id))) out.push_back(d);
  }
  return FeatureCatalog(std::move(out));
}

}  // namespace botminer
