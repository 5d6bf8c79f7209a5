#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "botminer/error.hpp"
#include "botminer/features.hpp"
#include "internal.hpp"

namespace botminer {
namespace features_detail {

std::vector<TweetText> analyze(std::span<const TweetRecord> tweets) {
  std::vector<TweetText> out;
  out.reserve(tweets.size());
  for (const auto& t : tweets) {
    TweetText tt;
    tt.entities = text::extract_entities(t.text);
    tt.tokens = text::tokenize(tt.entities.stripped);
    out.push_back(std::move(tt));
  }
  return out;
}

std::vector<std::size_t> chronological_order(std::span<const TweetRecord> tweets) {
  std::vector<std::size_t> order = iota_indices(tweets.size());
  const bool timed = std::all_of(tweets.begin(), tweets.end(),
                                 [](const TweetRecord& t) { return t.created_at.has_value(); });
  if (timed) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return *tweets[a].created_at < *tweets[b].created_at;
    });
  }
  return order;
}

namespace {

char content_symbol(const text::EntitySet& e) {
  const bool u = !e.urls.empty();
  const bool h = !e.hashtags.empty();
  const bool m = !e.mentions.empty();
  if (int{u} + int{h} + int{m} >= 2) return 'X';
  if (u) return 'U';
  if (h) return 'H';
  if (m) return 'M';
  return 'N';
}

void add_dna(FeatureRecord& r, std::string_view suffix, const std::string& seq) {
  const std::string sfx(suffix);
  if (seq.empty()) {
    r.mask("size_dna_" + sfx);
    r.mask("compress_size_dna_" + sfx);
    r.mask("compression_ratio_" + sfx);
    return;
  }
  const auto size = static_cast<double>(seq.size());
  const auto packed = static_cast<double>(compressed_size(seq));
  r.set("size_dna_" + sfx, size);
  r.set("compress_size_dna_" + sfx, packed);
  r.set("compression_ratio_" + sfx, size / packed);
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

const char* const kStylometryNames[] = {
    "bot_reference_mean",      "average_tweet_length",    "num_unique_urls_mean",
    "num_unique_mentions_mean", "max_urls_in_a_tweet",    "max_hashtags_in_a_tweet",
    "max_mentions_in_a_tweet", "average_tweets_only_url", "average_elongated_words",
    "num_unique_langs",        "word_count_mean",         "sentence_count_mean",
    "average_word_length",     "average_words_lowercase", "average_words_uppercase",
    "average_words_titlecase", "tweets_sim_length",       "tweets_sim_punctuation"};

}  // namespace

std::string dna_content(std::span<const TweetRecord> tweets, std::span<const TweetText> analyzed) {
  std::string s;
  for (std::size_t i : chronological_order(tweets)) s.push_back(content_symbol(analyzed[i].entities));
  return s;
}

FeatureRecord dna_features(std::span<const TweetRecord> tweets, std::span<const TweetText> analyzed) {
  FeatureRecord r;
  add_dna(r, "type", botminer::dna_type(tweets));
  add_dna(r, "content", dna_content(tweets, analyzed));
  return r;
}

FeatureRecord tweet_stylometry(std::span<const TweetRecord> tweets,
                               std::span<const TweetText> analyzed,
                               const text::LanguageDetector& detector) {
  FeatureRecord r;
  if (tweets.empty()) {
    for (const char* n : kStylometryNames) r.mask(n);
    return r;
  }
  const std::size_t n = tweets.size();
  std::vector<double> bot_refs(n), lengths(n), uniq_urls(n), uniq_mentions(n), only_url(n),
      elongated(n), words(n), sentences(n), lower(n), upper(n), title(n), punct(n);
  double max_urls = 0, max_tags = 0, max_mentions = 0;
  std::size_t word_chars = 0, word_total = 0;
  std::set<std::string> langs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& raw = tweets[i].text;
    const auto& e = analyzed[i].entities;
    const auto& tok = analyzed[i].tokens;
    bot_refs[i] = static_cast<double>(text::count_substring_ci(raw, "bot"));
    lengths[i] = static_cast<double>(text::code_point_count(raw));
    punct[i] = static_cast<double>(text::punctuation_count(raw));
    uniq_urls[i] = static_cast<double>(text::unique_count(e.urls));
    uniq_mentions[i] = static_cast<double>(text::unique_count(e.mentions));
    max_urls = std::max(max_urls, static_cast<double>(e.urls.size()));
    max_tags = std::max(max_tags, static_cast<double>(e.hashtags.size()));
    max_mentions = std::max(max_mentions, static_cast<double>(e.mentions.size()));
    only_url[i] = !e.urls.empty() && e.stripped.empty() ? 1.0 : 0.0;
    elongated[i] = static_cast<double>(text::count_elongated(tok.words));
    words[i] = static_cast<double>(tok.words.size());
    sentences[i] = static_cast<double>(tok.sentences.size());
    const auto casing = text::casing_counts(tok);
    lower[i] = static_cast<double>(casing.lower);
    upper[i] = static_cast<double>(casing.upper);
    title[i] = static_cast<double>(casing.title);
    for (const auto& w : tok.words) word_chars += text::code_point_count(w);
    word_total += tok.words.size();
    if (auto lang = text::detect_language(raw, detector)) langs.insert(std::move(*lang));
  }
  r.set("bot_reference_mean", mean(bot_refs));
  r.set("average_tweet_length", mean(lengths));
  r.set("num_unique_urls_mean", mean(uniq_urls));
  r.set("num_unique_mentions_mean", mean(uniq_mentions));
  r.set("max_urls_in_a_tweet", max_urls);
  r.set("max_hashtags_in_a_tweet", max_tags);
  r.set("max_mentions_in_a_tweet", max_mentions);
  r.set("average_tweets_only_url", mean(only_url));
  r.set("average_elongated_words", mean(elongated));
  r.set("num_unique_langs", static_cast<double>(langs.size()));
  r.set("word_count_mean", mean(words));
  r.set("sentence_count_mean", mean(sentences));
  r.set("average_word_length",
        word_total == 0 ? 0.0 : static_cast<double>(word_chars) / static_cast<double>(word_total));
  r.set("average_words_lowercase", mean(lower));
  r.set("average_words_uppercase", mean(upper));
  r.set("average_words_titlecase", mean(title));
  r.set("tweets_sim_length", similarity_from_cv(lengths));
  r.set("tweets_sim_punctuation", similarity_from_cv(punct));
  return r;
}

FeatureRecord tweet_readability(std::span<const TweetText> analyzed) {
  FeatureRecord r;
  std::array<double, text::kReadabilityCount> sum{};
  std::size_t used = 0;
  for (const auto& t : analyzed) {
    const auto rd = text::readability(t.tokens);
    if (rd.degenerate) continue;
    const auto v = rd.values();
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
    ++used;
  }
  const auto& names = text::readability_names();
  for (std::size_t i = 0; i < text::kReadabilityCount; ++i) {
    if (used == 0) {
      r.mask(std::string(names[i]));
    } else {
      r.set(std::string(names[i]), sum[i] / static_cast<double>(used));
    }
  }
  return r;
}

}  // namespace features_detail

AccountAggregates aggregate(std::span<const TweetRecord> tweets) {
  AccountAggregates a;
  a.n_tweets = tweets.size();
  for (const auto& t : tweets) {
    const bool rt = t.is_retweet || has_retweet_marker(t.text);
    a.n_retweets += rt ? 1 : 0;
    a.n_replies += !rt && t.is_reply ? 1 : 0;
    a.sum_favorites += t.favorite_count.value_or(0);
    a.sum_retweet_counts += t.retweet_count.value_or(0);
    if (t.created_at) a.timestamps.push_back(*t.created_at);
  }
  std::sort(a.timestamps.begin(), a.timestamps.end());
  return a;
}

double credibility(const AccountAggregates& agg, std::int64_t followers) {
  const double den = std::max(static_cast<double>(followers), 1.0);
  return (static_cast<double>(agg.sum_favorites) / den +
          static_cast<double>(agg.sum_retweet_counts) / den) /
         2.0;
}

double engagement(std::int64_t followers, std::int64_t lists, const AccountAggregates& agg) {
  return (static_cast<double>(followers) + static_cast<double>(lists) +
          static_cast<double>(agg.sum_retweet_counts) + static_cast<double>(agg.sum_favorites)) /
         4.0;
}

FeatureRecord temporal_features(const AccountAggregates& agg) {
  FeatureRecord r;
  if (agg.n_tweets == 0) {
    r.mask("ratio_retweet");
  } else {
    r.set("ratio_retweet",
          static_cast<double>(agg.n_retweets) / static_cast<double>(agg.n_tweets));
  }
  if (agg.timestamps.size() < 2) {
    r.mask("average_time_between_tweets");
    r.mask("idle_hours");
    return r;
  }
  double total = 0;
  double idle = 0;
  for (std::size_t i = 1; i < agg.timestamps.size(); ++i) {
    const double gap =
        static_cast<double>((agg.timestamps[i] - agg.timestamps[i - 1]).count()) / 3600.0;
    total += gap;
    idle = std::max(idle, gap);
  }
  r.set("average_time_between_tweets", total / static_cast<double>(agg.timestamps.size() - 1));
  r.set("idle_hours", idle);
  return r;
}

std::string dna_type(std::span<const TweetRecord> tweets) {
  std::string s;
  for (std::size_t i : features_detail::chronological_order(tweets)) {
    const auto& t = tweets[i];
    if (t.is_retweet || has_retweet_marker(t.text)) {
      s.push_back('T');
    } else if (t.is_reply) {
      s.push_back('C');
    } else {
      s.push_back('A');
    }
  }
  return s;
}

std::string dna_content(std::span<const TweetRecord> tweets) {
  return features_detail::dna_content(tweets, features_detail::analyze(tweets));
}

std::size_t compressed_size(std::string_view s) {
  uLongf len = compressBound(static_cast<uLong>(s.size()));
  std::vector<Bytef> buf(len);
  const int rc = compress2(buf.data(), &len, reinterpret_cast<const Bytef*>(s.data()),
                           static_cast<uLong>(s.size()), 9);
  if (rc != Z_OK) throw Error(ErrorKind::InvalidArgument, "zlib compression failed");
  return static_cast<std::size_t>(len);
}

FeatureRecord dna_features(std::span<const TweetRecord> tweets) {
  return features_detail::dna_features(tweets, features_detail::analyze(tweets));
}

const std::array<std::string_view, 13>& source_categories() {
  static constexpr std::array<std::string_view, 13> kNames{
      "tweetadder", "iphone",    "android", "twitter", "tweetdeck", "ipad",  "web",
      "facebook",   "instagram", "api",     "web_api", "mobile",    "other"};
  return kNames;
}

std::string_view classify_source(std::string_view source) {
  // More specific names are tried before the generic ones they contain.
  static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
      {"tweetadder", "tweetadder"}, {"iphone", "iphone"},       {"ipad", "ipad"},
      {"android", "android"},       {"tweetdeck", "tweetdeck"}, {"facebook", "facebook"},
      {"instagram", "instagram"},   {"web api", "web_api"},     {"web-api", "web_api"},
      {"mobile", "mobile"},         {"web", "web"},             {"api", "api"},
      {"twitter", "twitter"}};
  for (const auto& [needle, category] : kRules) {
    if (text::count_substring_ci(source, needle) > 0) return category;
  }
  return "other";
}

FeatureRecord source_features(std::span<const TweetRecord> tweets, std::size_t vocabulary_size) {
  FeatureRecord r;
  std::map<std::string_view, std::size_t> per_category;
  std::set<std::string_view> distinct;
  std::size_t sourced = 0;
  for (const auto& t : tweets) {
    if (!t.source || t.source->empty()) continue;
    ++sourced;
    distinct.insert(*t.source);
    ++per_category[classify_source(*t.source)];
  }
  if (sourced == 0) {
    r.mask("different_sources");
    for (auto c : source_categories()) r.mask("source_" + std::string(c) + "_percentage");
    return r;
  }
  r.set("different_sources", static_cast<double>(distinct.size()) /
                                 static_cast<double>(std::max<std::size_t>(vocabulary_size, 1)));
  for (auto c : source_categories()) {
    const auto it = per_category.find(c);
    const double count = it == per_category.end() ? 0.0 : static_cast<double>(it->second);
    r.set("source_" + std::string(c) + "_percentage", count / static_cast<double>(sourced));
  }
  return r;
}

FeatureRecord tweet_stylometry(std::span<const TweetRecord> tweets,
                               const text::LanguageDetector& detector) {
  return features_detail::tweet_stylometry(tweets, features_detail::analyze(tweets), detector);
}

FeatureRecord tweet_stylometry(std::span<const TweetRecord> tweets) {
  return tweet_stylometry(tweets, text::NgramProfileDetector::bundled());
}

FeatureRecord tweet_readability(std::span<const TweetRecord> tweets) {
  return features_detail::tweet_readability(features_detail::analyze(tweets));
}

double similarity_from_cv(std::span<const double> values) {
  if (values.empty()) return 1.0;
  const auto n = static_cast<double>(values.size());
  double m = 0;
  for (double v : values) m += v;
  m /= n;
  if (m == 0) return 1.0;
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  const double cv = std::sqrt(ss / n) / std::abs(m);
  return 1.0 / (1.0 + cv);
}

}  // namespace botminer
