#include <algorithm>
#include <cmath>
#include <map>

#include "botminer/error.hpp"
#include "botminer/features.hpp"
#include "botminer/textstats.hpp"

namespace botminer {
namespace {

double ratio(double num, double den) { return num / std::max(den, 1.0); }

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

void FeatureRecord::set(std::string name, double v) { values.emplace_back(std::move(name), v); }

void FeatureRecord::mask(std::string name) {
  values.emplace_back(name, 0.0);
  masked.push_back(std::move(name));
}

bool FeatureRecord::has(std::string_view name) const {
  return std::any_of(values.begin(), values.end(), [&](const auto& p) { return p.first == name; });
}

double FeatureRecord::get(std::string_view name) const {
  for (const auto& [n, v] : values) {
    if (n == name) return v;
  }
  throw Error(ErrorKind::InvalidArgument, "no feature '" + std::string(name) + "' in record");
}

bool FeatureRecord::is_masked(std::string_view name) const {
  return std::find(masked.begin(), masked.end(), name) != masked.end();
}

void FeatureRecord::merge(const FeatureRecord& other) {
  values.insert(values.end(), other.values.begin(), other.values.end());
  masked.insert(masked.end(), other.masked.begin(), other.masked.end());
}

double user_age_days(const AccountRecord& a) {
  const auto secs = (a.crawl_time - a.created_at).count();
  return std::max(1.0, static_cast<double>(secs) / 86400.0);
}

FeatureRecord account_ratios(const AccountRecord& a) {
  FeatureRecord r;
  const double age = user_age_days(a);
  const auto followers = static_cast<double>(a.followers_count);
  const auto friends = static_cast<double>(a.friends_count);
  r.set("followers_growth_rate", followers / age);
  r.set("friends_growth_rate", friends / age);
  r.set("favourites_growth_rate", static_cast<double>(a.favourites_count) / age);
  r.set("listed_growth_rate", static_cast<double>(a.listed_count) / age);
  r.set("followers_friends_ratio", ratio(followers, friends));
  r.set("average_favorites", ratio(static_cast<double>(a.favourites_count), followers));
  r.set("reputation", ratio(followers, followers + friends));
  r.set("user_age", age);
  r.set("tweet_freq", static_cast<double>(a.statuses_count) / age);
  return r;
}

FeatureRecord average_retweets(const AccountRecord& a, std::span<const TweetRecord> tweets) {
  FeatureRecord r;
  if (tweets.empty()) {
    r.mask("average_retweets");
    return r;
  }
  const auto rts = std::count_if(tweets.begin(), tweets.end(),
                                 [](const TweetRecord& t) { return t.is_retweet; });
  r.set("average_retweets", ratio(static_cast<double>(rts), static_cast<double>(a.followers_count)));
  return r;
}

FeatureRecord name_features(const AccountRecord& a) {
  using namespace text;
  FeatureRecord r;
  const double sn_len = static_cast<double>(code_point_count(a.screen_name));
  const double name_len = static_cast<double>(code_point_count(a.name));
  r.set("screen_name_length", sn_len);
  r.set("name_length", name_len);
  r.set("description_length", static_cast<double>(code_point_count(a.description)));
  r.set("description_digits_count", static_cast<double>(digit_count(a.description)));
  r.set("description_mean_bigram_freq", mean_bigram_freq(a.description));
  r.set("screen_name_digits_count", static_cast<double>(digit_count(a.screen_name)));
  r.set("name_digits_count", static_cast<double>(digit_count(a.name)));
  r.set("screen_name_mean_bigram_freq", mean_bigram_freq(a.screen_name));
  r.set("screen_name_entropy", shannon_entropy(a.screen_name));
  r.set("name_mean_bigram_freq", mean_bigram_freq(a.name));
  r.set("name_entropy", shannon_entropy(a.name));
  r.set("description_entropy", shannon_entropy(a.description));
  r.set("name_sim", string_similarity(a.name, a.screen_name));
  r.set("name_ratio", ratio(name_len, sn_len));
  r.set("name_contains_bot", count_substring_ci(a.name, "bot") > 0 ? 1.0 : 0.0);
  r.set("screen_name_contains_bot", count_substring_ci(a.screen_name, "bot") > 0 ? 1.0 : 0.0);
  r.set("description_contains_bot", count_substring_ci(a.description, "bot") > 0 ? 1.0 : 0.0);

  const EntitySet e = extract_entities(a.description);
  r.set("description_hashtag_count", static_cast<double>(e.hashtags.size()));
  r.set("description_url_count", static_cast<double>(e.urls.size()));
  r.set("description_unique_url_count", static_cast<double>(unique_count(e.urls)));
  r.set("description_unique_mention_count", static_cast<double>(unique_count(e.mentions)));

  const TokenizedText t = tokenize(e.stripped);
  const CasingFractions cf = casing_fractions(t);
  r.set("description_fraction_of_words_lowercase", cf.lower);
  r.set("description_fraction_of_words_uppercase", cf.upper);
  r.set("description_fraction_of_words_tilecase", cf.title);
  std::size_t letters = 0;
  for (const auto& w : t.words) letters += code_point_count(w);
  const auto n_words = static_cast<double>(t.words.size());
  r.set("description_word_count", n_words);
  r.set("description_sentence_count", static_cast<double>(t.sentences.size()));
  r.set("description_average_word_length", t.words.empty() ? 0.0 : static_cast<double>(letters) / n_words);
  r.set("description_average_words_per_sentence",
        t.sentences.empty() ? 0.0 : n_words / static_cast<double>(t.sentences.size()));
  return r;
}

FeatureRecord description_readability(const AccountRecord& a) {
  FeatureRecord r;
  const auto rd = text::readability(text::tokenize(text::extract_entities(a.description).stripped));
  const auto values = rd.values();
  const auto& names = text::readability_names();
  for (std::size_t i = 0; i < text::kReadabilityCount; ++i) {
    std::string name = "description_" + std::string(names[i]);
    if (rd.degenerate) {
      r.mask(std::move(name));
    } else {
      r.set(std::move(name), values[i]);
    }
  }
  return r;
}

FeatureRecord raw_features(const AccountRecord& a) {
  FeatureRecord r;
  r.set("followers_count", static_cast<double>(a.followers_count));
  r.set("friends_count", static_cast<double>(a.friends_count));
  r.set("favourites_count", static_cast<double>(a.favourites_count));
  r.set("listed_count", static_cast<double>(a.listed_count));
  r.set("statuses_count", static_cast<double>(a.statuses_count));
  r.set("verified", a.verified ? 1.0 : 0.0);
  r.set("protected", a.is_protected ? 1.0 : 0.0);
  r.set("geo_enabled", a.geo_enabled ? 1.0 : 0.0);
  r.set("default_profile", a.default_profile ? 1.0 : 0.0);
  r.set("default_profile_image", a.default_profile_image ? 1.0 : 0.0);
  r.set("profile_use_background_image", a.profile_use_background_image ? 1.0 : 0.0);
  return r;
}

ColorBin ColorBinningModel::bin(ColorField f, const std::optional<std::string>& value) const {
  if (!value || value->empty()) return ColorBin::absent;
  const auto i = static_cast<std::size_t>(f);
  if (*value == defaults[i]) return ColorBin::default_value;
  return std::binary_search(common[i].begin(), common[i].end(), *value) ? ColorBin::common
                                                                          : ColorBin::uncommon;
}

ColorBinningModel fit_color_model(std::span<const ColorValues> colors,
                                  std::span<const std::size_t> rows,
                                  const std::map<std::string, std::string>& defaults) {
  if (rows.empty()) throw Error(ErrorKind::EmptyDataset, "colour model fitted on no accounts");
  ColorBinningModel m;
  for (ColorField f : kColorFields) {
    const auto i = static_cast<std::size_t>(f);
    const auto it = defaults.find(std::string(color_field_name(f)));
    if (it != defaults.end()) {
      m.defaults[i] = normalize_hex_color(it->second).value_or(it->second);
    }
    std::map<std::string, std::size_t> freq;
    for (std::size_t r : rows) {
      const auto& v = colors[r][i];
      if (v && !v->empty() && *v != m.defaults[i]) ++freq[*v];
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    // Map order is lexicographic, so a stable sort by count keeps the
    // smaller hex first among ties.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t k = 0; k < ranked.size() && k < ColorBinningModel::kCommonSize; ++k) {
      m.common[i].push_back(ranked[k].first);
    }
    std::sort(m.common[i].begin(), m.common[i].end());
  }
  if (const auto it = defaults.find("profile_background_image_url"); it != defaults.end()) {
    m.background_image_default = it->second;
  }
  return m;
}

ColorBinningModel fit_color_model(std::span<const AccountRecord> accounts,
                                  const std::map<std::string, std::string>& defaults) {
  std::vector<ColorValues> colors;
  colors.reserve(accounts.size());
  for (const auto& a : accounts) {
    ColorValues c;
    for (ColorField f : kColorFields) c[static_cast<std::size_t>(f)] = a.color(f);
    colors.push_back(std::move(c));
  }
  return fit_color_model(colors, iota_indices(colors.size()), defaults);
}

std::array<std::string, 3> color_bin_names(ColorField f) {
  if (f == ColorField::background) {
    return {"profile_background_color_is_default", "profile_background_color_is_common",
            "profile_background_color_is_uncommon"};
  }
  const std::string base(color_field_name(f));
  return {base + "_default", base + "_common", base + "_uncommon"};
}

FeatureRecord color_features(const AccountRecord& a, const ColorBinningModel& m) {
  FeatureRecord r;
  for (ColorField f : kColorFields) {
    const auto names = color_bin_names(f);
    const ColorBin b = m.bin(f, a.color(f));
    if (b == ColorBin::absent) {
      for (const auto& n : names) r.mask(n);
      continue;
    }
    r.set(names[0], b == ColorBin::default_value ? 1.0 : 0.0);
    r.set(names[1], b == ColorBin::common ? 1.0 : 0.0);
    r.set(names[2], b == ColorBin::uncommon ? 1.0 : 0.0);
  }
  r.set("has_profile_background_tile", a.profile_background_tile ? 1.0 : 0.0);
  double image = 2.0;
  if (a.profile_background_image_url && !a.profile_background_image_url->empty()) {
    const std::string url = lowercase_ascii(*a.profile_background_image_url);
    const std::string def = lowercase_ascii(m.background_image_default);
    image = !def.empty() && url.find(def) != std::string::npos ? 0.0 : 1.0;
  }
  r.set("profile_background_image_url_default_other_none", image);
  return r;
}

}  // namespace botminer
