#include "botminer/records.hpp"

#include <algorithm>
#include <cctype>

namespace botminer {

std::string_view to_string(Label l) { return l == Label::bot ? "bot" : "human"; }

std::optional<Label> parse_label(std::string_view s) {
  if (s == "bot") return Label::bot;
  if (s == "human") return Label::human;
  return std::nullopt;
}

std::string_view color_field_name(ColorField f) {
  switch (f) {
    case ColorField::background: return "profile_background_color";
    case ColorField::link: return "profile_link_color";
    case ColorField::sidebar_border: return "profile_sidebar_border_color";
    case ColorField::sidebar_fill: return "profile_sidebar_fill_color";
    case ColorField::text: return "profile_text_color";
  }
  return "";
}

const std::optional<std::string>& AccountRecord::color(ColorField f) const {
  switch (f) {
    case ColorField::background: return profile_background_color;
    case ColorField::link: return profile_link_color;
    case ColorField::sidebar_border: return profile_sidebar_border_color;
    case ColorField::sidebar_fill: return profile_sidebar_fill_color;
    case ColorField::text: return profile_text_color;
  }
  return profile_text_color;
}

std::optional<std::string>& AccountRecord::color(ColorField f) {
  return const_cast<std::optional<std::string>&>(std::as_const(*this).color(f));
}

bool has_retweet_marker(std::string_view text) { return text.starts_with("RT @"); }

std::optional<std::string> normalize_hex_color(std::string_view raw) {
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
  if (!raw.empty() && raw.front() == '#') raw.remove_prefix(1);
  if (raw.size() != 3 && raw.size() != 6) return std::nullopt;
  std::string out;
  out.reserve(6);
  for (char c : raw) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) return std::nullopt;
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out.push_back(up);
    if (raw.size() == 3) out.push_back(up);
  }
  return out;
}

std::vector<std::string> validate_account(const AccountRecord& a) {
  std::vector<std::string> v;
  if (a.id.empty()) v.emplace_back("id empty");
  const std::pair<std::string_view, std::int64_t> counts[] = {
      {"followers_count", a.followers_count}, {"friends_count", a.friends_count},
      {"favourites_count", a.favourites_count}, {"listed_count", a.listed_count},
      {"statuses_count", a.statuses_count}};
  for (const auto& [name, value] : counts) {
    if (value < 0) v.push_back(std::string(name) + " negative");
  }
  for (ColorField f : kColorFields) {
    const auto& c = a.color(f);
    if (c && !normalize_hex_color(*c)) {
      v.push_back(std::string(color_field_name(f)) + " invalid hex color");
    }
  }
  if (a.crawl_time < a.created_at) v.emplace_back("crawl_time before created_at");
  return v;
}

std::vector<std::string> validate_tweet(const TweetRecord& t) {
  std::vector<std::string> v;
  if (t.author_id.empty()) v.emplace_back("author_id empty");
  const std::pair<std::string_view, const std::optional<std::int64_t>*> counts[] = {
      {"num_hashtags", &t.num_hashtags}, {"num_mentions", &t.num_mentions},
      {"num_urls", &t.num_urls}, {"retweet_count", &t.retweet_count},
      {"favorite_count", &t.favorite_count}};
  for (const auto& [name, value] : counts) {
    if (*value && **value < 0) v.push_back(std::string(name) + " negative");
  }
  if (t.is_retweet && t.is_reply) v.emplace_back("both retweet and reply");
  return v;
}

AccountRecord normalize_account(AccountRecord a) {
  for (ColorField f : kColorFields) {
    auto& c = a.color(f);
    if (c) c = normalize_hex_color(*c);
  }
  return a;
}

std::string_view to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::cresci_csv: return "cresci-csv";
    case DatasetFormat::twibot_json: return "twibot-json";
    case DatasetFormat::synthetic: return "synthetic";
  }
  return "";
}

std::optional<DatasetFormat> parse_dataset_format(std::string_view s) {
  if (s == "cresci-csv") return DatasetFormat::cresci_csv;
  if (s == "twibot-json") return DatasetFormat::twibot_json;
  if (s == "synthetic") return DatasetFormat::synthetic;
  return std::nullopt;
}

const std::map<std::string, std::string>& standard_platform_defaults() {
  static const std::map<std::string, std::string> kDefaults{
      {"profile_background_color", "C0DEED"},
      {"profile_link_color", "0084B4"},
      {"profile_sidebar_border_color", "C0DEED"},
      {"profile_sidebar_fill_color", "DDEEF6"},
      {"profile_text_color", "333333"},
      {"profile_background_image_url", "/images/themes/theme1/bg.png"},
  };
  return kDefaults;
}

}  // namespace botminer
