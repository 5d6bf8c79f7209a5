#include <algorithm>
#include <fstream>
#include <functional>
#include <unordered_map>

#include "botminer/error.hpp"
#include "internal.hpp"

namespace botminer::ingest_detail {
namespace {

// Canonical field -> header spellings seen across dumps.
const std::unordered_map<std::string, std::vector<std::string>>& aliases() {
  static const std::unordered_map<std::string, std::vector<std::string>> kAliases{
      {"id", {"id", "user_id", "id_str"}},
      {"name", {"name", "user_name"}},
      {"screen_name", {"screen_name", "user_screen_name", "username"}},
      {"description", {"description", "user_description"}},
      {"location", {"location"}},
      {"url", {"url"}},
      {"protected", {"protected"}},
      {"verified", {"verified"}},
      {"followers_count", {"followers_count"}},
      {"friends_count", {"friends_count"}},
      {"favourites_count", {"favourites_count", "favorites_count"}},
      {"listed_count", {"listed_count"}},
      {"statuses_count", {"statuses_count"}},
      {"created_at", {"created_at", "timestamp"}},
      {"lang", {"lang"}},
      {"geo_enabled", {"geo_enabled"}},
      {"default_profile", {"default_profile"}},
      {"default_profile_image", {"default_profile_image"}},
      {"profile_background_color", {"profile_background_color"}},
      {"profile_link_color", {"profile_link_color"}},
      {"profile_sidebar_border_color", {"profile_sidebar_border_color"}},
      {"profile_sidebar_fill_color", {"profile_sidebar_fill_color"}},
      {"profile_text_color", {"profile_text_color"}},
      {"profile_background_image_url", {"profile_background_image_url", "profile_background_image_url_https"}},
      {"profile_background_tile", {"profile_background_tile"}},
      {"profile_use_background_image", {"profile_use_background_image"}},
      // tweets
      {"author_id", {"user_id", "author_id", "user"}},
      {"text", {"text", "full_text"}},
      {"source", {"source"}},
      {"retweeted_status_id", {"retweeted_status_id"}},
      {"in_reply_to_status_id", {"in_reply_to_status_id"}},
      {"in_reply_to_user_id", {"in_reply_to_user_id"}},
      {"num_hashtags", {"num_hashtags"}},
      {"num_mentions", {"num_mentions"}},
      {"num_urls", {"num_urls"}},
      {"retweet_count", {"retweet_count"}},
      {"favorite_count", {"favorite_count", "favourite_count"}},
  };
  return kAliases;
}

std::string lower(std::string_view s) {
  std::string out(trim(s));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

class Columns {
 public:
  explicit Columns(const std::vector<std::string>& header) : width_(header.size()) {
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < header.size(); ++i) pos.emplace(lower(header[i]), i);
    for (const auto& [field, names] : aliases()) {
      for (const auto& n : names) {
        if (auto it = pos.find(n); it != pos.end()) {
          index_.emplace(field, it->second);
          break;
        }
      }
    }
    raw_ = std::move(pos);
  }

  std::size_t width() const { return width_; }
  bool has(const std::string& field) const { return index_.contains(field); }

  std::string_view get(const std::vector<std::string>& row, const std::string& field) const {
    auto it = index_.find(field);
    return it == index_.end() ? std::string_view{} : std::string_view(row[it->second]);
  }

  std::optional<std::size_t> raw_index(const std::string& header_name) const {
    auto it = raw_.find(lower(header_name));
    if (it == raw_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::size_t width_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, std::size_t> raw_;
};

std::optional<std::string> optional_text(std::string_view s) {
  if (is_null_field(s)) return std::nullopt;
  return std::string(trim(s));
}

// Walks every data row of a CSV file; rows of the wrong width or with an
// unterminated quote count as rejected.
void for_each_row(const std::string& path, RawDataset& out,
                  const std::function<void(const Columns&)>& on_header,
                  const std::function<bool(const Columns&, const std::vector<std::string>&)>& on_row) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path);
  CsvReader reader(in);
  std::vector<std::string> row;
  bool ok = true;
  if (!reader.next(row, ok) || !ok) {
    throw Error(ErrorKind::SchemaMismatch, "missing header row in " + path);
  }
  const Columns cols(row);
  on_header(cols);
  while (reader.next(row, ok)) {
    if (row.size() == 1 && trim(row[0]).empty()) continue;  // blank line
    if (!ok || row.size() != cols.width() || !on_row(cols, row)) ++out.rejected;
  }
}

bool read_account(const Columns& c, const std::vector<std::string>& row, AccountRecord& a) {
  a.id = std::string(trim(c.get(row, "id")));
  if (a.id.empty()) return false;
  const auto created = parse_timestamp(c.get(row, "created_at"));
  if (!created) return false;
  a.created_at = *created;
  a.name = std::string(c.get(row, "name"));
  a.screen_name = std::string(trim(c.get(row, "screen_name")));
  a.description = is_null_field(c.get(row, "description")) ? "" : std::string(c.get(row, "description"));
  a.location = is_null_field(c.get(row, "location")) ? "" : std::string(c.get(row, "location"));
  a.url = optional_text(c.get(row, "url"));
  a.is_protected = parse_bool(c.get(row, "protected"));
  a.verified = parse_bool(c.get(row, "verified"));
  const std::pair<const char*, std::int64_t*> counts[] = {
      {"followers_count", &a.followers_count}, {"friends_count", &a.friends_count},
      {"favourites_count", &a.favourites_count}, {"listed_count", &a.listed_count},
      {"statuses_count", &a.statuses_count}};
  for (const auto& [field, dest] : counts) {
    const auto v = parse_count(c.get(row, field));
    if (!v) return false;
    *dest = *v;
  }
  a.lang = optional_text(c.get(row, "lang"));
  a.geo_enabled = parse_bool(c.get(row, "geo_enabled"));
  a.default_profile = parse_bool(c.get(row, "default_profile"));
  a.default_profile_image = parse_bool(c.get(row, "default_profile_image"));
  for (ColorField f : kColorFields) {
    a.color(f) = optional_text(c.get(row, std::string(color_field_name(f))));
  }
  a.profile_background_image_url = optional_text(c.get(row, "profile_background_image_url"));
  a.profile_background_tile = parse_bool(c.get(row, "profile_background_tile"));
  a.profile_use_background_image = parse_bool(c.get(row, "profile_use_background_image"));
  return true;
}

bool read_tweet(const Columns& c, const std::vector<std::string>& row, TweetRecord& t) {
  t.author_id = std::string(trim(c.get(row, "author_id")));
  if (t.author_id.empty() || is_null_field(t.author_id)) return false;
  if (auto dot = t.author_id.find('.'); dot != std::string::npos) {
    const auto v = parse_count(t.author_id);  // "12345.0" style ids
    if (!v) return false;
    t.author_id = std::to_string(*v);
  }
  t.created_at = parse_timestamp(c.get(row, "created_at"));
  t.text = std::string(c.get(row, "text"));
  if (c.has("source") && !is_null_field(c.get(row, "source"))) {
    t.source = clean_source(c.get(row, "source"));
  }
  t.is_retweet = id_is_set(c.get(row, "retweeted_status_id")) || has_retweet_marker(t.text);
  t.is_reply = !t.is_retweet && (id_is_set(c.get(row, "in_reply_to_status_id")) ||
                                 id_is_set(c.get(row, "in_reply_to_user_id")));
  const std::pair<const char*, std::optional<std::int64_t>*> counts[] = {
      {"num_hashtags", &t.num_hashtags}, {"num_mentions", &t.num_mentions},
      {"num_urls", &t.num_urls}, {"retweet_count", &t.retweet_count},
      {"favorite_count", &t.favorite_count}};
  for (const auto& [field, dest] : counts) {
    if (!c.has(field)) continue;
    const auto raw = c.get(row, field);
    if (is_null_field(raw)) continue;
    const auto v = parse_count(raw);
    if (!v || *v < 0) return false;
    *dest = *v;
  }
  return true;
}

}  // namespace

void load_cresci(const DatasetManifest& m, RawDataset& out) {
  // Users first so that a class suffix is known per file.
  for (const auto& [role, path] : m.paths) {
    if (!role.starts_with("users")) continue;
    const auto colon = role.find(':');
    const std::string role_class = colon == std::string::npos ? "" : role.substr(colon + 1);
    std::optional<std::size_t> class_col;
    for_each_row(
        path, out,
        [&](const Columns& cols) {
          if (!cols.has("id")) throw Error(ErrorKind::SchemaMismatch, "no id column in " + path);
          if (role_class.empty()) {
            class_col = cols.raw_index(m.class_column);
            if (!class_col) {
              throw Error(ErrorKind::SchemaMismatch,
                          "users file " + path + " has no '" + m.class_column +
                              "' column and its role names no class");
            }
          }
        },
        [&](const Columns& cols, const std::vector<std::string>& row) {
          RawAccount r;
          if (!read_account(cols, row, r.account)) return false;
          r.raw_class = role_class.empty() ? std::string(trim(row[*class_col])) : role_class;
          out.accounts.push_back(std::move(r));
          return true;
        });
  }
  for (const auto& [role, path] : m.paths) {
    if (!role.starts_with("tweets")) continue;
    for_each_row(
        path, out,
        [&](const Columns& cols) {
          if (!cols.has("author_id") || !cols.has("text")) {
            throw Error(ErrorKind::SchemaMismatch, "tweets file " + path + " lacks user_id/text");
          }
        },
        [&](const Columns& cols, const std::vector<std::string>& row) {
          TweetRecord t;
          if (!read_tweet(cols, row, t)) return false;
          out.tweets.add(std::move(t));
          return true;
        });
  }
}

}  // namespace botminer::ingest_detail
