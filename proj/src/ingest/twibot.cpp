#include <fstream>
#include <sstream>

#include <json.hpp>

#include "botminer/error.hpp"
#include "internal.hpp"

namespace botminer::ingest_detail {
namespace {

using nlohmann::json;

// Calls fn on the text of each element of a top-level JSON array without
// building the whole document in memory.
template <typename Fn>
void for_each_array_element(const std::string& text, const std::string& path, Fn&& fn) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && static_cast<unsigned char>(text[i]) == 0xEF) i += 3;  // BOM
  if (i >= text.size() || text[i] != '[') {
    throw Error(ErrorKind::SchemaMismatch, path + " is not a JSON array");
  }
  ++i;
  int depth = 0;
  bool in_string = false;
  std::size_t start = std::string::npos;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      if (start == std::string::npos) start = i;
    } else if (c == '{' || c == '[') {
      if (depth == 0) start = i;
      ++depth;
    } else if (c == '}' || c == ']') {
      if (depth == 0) return;  // end of the top-level array
      --depth;
      if (depth == 0) {
        fn(std::string_view(text).substr(start, i - start + 1));
        start = std::string::npos;
      }
    } else if (c == ',' && depth == 0) {
      start = std::string::npos;
    }
  }
}

std::string field_text(const json& profile, const char* key) {
  if (!profile.contains(key) || profile.at(key).is_null()) return {};
  const auto& v = profile.at(key);
  if (v.is_string()) return std::string(trim(v.get_ref<const std::string&>()));
  if (v.is_boolean()) return v.get<bool>() ? "True" : "False";
  return v.dump();
}

std::optional<std::string> optional_field(const json& profile, const char* key) {
  std::string s = field_text(profile, key);
  if (is_null_field(s)) return std::nullopt;
  return s;
}

bool read_profile(const json& p, AccountRecord& a) {
  const auto created = parse_timestamp(field_text(p, "created_at"));
  if (!created) return false;
  a.created_at = *created;
  a.name = field_text(p, "name");
  a.screen_name = field_text(p, "screen_name");
  a.description = field_text(p, "description");
  a.location = field_text(p, "location");
  a.url = optional_field(p, "url");
  a.is_protected = parse_bool(field_text(p, "protected"));
  a.verified = parse_bool(field_text(p, "verified"));
  const std::pair<const char*, std::int64_t*> counts[] = {
      {"followers_count", &a.followers_count}, {"friends_count", &a.friends_count},
      {"favourites_count", &a.favourites_count}, {"listed_count", &a.listed_count},
      {"statuses_count", &a.statuses_count}};
  for (const auto& [key, dest] : counts) {
    const auto v = parse_count(field_text(p, key));
    if (!v) return false;
    *dest = *v;
  }
  a.lang = optional_field(p, "lang");
  a.geo_enabled = parse_bool(field_text(p, "geo_enabled"));
  a.default_profile = parse_bool(field_text(p, "default_profile"));
  a.default_profile_image = parse_bool(field_text(p, "default_profile_image"));
  for (ColorField f : kColorFields) {
    a.color(f) = optional_field(p, std::string(color_field_name(f)).c_str());
  }
  a.profile_background_image_url = optional_field(p, "profile_background_image_url");
  a.profile_background_tile = parse_bool(field_text(p, "profile_background_tile"));
  a.profile_use_background_image = parse_bool(field_text(p, "profile_use_background_image"));
  return true;
}

}  // namespace

void load_twibot(const DatasetManifest& m, RawDataset& out) {
  for (const auto& [role, path] : m.paths) {
    if (role == "support" || role.starts_with("support:")) continue;  // unlabeled neighbours
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    for_each_array_element(text, path, [&](std::string_view element) {
      json obj;
      try {
        obj = json::parse(element);
      } catch (const json::exception&) {
        ++out.rejected;
        return;
      }
      if (!obj.is_object() || !obj.contains("label") || obj.at("label").is_null()) {
        return;  // unlabeled entries are not part of the labeled corpus
      }
      const json& label = obj.at("label");
      RawAccount r;
      r.raw_class = label.is_string() ? std::string(trim(label.get_ref<const std::string&>()))
                                      : label.dump();
      const json empty = json::object();
      const json& profile = obj.contains("profile") && obj.at("profile").is_object()
                                ? obj.at("profile")
                                : empty;
      r.account.id = obj.contains("ID") ? field_text(obj, "ID") : field_text(profile, "id_str");
      if (r.account.id.empty() || !read_profile(profile, r.account)) {
        ++out.rejected;
        return;
      }
      if (obj.contains("tweet") && obj.at("tweet").is_array()) {
        for (const auto& tw : obj.at("tweet")) {
          if (!tw.is_string()) continue;
          TweetRecord t;
          t.author_id = r.account.id;
          t.text = tw.get<std::string>();
          t.is_retweet = has_retweet_marker(t.text);
          t.is_reply = !t.is_retweet && t.text.starts_with("@");
          out.tweets.add(std::move(t));
        }
      }
      out.accounts.push_back(std::move(r));
    });
  }
}

}  // namespace botminer::ingest_detail
