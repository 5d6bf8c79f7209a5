#include <fstream>
#include <sstream>

#include <json.hpp>

#include "botminer/error.hpp"
#include "botminer/ingest.hpp"

namespace botminer {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::ConfigError, "manifest: " + what);
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) config_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

SyntheticSpec parse_synthetic(const json& j) {
  SyntheticSpec s;
  s.n_accounts = j.value("n_accounts", s.n_accounts);
  s.bot_fraction = j.value("bot_fraction", s.bot_fraction);
  s.signal = j.value("signal", s.signal);
  s.tweets_per_account = j.value("tweets_per_account", s.tweets_per_account);
  s.seed = j.value("seed", s.seed);
  s.tweetless_bot_fraction = j.value("tweetless_bot_fraction", s.tweetless_bot_fraction);
  if (s.signal != "both" && s.signal != "account" && s.signal != "content" && s.signal != "none") {
    config_error("synthetic.signal must be both, account, content or none");
  }
  if (s.bot_fraction < 0.0 || s.bot_fraction > 1.0) config_error("synthetic.bot_fraction out of [0,1]");
  if (s.tweetless_bot_fraction < 0.0 || s.tweetless_bot_fraction > 1.0) {
    config_error("synthetic.tweetless_bot_fraction out of [0,1]");
  }
  return s;
}

}  // namespace

DatasetManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("top level must be an object");

  DatasetManifest m;
  try {
    m.dataset_id = require(j, "dataset_id").get<std::string>();
    const auto format = parse_dataset_format(require(j, "format").get<std::string>());
    if (!format) config_error("unknown format");
    m.format = *format;

    if (j.contains("paths")) {
      for (const auto& [role, p] : j.at("paths").items()) {
        std::filesystem::path path = p.get<std::string>();
        if (path.is_relative()) path = base_dir / path;
        m.paths.emplace(role, path.lexically_normal().string());
      }
    }
    if (j.contains("class_mapping")) {
      for (const auto& [raw, l] : j.at("class_mapping").items()) {
        const auto label = parse_label(l.get<std::string>());
        if (!label) config_error("class_mapping value for '" + raw + "' must be human or bot");
        m.class_mapping.emplace(raw, *label);
      }
    }
    if (j.contains("crawl_time")) {
      const auto t = parse_timestamp(j.at("crawl_time").get<std::string>());
      if (!t) config_error("unparseable crawl_time");
      m.crawl_time = *t;
    }
    m.platform_defaults = standard_platform_defaults();
    if (j.contains("platform_defaults")) {
      for (const auto& [field, v] : j.at("platform_defaults").items()) {
        std::string value = v.get<std::string>();
        if (field != "profile_background_image_url") {
          const auto norm = normalize_hex_color(value);
          if (!norm) config_error("platform default for " + field + " is not a hex colour");
          value = *norm;
        }
        m.platform_defaults[field] = value;
      }
    }
    if (j.contains("max_tweets_per_user") && !j.at("max_tweets_per_user").is_null()) {
      const auto v = j.at("max_tweets_per_user").get<long long>();
      if (v < 1) config_error("max_tweets_per_user must be positive");
      m.max_tweets_per_user = static_cast<std::size_t>(v);
    }
    m.class_column = j.value("class_column", m.class_column);
    if (j.contains("synthetic")) m.synthetic = parse_synthetic(j.at("synthetic"));
  } catch (const json::exception& e) {
    config_error(std::string("wrong value type: ") + e.what());
  }
  if (m.format != DatasetFormat::synthetic && m.paths.empty()) config_error("no paths given");
  if (m.format == DatasetFormat::twibot_json && m.class_mapping.empty()) {
    m.class_mapping = {{"0", Label::human}, {"1", Label::bot}};
  }
  if (m.format == DatasetFormat::synthetic && m.class_mapping.empty()) {
    m.class_mapping = {{"human", Label::human}, {"bot", Label::bot}};
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

}  // namespace botminer
