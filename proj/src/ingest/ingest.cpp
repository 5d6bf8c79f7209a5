#include <algorithm>
#include <charconv>
#include <set>

#include "botminer/error.hpp"
#include "internal.hpp"

namespace botminer {
namespace ingest_detail {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_null_field(std::string_view s) {
  s = trim(s);
  return s.empty() || s == "NULL" || s == "null" || s == "None" || s == "NaN" || s == "nan";
}

std::optional<std::int64_t> parse_count(std::string_view s) {
  s = trim(s);
  if (is_null_field(s)) return 0;
  // Exports sometimes write integers as floats ("12.0").
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    if (!std::all_of(frac.begin(), frac.end(), [](char c) { return c == '0'; })) return std::nullopt;
    s = s.substr(0, dot);
  }
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool parse_bool(std::string_view s) {
  s = trim(s);
  return s == "1" || s == "true" || s == "True" || s == "TRUE" || s == "t" || s == "yes" ||
         s == "1.0";
}

std::string clean_source(std::string_view s) {
  s = trim(s);
  const auto open = s.find('>');
  if (s.starts_with("<") && open != std::string_view::npos) {
    const auto close = s.find('<', open + 1);
    s = s.substr(open + 1, close == std::string_view::npos ? std::string_view::npos : close - open - 1);
  }
  return std::string(trim(s));
}

bool id_is_set(std::string_view s) {
  s = trim(s);
  return !is_null_field(s) && s != "0" && s != "0.0";
}

void TweetCollector::add(TweetRecord t) {
  auto& items = by_author_[t.author_id];
  items.push_back(Item{std::move(t), seq_++});
  ++accepted_;
  if (max_ && items.size() >= 2 * *max_ + 16) trim(items, *max_);
}

void TweetCollector::trim(std::vector<Item>& items, std::size_t keep) {
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    const auto ka = a.tweet.created_at.value_or(Timestamp::min());
    const auto kb = b.tweet.created_at.value_or(Timestamp::min());
    if (ka != kb) return ka < kb;
    return a.seq < b.seq;
  });
  if (items.size() > keep) {
    truncated_ += items.size() - keep;
    items.erase(items.begin(), items.end() - static_cast<std::ptrdiff_t>(keep));
  }
}

TweetsByAuthor TweetCollector::finish(const std::vector<AccountRecord>& known, IngestReport& report) {
  std::set<std::string_view> ids;
  for (const auto& a : known) ids.insert(a.id);
  TweetsByAuthor out;
  for (auto& [author, items] : by_author_) {
    if (!ids.contains(author)) {
      report.tweets_orphaned += items.size();
      continue;
    }
    trim(items, max_.value_or(items.size()));
    auto& dest = out[author];
    dest.reserve(items.size());
    for (auto& it : items) dest.push_back(std::move(it.tweet));
  }
  by_author_.clear();
  report.tweets_truncated = truncated_;
  for (const auto& [author, list] : out) report.tweets_read += list.size();
  return out;
}

Corpus finalize(const DatasetManifest& m, RawDataset&& raw) {
  Corpus c;
  c.dataset_id = m.dataset_id;
  c.report.rows_rejected = raw.rejected;

  for (const auto& r : raw.accounts) {
    if (!m.class_mapping.contains(r.raw_class)) {
      throw Error(ErrorKind::UnmappedClass,
                  "class '" + r.raw_class + "' has no entry in class_mapping");
    }
  }

  Timestamp crawl = m.crawl_time;
  if (crawl == Timestamp{}) {
    // No reference instant given: the newest creation date in the dump.
    for (const auto& r : raw.accounts) crawl = std::max(crawl, r.account.created_at);
  }

  std::stable_sort(raw.accounts.begin(), raw.accounts.end(),
                   [](const RawAccount& a, const RawAccount& b) { return a.account.id < b.account.id; });
  for (std::size_t i = 0; i < raw.accounts.size(); ++i) {
    auto& r = raw.accounts[i];
    if (i > 0 && raw.accounts[i - 1].account.id == r.account.id) {
      ++c.report.rows_rejected;  // duplicate id, first occurrence wins
      continue;
    }
    r.account.label = m.class_mapping.at(r.raw_class);
    r.account.crawl_time = crawl;
    if (!validate_account(r.account).empty()) {
      ++c.report.rows_rejected;
      continue;
    }
    c.accounts.push_back(normalize_account(std::move(r.account)));
    ++c.report.per_class_counts[r.raw_class];
  }
  c.report.accounts_read = c.accounts.size();
  if (c.accounts.empty()) {
    throw Error(ErrorKind::EmptyDataset, "no parseable accounts in dataset " + m.dataset_id);
  }
  c.tweets = raw.tweets.finish(c.accounts, c.report);
  return c;
}

}  // namespace ingest_detail

Corpus ingest(const DatasetManifest& manifest) {
  using namespace ingest_detail;
  if (manifest.format == DatasetFormat::synthetic) return generate_synthetic(manifest);
  for (const auto& [role, path] : manifest.paths) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
      throw Error(ErrorKind::IoFailure, "missing file for role '" + role + "': " + path);
    }
  }
  RawDataset raw(manifest.max_tweets_per_user);
  if (manifest.format == DatasetFormat::cresci_csv) {
    load_cresci(manifest, raw);
  } else {
    load_twibot(manifest, raw);
  }
  return finalize(manifest, std::move(raw));
}

}  // namespace botminer
