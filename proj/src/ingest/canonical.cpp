#include <cstring>
#include <fstream>

#include <json.hpp>

#include "botminer/error.hpp"
#include "botminer/ingest.hpp"

// Layout after the header: per account, the account record followed by a
// u32 tweet count and that many tweet records. Strings are u32 length +
// bytes, integers little-endian i64, booleans one byte, optionals a presence
// byte followed by the value.

namespace botminer {
namespace {

constexpr char kMagic[8] = {'B', 'M', 'C', 'A', 'N', 'O', 'N', '\n'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) {
    const auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void time(Timestamp t) { i64(t.time_since_epoch().count()); }
  void opt_str(const std::optional<std::string>& s) {
    u8(s ? 1 : 0);
    if (s) str(*s);
  }
  void opt_i64(const std::optional<std::int64_t>& v) {
    u8(v ? 1 : 0);
    if (v) i64(*v);
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

  std::uint8_t u8() {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) fail();
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::int64_t i64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return static_cast<std::int64_t>(v);
  }
  std::string str() {
    const std::uint32_t n = u32();
    std::string s(n, '\0');
    in_.read(s.data(), n);
    if (static_cast<std::uint32_t>(in_.gcount()) != n) fail();
    return s;
  }
  bool boolean() { return u8() != 0; }
  Timestamp time() { return Timestamp(std::chrono::seconds(i64())); }
  std::optional<std::string> opt_str() {
    if (!boolean()) return std::nullopt;
    return str();
  }
  std::optional<std::int64_t> opt_i64() {
    if (!boolean()) return std::nullopt;
    return i64();
  }

  [[noreturn]] void fail() const {
    throw Error(ErrorKind::SchemaMismatch, "truncated canonical file " + path_);
  }

 private:
  std::istream& in_;
  std::string path_;
};

void write_account(Writer& w, const AccountRecord& a) {
  w.str(a.id);
  w.time(a.created_at);
  w.str(a.name);
  w.str(a.screen_name);
  w.str(a.description);
  w.str(a.location);
  w.opt_str(a.url);
  w.u8(a.is_protected);
  w.u8(a.verified);
  w.i64(a.followers_count);
  w.i64(a.friends_count);
  w.i64(a.favourites_count);
  w.i64(a.listed_count);
  w.i64(a.statuses_count);
  w.opt_str(a.lang);
  w.u8(a.geo_enabled);
  w.u8(a.default_profile);
  w.u8(a.default_profile_image);
  for (ColorField f : kColorFields) w.opt_str(a.color(f));
  w.opt_str(a.profile_background_image_url);
  w.u8(a.profile_background_tile);
  w.u8(a.profile_use_background_image);
  w.u8(static_cast<std::uint8_t>(to_int(a.label)));
  w.time(a.crawl_time);
}

AccountRecord read_account(Reader& r) {
  AccountRecord a;
  a.id = r.str();
  a.created_at = r.time();
  a.name = r.str();
  a.screen_name = r.str();
  a.description = r.str();
  a.location = r.str();
  a.url = r.opt_str();
  a.is_protected = r.boolean();
  a.verified = r.boolean();
  a.followers_count = r.i64();
  a.friends_count = r.i64();
  a.favourites_count = r.i64();
  a.listed_count = r.i64();
  a.statuses_count = r.i64();
  a.lang = r.opt_str();
  a.geo_enabled = r.boolean();
  a.default_profile = r.boolean();
  a.default_profile_image = r.boolean();
  for (ColorField f : kColorFields) a.color(f) = r.opt_str();
  a.profile_background_image_url = r.opt_str();
  a.profile_background_tile = r.boolean();
  a.profile_use_background_image = r.boolean();
  a.label = r.boolean() ? Label::bot : Label::human;
  a.crawl_time = r.time();
  return a;
}

void write_tweet(Writer& w, const TweetRecord& t) {
  w.str(t.author_id);
  w.u8(t.created_at ? 1 : 0);
  if (t.created_at) w.time(*t.created_at);
  w.str(t.text);
  w.opt_str(t.source);
  w.u8(t.is_retweet);
  w.u8(t.is_reply);
  w.opt_i64(t.num_hashtags);
  w.opt_i64(t.num_mentions);
  w.opt_i64(t.num_urls);
  w.opt_i64(t.retweet_count);
  w.opt_i64(t.favorite_count);
}

TweetRecord read_tweet(Reader& r) {
  TweetRecord t;
  t.author_id = r.str();
  if (r.boolean()) t.created_at = r.time();
  t.text = r.str();
  t.source = r.opt_str();
  t.is_retweet = r.boolean();
  t.is_reply = r.boolean();
  t.num_hashtags = r.opt_i64();
  t.num_mentions = r.opt_i64();
  t.num_urls = r.opt_i64();
  t.retweet_count = r.opt_i64();
  t.favorite_count = r.opt_i64();
  return t;
}

nlohmann::json report_json(const IngestReport& rep) {
  return {{"accounts_read", rep.accounts_read},
          {"tweets_read", rep.tweets_read},
          {"rows_rejected", rep.rows_rejected},
          {"per_class_counts", rep.per_class_counts},
          {"tweets_orphaned", rep.tweets_orphaned},
          {"tweets_truncated", rep.tweets_truncated}};
}

}  // namespace

void write_canonical(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
  nlohmann::json header{{"version", kCanonicalVersion},
                        {"dataset_id", corpus.dataset_id},
                        {"accounts", corpus.accounts.size()},
                        {"report", report_json(corpus.report)}};
  const std::string h = header.dump();
  out.write(kMagic, sizeof kMagic);
  Writer w(out);
  w.u32(static_cast<std::uint32_t>(h.size()));
  out.write(h.data(), static_cast<std::streamsize>(h.size()));
  static const std::vector<TweetRecord> kNone;
  for (const auto& a : corpus.accounts) {
    write_account(w, a);
    auto it = corpus.tweets.find(a.id);
    const auto& tweets = it == corpus.tweets.end() ? kNone : it->second;
    w.u32(static_cast<std::uint32_t>(tweets.size()));
    for (const auto& t : tweets) write_tweet(w, t);
  }
  out.flush();
  if (!out) throw Error(ErrorKind::IoFailure, "write failed for " + path.string());
}

Corpus read_canonical(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  char magic[sizeof kMagic];
  in.read(magic, sizeof magic);
  if (in.gcount() != sizeof magic || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw Error(ErrorKind::SchemaMismatch, path.string() + " is not a canonical corpus file");
  }
  Reader r(in, path.string());
  const std::uint32_t hlen = r.u32();
  std::string h(hlen, '\0');
  in.read(h.data(), hlen);
  if (static_cast<std::uint32_t>(in.gcount()) != hlen) r.fail();
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(h);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::SchemaMismatch, "corrupt header in " + path.string());
  }
  const std::string version = header.value("version", "");
  if (version != kCanonicalVersion) {
    throw Error(ErrorKind::SchemaMismatch, "canonical version '" + version + "' in " +
                                               path.string() + ", expected " +
                                               std::string(kCanonicalVersion));
  }
  Corpus c;
  c.dataset_id = header.value("dataset_id", "");
  const auto& rep = header.at("report");
  c.report.accounts_read = rep.at("accounts_read").get<std::size_t>();
  c.report.tweets_read = rep.at("tweets_read").get<std::size_t>();
  c.report.rows_rejected = rep.at("rows_rejected").get<std::size_t>();
  c.report.per_class_counts = rep.at("per_class_counts").get<std::map<std::string, std::size_t>>();
  c.report.tweets_orphaned = rep.value("tweets_orphaned", std::size_t{0});
  c.report.tweets_truncated = rep.value("tweets_truncated", std::size_t{0});
  const auto n = header.at("accounts").get<std::size_t>();
  c.accounts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.accounts.push_back(read_account(r));
    const std::uint32_t k = r.u32();
    if (k == 0) continue;
    auto& tweets = c.tweets[c.accounts.back().id];
    tweets.reserve(k);
    for (std::uint32_t j = 0; j < k; ++j) tweets.push_back(read_tweet(r));
  }
  return c;
}

}  // namespace botminer
