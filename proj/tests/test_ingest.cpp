#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "botminer/error.hpp"
#include "botminer/ingest.hpp"

using namespace botminer;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("botminer_test_ingest_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path write(const std::string& name, const std::string& content) const {
    std::ofstream(path / name, std::ios::binary) << content;
    return path / name;
  }
};

const char* kUsersHeader =
    "id,name,screen_name,followers_count,friends_count,statuses_count,created_at,"
    "profile_background_color\n";

std::string user_row(const std::string& id, const std::string& followers) {
  return id + ",User " + id + ",user" + id + "," + followers +
         ",10,5,Tue Jun 11 11:20:35 +0000 2013,c0deed\n";
}

DatasetManifest cresci_manifest(const TempDir& dir) {
  const std::string json = R"({"dataset_id": "cresci-15", "format": "cresci-csv",
    "crawl_time": "2015-01-01T00:00:00Z",
    "paths": {"users:genuine": "humans.csv", "users:fake": "bots.csv",
              "tweets:genuine": "tweets.csv"},
    "class_mapping": {"genuine": "human", "fake": "bot"}})";
  return parse_manifest(json, dir.path);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no Error thrown");
  return ErrorKind::InvalidArgument;
}

Corpus synthetic(std::size_t n, std::uint64_t seed, std::size_t tweets = 5) {
  DatasetManifest m;
  m.dataset_id = "synthetic";
  m.format = DatasetFormat::synthetic;
  m.crawl_time = make_timestamp(2020, 1, 1);
  m.synthetic.n_accounts = n;
  m.synthetic.seed = seed;
  m.synthetic.tweets_per_account = tweets;
  return ingest(m);
}

}  // namespace

TEST_CASE("csv reader handles quotes, newlines and BOM") {
  std::istringstream in("\xEF\xBB\xBF" "a,b\n\"x,1\",\"say \"\"hi\"\"\"\n\"multi\nline\",z\n");
  CsvReader r(in);
  std::vector<std::string> row;
  bool ok = true;
  REQUIRE(r.next(row, ok));
  CHECK(row == std::vector<std::string>{"a", "b"});
  REQUIRE(r.next(row, ok));
  CHECK(row == std::vector<std::string>{"x,1", "say \"hi\""});
  REQUIRE(r.next(row, ok));
  CHECK(ok);
  CHECK(row == std::vector<std::string>{"multi\nline", "z"});
  CHECK(r.line() == 3);
  CHECK_FALSE(r.next(row, ok));

  std::istringstream bad("a,\"open\n");
  CsvReader rb(bad);
  REQUIRE(rb.next(row, ok));
  CHECK_FALSE(ok);
}

TEST_CASE("cresci csv: malformed row is counted and skipped") {
  TempDir dir("cresci");
  dir.write("humans.csv", std::string(kUsersHeader) + user_row("3", "100") + user_row("1", "abc") +
                              user_row("2", "7"));
  dir.write("bots.csv", std::string(kUsersHeader) + user_row("9", "1"));
  dir.write("tweets.csv",
            "user_id,text,created_at,source,retweeted_status_id\n"
            "3,hello world,2014-01-01 10:00:00,<a href=\"x\">Twitter for iPhone</a>,\n"
            "3,RT @x: hi,2014-01-02 10:00:00,web,0\n"
            "77,orphan,2014-01-02 10:00:00,web,\n");
  const Corpus c = ingest(cresci_manifest(dir));
  CHECK(c.report.rows_rejected == 1);
  CHECK(c.report.accounts_read == 3);
  CHECK(c.report.per_class_counts.at("genuine") == 2);
  CHECK(c.report.per_class_counts.at("fake") == 1);
  CHECK(c.report.tweets_orphaned == 1);

  std::size_t per_class = 0;
  for (const auto& [k, v] : c.report.per_class_counts) per_class += v;
  CHECK(per_class == c.report.accounts_read);

  REQUIRE(c.accounts.size() == 3);
  CHECK(c.accounts[0].id == "2");
  CHECK(c.accounts[1].id == "3");
  CHECK(c.accounts[2].id == "9");
  CHECK(c.accounts[2].label == Label::bot);
  CHECK(c.accounts[1].profile_background_color == "C0DEED");
  CHECK(c.accounts[1].crawl_time == make_timestamp(2015, 1, 1));

  const auto& tw = c.tweets.at("3");
  REQUIRE(tw.size() == 2);
  CHECK(tw[0].source == "Twitter for iPhone");
  CHECK_FALSE(tw[0].is_retweet);
  CHECK(tw[1].is_retweet);
}

TEST_CASE("ingest errors") {
  TempDir dir("errors");
  auto m = cresci_manifest(dir);
  CHECK(kind_of([&] { ingest(m); }) == ErrorKind::IoFailure);

  dir.write("humans.csv", std::string(kUsersHeader) + user_row("1", "x"));
  dir.write("bots.csv", kUsersHeader);
  dir.write("tweets.csv", "user_id,text\n");
  CHECK(kind_of([&] { ingest(m); }) == ErrorKind::EmptyDataset);

  dir.write("humans.csv", std::string(kUsersHeader) + user_row("1", "4"));
  m.class_mapping.erase("fake");
  dir.write("bots.csv", std::string(kUsersHeader) + user_row("2", "4"));
  CHECK(kind_of([&] { ingest(m); }) == ErrorKind::UnmappedClass);

  CHECK(kind_of([&] { parse_manifest("{\"format\":\"cresci-csv\"}", dir.path); }) ==
        ErrorKind::ConfigError);
  CHECK(kind_of([&] { load_manifest(dir.path / "nope.json"); }) == ErrorKind::IoFailure);
}

TEST_CASE("truncation keeps the most recent tweets") {
  TempDir dir("trunc");
  dir.write("humans.csv", std::string(kUsersHeader) + user_row("1", "4"));
  dir.write("bots.csv", std::string(kUsersHeader) + user_row("2", "4"));
  std::string tweets = "user_id,text,created_at\n";
  for (int d = 1; d <= 28; ++d) {
    const int day = (d * 11) % 28 + 1;  // shuffled order in the file
    char buf[64];
    std::snprintf(buf, sizeof buf, "1,t%d,2014-02-%02d 00:00:00\n", day, day);
    tweets += buf;
  }
  dir.write("tweets.csv", tweets);
  auto m = cresci_manifest(dir);
  m.max_tweets_per_user = 5;
  const Corpus c = ingest(m);
  const auto& tw = c.tweets.at("1");
  REQUIRE(tw.size() == 5);
  CHECK(c.report.tweets_truncated == 23);
  for (std::size_t i = 0; i < tw.size(); ++i) {
    CHECK(tw[i].created_at == make_timestamp(2014, 2, static_cast<unsigned>(24 + i)));
  }
}

TEST_CASE("twibot json") {
  TempDir dir("twibot");
  nlohmann::json data = nlohmann::json::array();
  data.push_back({{"ID", "5"},
                  {"profile",
                   {{"screen_name", "a"}, {"followers_count", "3 "}, {"friends_count", 2},
                    {"created_at", "Tue Jun 11 11:20:35 +0000 2013 "}, {"verified", "True "}}},
                  {"tweet", {"RT @z: yo", "@q hey", "plain"}},
                  {"label", "1"}});
  data.push_back({{"ID", "4"},
                  {"profile", {{"screen_name", "b"}, {"created_at", "2013-01-01"}}},
                  {"tweet", nullptr},
                  {"label", "0"}});
  data.push_back({{"ID", "6"}, {"profile", {{"screen_name", "c"}}}, {"label", nullptr}});
  dir.write("train.json", data.dump());
  const auto m = parse_manifest(
      R"({"dataset_id":"twibot-20","format":"twibot-json","paths":{"train":"train.json"},
          "crawl_time":"2020-09-01T00:00:00Z"})",
      dir.path);
  const Corpus c = ingest(m);
  REQUIRE(c.accounts.size() == 2);
  CHECK(c.accounts[0].id == "4");
  CHECK(c.accounts[0].label == Label::human);
  CHECK(c.accounts[1].label == Label::bot);
  CHECK(c.accounts[1].followers_count == 3);
  CHECK(c.accounts[1].verified);
  const auto& tw = c.tweets.at("5");
  REQUIRE(tw.size() == 3);
  CHECK(tw[0].is_retweet);
  CHECK(tw[1].is_reply);
  CHECK_FALSE(tw[2].is_retweet);
  CHECK_FALSE(tw[2].source.has_value());
  CHECK_FALSE(tw[2].created_at.has_value());
}

TEST_CASE("synthetic generation is deterministic and sorted") {
  const Corpus a = synthetic(40, 3);
  const Corpus b = synthetic(40, 3);
  CHECK(a == b);
  CHECK(a.accounts.size() == 40);
  for (std::size_t i = 1; i < a.accounts.size(); ++i) CHECK(a.accounts[i - 1].id < a.accounts[i].id);
  for (const auto& acc : a.accounts) CHECK(validate_account(acc).empty());
  for (const auto& [id, tweets] : a.tweets) {
    for (const auto& t : tweets) CHECK(validate_tweet(t).empty());
  }
  CHECK_FALSE(synthetic(40, 4) == a);
}

TEST_CASE("canonical round trip") {
  TempDir dir("canonical");
  const Corpus three = synthetic(3, 11);
  write_canonical(three, dir.path / "c.bin");
  CHECK(read_canonical(dir.path / "c.bin") == three);

  const Corpus big = synthetic(10000, 5, 2);
  write_canonical(big, dir.path / "big.bin");
  const Corpus back = read_canonical(dir.path / "big.bin");
  REQUIRE(back.accounts.size() == 10000);
  CHECK(back.tweets.size() == big.tweets.size());
  for (const auto& [id, tweets] : big.tweets) CHECK(back.tweets.at(id).size() == tweets.size());
  CHECK(back.report == big.report);
}

TEST_CASE("canonical version mismatch") {
  TempDir dir("version");
  write_canonical(synthetic(3, 1), dir.path / "c.bin");
  std::ifstream in(dir.path / "c.bin", std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  in.close();
  std::uint32_t len = 0;
  std::memcpy(&len, bytes.data() + 8, 4);
  auto header = nlohmann::json::parse(bytes.substr(12, len));
  header["version"] = "v999";
  const std::string h = header.dump();
  const auto new_len = static_cast<std::uint32_t>(h.size());
  std::string patched = bytes.substr(0, 8);
  patched.append(reinterpret_cast<const char*>(&new_len), 4);
  patched += h + bytes.substr(12 + len);
  dir.write("v999.bin", patched);
  CHECK(kind_of([&] { read_canonical(dir.path / "v999.bin"); }) == ErrorKind::SchemaMismatch);
  dir.write("junk.bin", "not a corpus");
  CHECK(kind_of([&] { read_canonical(dir.path / "junk.bin"); }) == ErrorKind::SchemaMismatch);
}
