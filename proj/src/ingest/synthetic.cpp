#include <algorithm>
#include <cmath>
#include <cstdio>

#include "botminer/error.hpp"
#include "botminer/ingest.hpp"
#include "botminer/parallel.hpp"

namespace botminer {
namespace {

constexpr const char* kWords[] = {
    "the", "day", "good", "time", "people", "work", "home", "love", "today", "great",
    "morning", "coffee", "friends", "weekend", "music", "game", "think", "really", "new",
    "city", "night", "family", "little", "book", "reading", "finally", "summer", "rain",
    "dinner", "walk", "happy", "tired", "watching", "movie", "long", "week", "school",
    "beautiful", "weather", "tomorrow", "remember", "listening", "wonderful", "trying",
    "anyone", "everything", "interesting", "probably", "together", "garden", "kitchen",
    "running", "football", "birthday", "holiday", "travel", "photo", "sister", "brother"};
constexpr const char* kSpamWords[] = {
    "free", "win", "followers", "click", "offer", "now", "deal", "best", "cheap", "promo",
    "gain", "instant", "bonus", "limited", "exclusive"};
constexpr const char* kFirstNames[] = {"Anna", "Marco", "Laura", "James", "Sofia", "Luis",
                                       "Emma", "Pablo", "Clara", "David", "Nina", "Hugo"};
constexpr const char* kLastNames[] = {"Garcia", "Rossi", "Smith", "Muller", "Silva",
                                      "Jansen", "Martin", "Lopez", "Bianchi", "Brown"};
constexpr const char* kHumanSources[] = {"Twitter for iPhone", "Twitter for Android",
                                         "Twitter Web Client", "Instagram", "Twitter for iPad"};
constexpr const char* kBotSources[] = {"TweetAdder v4", "twitterfeed", "Botmaker API",
                                       "dlvr.it"};
constexpr const char* kPalette[] = {"1DA1F2", "FF6600", "000000", "FFFFFF", "9266CC",
                                    "3B94D9", "F5F8FA", "E81C4F", "19CF86", "FAB81E",
                                    "94D487", "ABB8C2", "DD2E44", "4A913C", "89C9FA"};

template <typename T, std::size_t N>
const T& pick(Rng& rng, const T (&items)[N]) {
  return items[rng.index(N)];
}

std::int64_t log_normal_count(Rng& rng, double mu, double sigma) {
  return static_cast<std::int64_t>(std::floor(std::exp(mu + sigma * rng.normal())));
}

std::string random_letters(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>('a' + rng.index(26)));
  return s;
}

std::string random_digits(Rng& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + rng.index(10)));
  return s;
}

std::string sentence(Rng& rng, std::size_t min_words, std::size_t max_words) {
  const std::size_t n = min_words + rng.index(max_words - min_words + 1);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    std::string w = pick(rng, kWords);
    if (i == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    if (!s.empty()) s.push_back(' ');
    s += w;
  }
  s.push_back(rng.uniform() < 0.8 ? '.' : '!');
  return s;
}

std::string short_url(Rng& rng) { return "http://t.co/" + random_letters(rng, 8); }

void fill_account(Rng& rng, bool botlike, Timestamp crawl, AccountRecord& a) {
  using std::chrono::seconds;
  const double age_days = botlike ? rng.uniform(20, 400) : rng.uniform(300, 3000);
  a.created_at = crawl - seconds(static_cast<std::int64_t>(age_days * 86400.0));
  if (botlike) {
    const bool says_bot = rng.uniform() < 0.15;
    a.screen_name = random_letters(rng, 4 + rng.index(5)) + (says_bot ? "bot" : "") +
                    random_digits(rng, 3 + rng.index(4));
    a.name = rng.uniform() < 0.5 ? a.screen_name : random_letters(rng, 6 + rng.index(6));
    const double d = rng.uniform();
    if (d < 0.4) {
      a.description = "";
    } else {
      a.description = std::string(pick(rng, kSpamWords)) + " " + pick(rng, kSpamWords) +
                      " #" + pick(rng, kSpamWords) + " " + short_url(rng);
    }
    a.followers_count = log_normal_count(rng, 3.0, 1.0);
    a.friends_count = log_normal_count(rng, 6.5, 0.6);
    a.favourites_count = log_normal_count(rng, 1.5, 1.2);
    a.listed_count = log_normal_count(rng, 0.0, 0.7);
    a.statuses_count = log_normal_count(rng, 5.0, 1.0);
    a.default_profile = rng.uniform() < 0.8;
    a.default_profile_image = rng.uniform() < 0.5;
    a.verified = false;
  } else {
    const std::string first = pick(rng, kFirstNames);
    const std::string last = pick(rng, kLastNames);
    a.name = first + " " + last;
    std::string handle = first + last;
    std::transform(handle.begin(), handle.end(), handle.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (rng.uniform() < 0.4) handle += random_digits(rng, 2);
    a.screen_name = handle;
    a.description = rng.uniform() < 0.15 ? "" : sentence(rng, 4, 10) + " " + sentence(rng, 3, 8);
    a.followers_count = log_normal_count(rng, 6.0, 1.2);
    a.friends_count = log_normal_count(rng, 5.5, 1.0);
    a.favourites_count = log_normal_count(rng, 6.5, 1.2);
    a.listed_count = log_normal_count(rng, 2.0, 1.0);
    a.statuses_count = log_normal_count(rng, 7.5, 1.0);
    a.default_profile = rng.uniform() < 0.25;
    a.default_profile_image = rng.uniform() < 0.05;
    a.verified = rng.uniform() < 0.1;
  }
  const double keep_default = a.default_profile ? 0.95 : 0.2;
  const auto& defaults = standard_platform_defaults();
  for (ColorField f : kColorFields) {
    a.color(f) = rng.uniform() < keep_default ? defaults.at(std::string(color_field_name(f)))
                                              : std::string(pick(rng, kPalette));
  }
  const double img = rng.uniform();
  if (img < 0.1) {
    a.profile_background_image_url.reset();
  } else if (img < (a.default_profile ? 0.9 : 0.5)) {
    a.profile_background_image_url = "http://abs.twimg.com/images/themes/theme1/bg.png";
  } else {
    a.profile_background_image_url = "http://pbs.twimg.com/profile_background_images/" +
                                     random_digits(rng, 9) + "/bg.jpg";
  }
  a.profile_background_tile = rng.uniform() < (botlike ? 0.1 : 0.3);
  a.profile_use_background_image = rng.uniform() < 0.8;
  a.geo_enabled = rng.uniform() < (botlike ? 0.05 : 0.4);
  a.lang = "en";
  a.location = botlike ? "" : std::string(pick(rng, kLastNames)) + " City";
}

void fill_tweets(Rng& rng, bool botlike, const AccountRecord& a, std::size_t n,
                 std::vector<TweetRecord>& out) {
  using std::chrono::seconds;
  // Walk backwards from the crawl instant so every tweet postdates creation.
  std::vector<Timestamp> times;
  Timestamp t = a.crawl_time - seconds(static_cast<std::int64_t>(rng.uniform(0, 3600)));
  for (std::size_t i = 0; i < n; ++i) {
    if (t <= a.created_at) break;
    times.push_back(t);
    const double gap_hours = botlike ? 1.0 + rng.uniform(-0.05, 0.05)
                                     : -std::log(1.0 - rng.uniform()) * 20.0 + 0.1;
    t -= seconds(static_cast<std::int64_t>(gap_hours * 3600.0));
  }
  std::reverse(times.begin(), times.end());
  const std::string source = botlike ? pick(rng, kBotSources) : pick(rng, kHumanSources);
  for (const Timestamp when : times) {
    TweetRecord tw;
    tw.author_id = a.id;
    tw.created_at = when;
    const double kind = rng.uniform();
    if (botlike) {
      tw.source = rng.uniform() < 0.85 ? source : std::string(pick(rng, kBotSources));
      if (kind < 0.3) {
        tw.text = "RT @" + random_letters(rng, 7) + ": " + pick(rng, kSpamWords) + " " +
                  pick(rng, kSpamWords) + " " + short_url(rng);
        tw.is_retweet = true;
      } else {
        tw.text = std::string(pick(rng, kSpamWords)) + " " + pick(rng, kSpamWords) + " #" +
                  pick(rng, kSpamWords) + " " + short_url(rng);
      }
      tw.favorite_count = rng.index(2);
      tw.retweet_count = rng.index(2);
    } else {
      tw.source = rng.uniform() < 0.8 ? source : std::string(pick(rng, kHumanSources));
      if (kind < 0.1) {
        tw.text = "RT @" + random_letters(rng, 6) + ": " + sentence(rng, 5, 12);
        tw.is_retweet = true;
      } else if (kind < 0.3) {
        tw.text = "@" + random_letters(rng, 6) + " " + sentence(rng, 3, 12);
        tw.is_reply = true;
      } else {
        tw.text = sentence(rng, 4, 14);
        if (rng.uniform() < 0.3) tw.text += " " + sentence(rng, 3, 9);
        if (rng.uniform() < 0.15) tw.text += std::string(" #") + pick(rng, kWords);
      }
      tw.favorite_count = rng.index(12);
      tw.retweet_count = rng.index(5);
    }
    std::int64_t hashtags = 0, mentions = 0, urls = 0;
    for (std::size_t i = 0; i < tw.text.size(); ++i) {
      if (i == 0 || tw.text[i - 1] == ' ') {
        if (tw.text[i] == '#') ++hashtags;
        if (tw.text[i] == '@') ++mentions;
        if (tw.text.compare(i, 7, "http://") == 0) ++urls;
      }
    }
    tw.num_hashtags = hashtags;
    tw.num_mentions = mentions;
    tw.num_urls = urls;
    out.push_back(std::move(tw));
  }
}

}  // namespace

Corpus generate_synthetic(const DatasetManifest& manifest) {
  const SyntheticSpec& spec = manifest.synthetic;
  if (spec.n_accounts == 0) throw Error(ErrorKind::EmptyDataset, "synthetic n_accounts is 0");
  Corpus c;
  c.dataset_id = manifest.dataset_id;
  const Timestamp crawl =
      manifest.crawl_time == Timestamp{} ? make_timestamp(2020, 1, 1) : manifest.crawl_time;

  const auto n_bots = static_cast<std::size_t>(
      std::llround(static_cast<double>(spec.n_accounts) * spec.bot_fraction));
  std::vector<Label> labels(spec.n_accounts, Label::human);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(std::min(n_bots, labels.size())),
            Label::bot);
  Rng shuffler(derive_seed(spec.seed, 0));
  shuffler.shuffle(std::span<Label>(labels));

  const bool account_signal = spec.signal == "both" || spec.signal == "account";
  const bool content_signal = spec.signal == "both" || spec.signal == "content";
  for (std::size_t i = 0; i < spec.n_accounts; ++i) {
    Rng rng(derive_seed(spec.seed, i + 1));
    const bool bot = labels[i] == Label::bot;
    // Styles follow the label when the source carries signal (with 5% noise),
    // otherwise they are coin flips independent of it.
    auto style = [&](bool signal) {
      const double u = rng.uniform();
      if (!signal) return u < 0.5;
      return u < 0.05 ? !bot : bot;
    };
    const bool account_botlike = style(account_signal);
    const bool content_botlike = style(content_signal);

    AccountRecord a;
    char id[32];
    std::snprintf(id, sizeof id, "syn%07zu", i);
    a.id = id;
    a.label = labels[i];
    a.crawl_time = crawl;
    fill_account(rng, account_botlike, crawl, a);
    a = normalize_account(std::move(a));

    const bool tweetless = bot && rng.uniform() < spec.tweetless_bot_fraction;
    std::size_t n_tweets = tweetless ? 0 : spec.tweets_per_account;
    if (manifest.max_tweets_per_user) n_tweets = std::min(n_tweets, *manifest.max_tweets_per_user);
    if (n_tweets > 0) {
      std::vector<TweetRecord> tweets;
      fill_tweets(rng, content_botlike, a, n_tweets, tweets);
      c.report.tweets_read += tweets.size();
      if (!tweets.empty()) c.tweets.emplace(a.id, std::move(tweets));
    }
    ++c.report.per_class_counts[std::string(to_string(a.label))];
    c.accounts.push_back(std::move(a));
  }
  c.report.accounts_read = c.accounts.size();
  return c;
}

}  // namespace botminer
