#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "botminer/error.hpp"
#include "botminer/language.hpp"
#include "botminer/parallel.hpp"
#include "botminer/textstats.hpp"
#include "oracles.hpp"

using namespace botminer;
using namespace botminer::text;

namespace {

const std::string kEasyWords = std::string(BOTMINER_SOURCE_DIR) + "/data/dale_chall_easy_words.txt";

// Random strings over a small alphabet so repeats, spaces and punctuation
// show up often.
std::string random_text(Rng& rng, std::size_t max_len) {
  static const std::string kAlphabet = "aAbBcdeE xyz.!?'0#@";
  const std::size_t n = rng.index(max_len + 1);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(kAlphabet[rng.index(kAlphabet.size())]);
  return s;
}

struct StubDetector final : LanguageDetector {
  std::optional<std::string> detect(std::string_view) const override { return "xx"; }
};

}  // namespace

TEST_CASE("tokenize examples") {
  const auto t = tokenize("The cat sat.");
  CHECK(t.words == std::vector<std::string>{"The", "cat", "sat"});
  CHECK(t.sentences.size() == 1);
  CHECK(t.syllable_counts == std::vector<int>{1, 1, 1});

  const auto e = tokenize("");
  CHECK(e.words.empty());
  CHECK(e.sentences.empty());

  CHECK(tokenize("Hi! Bye? Ok.").sentences.size() == 3);
  CHECK(tokenize("'twas rock'n'roll''").words == std::vector<std::string>{"twas", "rock'n'roll"});
  CHECK(tokenize("3.14 is pi").sentences.size() == 1);
}

TEST_CASE("syllables") {
  CHECK(count_syllables("cake") == 1);
  CHECK(count_syllables("the") == 1);
  CHECK(count_syllables("reading") == 2);
  CHECK(count_syllables("rhythm") == 1);
  CHECK(count_syllables("xyz") == 1);
  CHECK(count_syllables("bcd") == 1);
  CHECK(count_syllables("unbelievable") == 4);  // silent final e
}

TEST_CASE("entropy and bigram examples") {
  CHECK(shannon_entropy("aaaa") == 0.0);
  CHECK(shannon_entropy("ab") == 1.0);
  CHECK(shannon_entropy("aabb") == 1.0);
  CHECK(shannon_entropy("") == 0.0);
  CHECK(mean_bigram_freq("aaaa") == 1.0);
  CHECK(mean_bigram_freq("abcd") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(mean_bigram_freq("a") == 0.0);
}

TEST_CASE("readability examples") {
  const auto r = readability(tokenize("The cat sat."));
  CHECK(r.flesch_reading_ease == doctest::Approx(206.835 - 1.015 * 3 - 84.6 * 1).epsilon(1e-12));
  CHECK(r.flesch_reading_ease == doctest::Approx(119.19).epsilon(1e-12));
  CHECK(r.difficult_words == 0.0);
  CHECK_FALSE(r.degenerate);

  const auto e = readability(tokenize(""));
  CHECK(e.degenerate);
  for (double v : e.values()) CHECK(v == 0.0);
  CHECK(readability_names().size() == kReadabilityCount);
}

TEST_CASE("difficult words follow the bundled list") {
  CHECK(is_easy_word("the"));
  CHECK(is_easy_word("The"));
  CHECK_FALSE(is_difficult_word("cat", 1));
  CHECK(is_difficult_word("methodological", 6));
  CHECK_FALSE(is_difficult_word("methodological", 1));
}

TEST_CASE("casing examples") {
  auto f = casing_fractions(tokenize("the CAT Sat"));
  CHECK(f.lower == doctest::Approx(1.0 / 3));
  CHECK(f.upper == doctest::Approx(1.0 / 3));
  CHECK(f.title == doctest::Approx(1.0 / 3));
  f = casing_fractions(tokenize("hello world"));
  CHECK(f.lower == 1.0);
  CHECK(f.upper == 0.0);
  f = casing_fractions(tokenize("HeLLo"));
  CHECK(f.lower + f.upper + f.title == 0.0);
  f = casing_fractions(tokenize(""));
  CHECK(f.lower + f.upper + f.title == 0.0);
  CHECK(casing_fractions(tokenize("I")).upper == 1.0);
}

TEST_CASE("similarity examples") {
  CHECK(string_similarity("alice", "alice") == 1.0);
  CHECK(string_similarity("abc", "abd") == doctest::Approx(2.0 / 3.0));
  CHECK(string_similarity("", "x") == 0.0);
  CHECK(string_similarity("", "") == 1.0);
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("\xC3\xA9t\xC3\xA9", "ete") == 2);  // code points, not bytes
}

TEST_CASE("elongated examples") {
  CHECK(count_elongated({"sooo", "cool"}) == 1);
  CHECK(count_elongated({}) == 0);
  CHECK(count_elongated({"aaa"}) == 1);
}

TEST_CASE("entity examples") {
  auto e = extract_entities("go #a @b http://x.y");
  CHECK(e.hashtags == std::vector<std::string>{"a"});
  CHECK(e.mentions == std::vector<std::string>{"b"});
  CHECK(e.urls.size() == 1);
  CHECK(e.stripped == "go");

  e = extract_entities("no entities");
  CHECK(e.kinds_present() == 0);
  CHECK(e.stripped == "no entities");

  e = extract_entities("#a #a");
  CHECK(e.hashtags == std::vector<std::string>{"a", "a"});
  CHECK(unique_count(e.hashtags) == 1);

  e = extract_entities("mail me at x@y.com, ok \xF0\x9F\x98\x80!");
  CHECK(e.mentions.empty());
  CHECK(e.emojis.size() == 1);
}

TEST_CASE("language detection") {
  CHECK(detect_language("the quick brown fox jumps over the lazy dog") == "en");
  CHECK_FALSE(detect_language("").has_value());
  CHECK_FALSE(detect_language("12 34 #tag").has_value());
  const StubDetector stub;
  CHECK(detect_language("whatever text here", stub) == "xx");
  CHECK_THROWS_AS(NgramProfileDetector::from_directory("/nonexistent/botminer"), Error);
}

TEST_CASE("fixed corpus matches brute-force oracles") {
  for (const auto& s : oracle::text_corpus()) {
    CAPTURE(s);
    const auto t = tokenize(s);
    CHECK(t.words == oracle::words(s));
    CHECK(t.sentences.size() == oracle::sentences(s));
    CHECK(std::abs(shannon_entropy(s) - oracle::entropy(s)) <= 1e-6);
    CHECK(std::abs(mean_bigram_freq(s) - oracle::mean_bigram_freq(s)) <= 1e-6);
    CHECK(count_elongated(t.words) == oracle::elongated(oracle::words(s)));
    const auto c = casing_fractions(t);
    const auto oc = oracle::casing(s);
    CHECK(std::abs(c.lower - oc.lower) <= 1e-6);
    CHECK(std::abs(c.upper - oc.upper) <= 1e-6);
    CHECK(std::abs(c.title - oc.title) <= 1e-6);

    const auto r = readability(t);
    const auto o = oracle::readability(s, kEasyWords);
    const std::array<double, 9> expected{o.flesch, o.fk_grade, o.smog, o.coleman_liau, o.ari,
                                         o.dale_chall, o.difficult, o.linsear, o.fog};
    const auto got = r.values();
    for (std::size_t i = 0; i < got.size(); ++i) {
      CAPTURE(readability_names()[i]);
      CHECK(std::abs(got[i] - expected[i]) <= 1e-6);
    }
  }
  const auto& texts = oracle::text_corpus();
  for (std::size_t i = 0; i + 1 < texts.size(); ++i) {
    CHECK(std::abs(string_similarity(texts[i], texts[i + 1]) -
                   oracle::similarity(texts[i], texts[i + 1])) <= 1e-6);
  }
}

TEST_CASE("properties over random strings") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string a = random_text(rng, 24);
    const std::string b = random_text(rng, 24);
    CAPTURE(a);
    CAPTURE(b);

    const std::set<char> alphabet(a.begin(), a.end());
    const double h = shannon_entropy(a);
    CHECK(h >= 0.0);
    if (!alphabet.empty()) CHECK(h <= std::log2(static_cast<double>(alphabet.size())) + 1e-12);
    CHECK(std::abs(h - oracle::entropy(a)) <= 1e-9);
    CHECK(std::abs(mean_bigram_freq(a) - oracle::mean_bigram_freq(a)) <= 1e-9);

    CHECK(string_similarity(a, b) == string_similarity(b, a));
    CHECK((string_similarity(a, b) == 1.0) == (a == b));
    CHECK(levenshtein(a, b) == oracle::levenshtein(a, b));

    const auto c = casing_fractions(tokenize(a));
    CHECK(c.lower + c.upper + c.title <= 1.0 + 1e-12);

    const auto t = tokenize(a);
    CHECK(t.syllable_counts.size() == t.words.size());
    for (int s : t.syllable_counts) CHECK(s >= 1);

    const auto e = extract_entities(a);
    const auto again = extract_entities(e.stripped);
    CHECK(again.urls.empty());
    CHECK(again.hashtags.empty());
    CHECK(again.mentions.empty());
    CHECK(again.emojis.empty());
  }
}
