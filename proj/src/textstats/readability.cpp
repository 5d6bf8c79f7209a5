#include <cmath>
#include <string>
#include <unordered_set>

#include "botminer/resources.hpp"
#include "botminer/textstats.hpp"

namespace botminer::text {
namespace {

const std::unordered_set<std::string>& easy_words() {
  static const std::unordered_set<std::string> kWords = [] {
    std::unordered_set<std::string> words;
    const auto data = resources::find("dale_chall_easy_words.txt").value_or("");
    std::size_t pos = 0;
    while (pos < data.size()) {
      std::size_t end = data.find('\n', pos);
      if (end == std::string_view::npos) end = data.size();
      std::string_view w = data.substr(pos, end - pos);
      while (!w.empty() && (w.back() == '\r' || w.back() == ' ')) w.remove_suffix(1);
      if (!w.empty() && w.front() != '#') words.emplace(w);
      pos = end + 1;
    }
    return words;
  }();
  return kWords;
}

std::string lowercase(std::string_view word) {
  std::u32string cps = decode_utf8(word);
  for (auto& c : cps) {
    c = to_lower(c);
    if (c == 0x2019) c = '\'';
  }
  return encode_utf8(cps);
}

}  // namespace

std::array<double, kReadabilityCount> Readability::values() const {
  return {flesch_reading_ease, flesch_kincaid_grade, smog_index,
          coleman_liau_index, automated_readability_index, dale_chall_readability_score,
          difficult_words, linsear_write_formula, gunning_fog};
}

const std::array<std::string_view, kReadabilityCount>& readability_names() {
  static constexpr std::array<std::string_view, kReadabilityCount> kNames{
      "flesch_reading_ease", "flesch_kincaid_grade", "smog_index",
      "coleman_liau_index", "automated_readability_index", "dale_chall_readability_score",
      "difficult_words", "linsear_write_formula", "gunning_fog"};
  return kNames;
}

bool is_easy_word(std::string_view word) { return easy_words().contains(lowercase(word)); }

bool is_difficult_word(std::string_view word, int syllables) {
  return syllables >= 2 && !is_easy_word(word);
}

Readability readability(const TokenizedText& t) {
  Readability r;
  const auto words = static_cast<double>(t.words.size());
  const auto sentences = static_cast<double>(t.sentences.size());
  if (t.words.empty() || t.sentences.empty()) {
    r.degenerate = true;
    return r;
  }

  double syllables = 0;
  double letters = 0;
  double alnum = 0;
  double polysyllables = 0;
  double difficult = 0;
  double easy_linsear = 0;
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    const int syl = t.syllable_counts[i];
    syllables += syl;
    for (char32_t c : decode_utf8(t.words[i])) {
      if (is_letter(c)) {
        ++letters;
        ++alnum;
      } else if (is_digit(c)) {
        ++alnum;
      }
    }
    if (syl >= 3) {
      ++polysyllables;
    } else {
      ++easy_linsear;
    }
    if (is_difficult_word(t.words[i], syl)) ++difficult;
  }

  const double wps = words / sentences;
  const double spw = syllables / words;
  r.flesch_reading_ease = 206.835 - 1.015 * wps - 84.6 * spw;
  r.flesch_kincaid_grade = 0.39 * wps + 11.8 * spw - 15.59;
  r.smog_index = 1.043 * std::sqrt(polysyllables * 30.0 / sentences) + 3.1291;
  const double l = letters / words * 100.0;
  const double s = sentences / words * 100.0;
  r.coleman_liau_index = 0.0588 * l - 0.296 * s - 15.8;
  r.automated_readability_index = 4.71 * (alnum / words) + 0.5 * wps - 21.43;
  const double pdw = difficult / words * 100.0;
  r.dale_chall_readability_score = 0.1579 * pdw + 0.0496 * wps + (pdw > 5.0 ? 3.6365 : 0.0);
  r.difficult_words = difficult;
  const double linsear = (easy_linsear + 3.0 * polysyllables) / sentences;
  r.linsear_write_formula = linsear > 20.0 ? linsear / 2.0 : linsear / 2.0 - 1.0;
  r.gunning_fog = 0.4 * (wps + 100.0 * polysyllables / words);
  return r;
}

}  // namespace botminer::text
