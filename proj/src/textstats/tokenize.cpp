#include "botminer/textstats.hpp"

namespace botminer::text {
namespace {

bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

bool is_terminator(char32_t c) { return c == '.' || c == '!' || c == '?'; }

bool is_vowel(char32_t c) {
  switch (to_lower(c)) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
    case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5: case 0xE6:
    case 0xE8: case 0xE9: case 0xEA: case 0xEB:
    case 0xEC: case 0xED: case 0xEE: case 0xEF:
    case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
    case 0xF9: case 0xFA: case 0xFB: case 0xFC: case 0xFD: case 0xFF:
      return true;
    default:
      return false;
  }
}

// Words inside one span of code points; apostrophes at either edge of a run
// are dropped, runs without letters or digits vanish.
void collect_words(std::u32string_view cps, std::vector<std::string>& out) {
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_word_char(cps[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && is_word_char(cps[j])) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_apostrophe(cps[b])) ++b;
    while (e > b && is_apostrophe(cps[e - 1])) --e;
    if (b < e) out.push_back(encode_utf8(cps.substr(b, e - b)));
    i = j;
  }
}

std::u32string_view trim(std::u32string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

TokenizedText tokenize(std::string_view text) {
  TokenizedText t;
  t.raw = std::string(text);
  const std::u32string cps = decode_utf8(text);
  const std::u32string_view all(cps);

  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    const std::u32string_view piece = all.substr(start, end - start);
    const std::size_t before = t.words.size();
    collect_words(piece, t.words);
    if (t.words.size() > before) t.sentences.push_back(encode_utf8(trim(piece)));
    start = end;
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (!is_terminator(cps[i])) continue;
    const bool boundary = i + 1 == cps.size() || is_space(cps[i + 1]);
    if (boundary) flush(i + 1);
  }
  if (start < cps.size()) flush(cps.size());

  t.syllable_counts.reserve(t.words.size());
  for (const auto& w : t.words) t.syllable_counts.push_back(count_syllables(w));
  return t;
}

int count_syllables(std::string_view word) {
  const std::u32string cps = decode_utf8(word);
  int count = 0;
  bool in_vowels = false;
  for (char32_t c : cps) {
    const bool v = is_vowel(c);
    if (v && !in_vowels) ++count;
    in_vowels = v;
  }
  if (count > 1 && cps.size() >= 2 && to_lower(cps.back()) == 'e' &&
      !is_vowel(cps[cps.size() - 2])) {
    --count;
  }
  return count < 1 ? 1 : count;
}

CasingCounts casing_counts(const TokenizedText& t) {
  CasingCounts c;
  for (const auto& w : t.words) {
    const std::u32string cps = decode_utf8(w);
    bool has_letter = false;
    bool has_digit = false;
    bool all_lower = true;
    bool all_upper = true;
    bool rest_lower = true;
    bool first_upper = false;
    bool seen_first = false;
    for (char32_t ch : cps) {
      if (is_digit(ch)) has_digit = true;
      if (!is_letter(ch)) continue;
      has_letter = true;
      const bool up = is_upper(ch);
      const bool lo = is_lower(ch);
      if (!lo) all_lower = false;
      if (!up) all_upper = false;
      if (!seen_first) {
        first_upper = up;
        seen_first = true;
      } else if (!lo) {
        rest_lower = false;
      }
    }
    if (!has_letter || has_digit) continue;
    ++c.alphabetic;
    if (all_upper) {
      ++c.upper;
    } else if (all_lower) {
      ++c.lower;
    } else if (first_upper && rest_lower) {
      ++c.title;
    }
  }
  return c;
}

CasingFractions casing_fractions(const TokenizedText& t) {
  const CasingCounts c = casing_counts(t);
  if (c.alphabetic == 0) return {};
  const auto n = static_cast<double>(c.alphabetic);
  return {static_cast<double>(c.lower) / n, static_cast<double>(c.upper) / n,
          static_cast<double>(c.title) / n};
}

}  // namespace botminer::text
