#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace botminer::text {

// ---- UTF-8 helpers --------------------------------------------------------

/// Decodes UTF-8; malformed sequences become U+FFFD, one per bad byte.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t c);
std::size_t code_point_count(std::string_view s);

bool is_letter(char32_t c);
bool is_digit(char32_t c);  // ASCII 0-9 only
bool is_space(char32_t c);
bool is_upper(char32_t c);
bool is_lower(char32_t c);
char32_t to_lower(char32_t c);
bool is_emoji(char32_t c);
/// Characters a word is made of: letters, digits, apostrophes.
bool is_word_char(char32_t c);

// ---- tokenization ---------------------------------------------------------

struct TokenizedText {
  std::string raw;
  std::vector<std::string> words;
  std::vector<std::string> sentences;
  std::vector<int> syllable_counts;
};

TokenizedText tokenize(std::string_view text);

/// Vowel-group heuristic: maximal runs of a/e/i/o/u/y (accented Latin vowels
/// included), minus a silent trailing 'e', never below 1.
int count_syllables(std::string_view word);

// ---- character statistics -------------------------------------------------

/// Bits per character over code-point frequencies.
double shannon_entropy(std::string_view s);

/// Mean over bigram occurrences of that bigram's relative frequency in the
/// string, i.e. sum(count^2) / n^2 for n adjacent code-point pairs.
double mean_bigram_freq(std::string_view s);

std::size_t digit_count(std::string_view s);
std::size_t punctuation_count(std::string_view s);

/// Non-overlapping, case-insensitive occurrences of an ASCII needle.
std::size_t count_substring_ci(std::string_view haystack, std::string_view needle);

std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - levenshtein / max length in code points; both empty gives 1.
double string_similarity(std::string_view a, std::string_view b);

/// Words containing a run of three or more identical characters.
std::size_t count_elongated(const std::vector<std::string>& words);

// ---- casing ---------------------------------------------------------------

struct CasingCounts {
  std::size_t alphabetic = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t title = 0;
};

struct CasingFractions {
  double lower = 0;
  double upper = 0;
  double title = 0;
};

/// A word is alphabetic when it has at least one letter and no digit.
/// All-uppercase wins over titlecase, so "I" counts as uppercase.
CasingCounts casing_counts(const TokenizedText& t);
CasingFractions casing_fractions(const TokenizedText& t);

// ---- readability ----------------------------------------------------------

inline constexpr std::size_t kReadabilityCount = 9;

struct Readability {
  double flesch_reading_ease = 0;
  double flesch_kincaid_grade = 0;
  double smog_index = 0;
  double coleman_liau_index = 0;
  double automated_readability_index = 0;
  double dale_chall_readability_score = 0;
  double difficult_words = 0;
  double linsear_write_formula = 0;
  double gunning_fog = 0;
  bool degenerate = false;

  std::array<double, kReadabilityCount> values() const;
};

/// Index names in the order of Readability::values().
const std::array<std::string_view, kReadabilityCount>& readability_names();

Readability readability(const TokenizedText& t);

/// Lookup in the bundled Dale-Chall easy-word list (case-insensitive).
bool is_easy_word(std::string_view word);

/// Not an easy word and at least two syllables.
bool is_difficult_word(std::string_view word, int syllables);

// ---- entities -------------------------------------------------------------

struct EntitySet {
  std::vector<std::string> urls;
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::vector<std::string> emojis;
  /// Input with all four entity kinds removed and whitespace collapsed.
  std::string stripped;

  std::size_t kinds_present() const;
};

/// URLs are whitespace tokens starting with http://, https:// or www.
/// Hashtags and mentions are '#'/'@' followed by letters, digits or '_',
/// at token start or after a non-word character. Markers are not kept in
/// the extracted strings.
EntitySet extract_entities(std::string_view text);

std::size_t unique_count(const std::vector<std::string>& items);

}  // namespace botminer::text
