// Independent reference implementations used to check the library. They
// favour the most literal formulation (exact rationals, full enumeration,
// textbook formulas) over speed and share no code with src/.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// ---- exact rationals --------------------------------------------------------

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational operator+(Rational a, Rational b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}
inline Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
inline Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }

struct RationalMetrics {
  Rational accuracy, precision, recall, f1;
};

// f1 as the harmonic mean 2pr/(p+r) evaluated exactly.
inline RationalMetrics metrics(std::int64_t tp, std::int64_t tn, std::int64_t fp, std::int64_t fn) {
  RationalMetrics m;
  m.accuracy = Rational(tp + tn, tp + tn + fp + fn);
  m.precision = tp + fp > 0 ? Rational(tp, tp + fp) : Rational(0, 1);
  m.recall = tp + fn > 0 ? Rational(tp, tp + fn) : Rational(0, 1);
  if (m.precision.num + m.recall.num > 0) {
    m.f1 = Rational(2, 1) * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

// ---- character statistics (ASCII input) -------------------------------------

inline double entropy(const std::string& s) {
  if (s.empty()) return 0;
  std::map<char, int> counts;
  for (char c : s) counts[c]++;
  double h = 0;
  for (const auto& [c, k] : counts) {
    const double p = static_cast<double>(k) / static_cast<double>(s.size());
    h -= p * std::log2(p);
  }
  return h;
}

// Mean over bigram positions of how often that bigram occurs, by pairwise
// comparison of all positions.
inline double mean_bigram_freq(const std::string& s) {
  if (s.size() < 2) return 0;
  const std::size_t m = s.size() - 1;
  double total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t same = 0;
    for (std::size_t j = 0; j < m; ++j) same += s.compare(i, 2, s, j, 2) == 0 ? 1 : 0;
    total += static_cast<double>(same) / static_cast<double>(m);
  }
  return total / static_cast<double>(m);
}

// Plain recursion over prefixes with memoisation.
inline std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  auto go = [&](auto&& self, std::size_t i, std::size_t j) -> std::size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    const auto key = std::make_pair(i, j);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    const std::size_t sub = self(self, i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1);
    const std::size_t del = self(self, i - 1, j) + 1;
    const std::size_t ins = self(self, i, j - 1) + 1;
    return memo[key] = std::min({sub, del, ins});
  };
  return go(go, a.size(), b.size());
}

inline double similarity(const std::string& a, const std::string& b) {
  const std::size_t m = std::max(a.size(), b.size());
  return m == 0 ? 1.0 : 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

inline bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
inline bool is_num(char c) { return c >= '0' && c <= '9'; }
inline char lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c; }

// Words: runs of letters, digits and apostrophes with apostrophes trimmed
// from both ends; runs without a letter or digit are dropped.
inline std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.front() == '\'') cur.erase(cur.begin());
    while (!cur.empty() && cur.back() == '\'') cur.pop_back();
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (is_alpha(c) || is_num(c) || c == '\'') {
      cur.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

// Sentences: pieces ending at . ! ? followed by whitespace or the end, and
// only pieces holding at least one word.
inline std::size_t sentences(const std::string& text) {
  std::size_t count = 0;
  std::string piece;
  for (std::size_t i = 0; i < text.size(); ++i) {
    piece.push_back(text[i]);
    const bool end = (text[i] == '.' || text[i] == '!' || text[i] == '?') &&
                     (i + 1 == text.size() || text[i + 1] == ' ' || text[i + 1] == '\n');
    if (end) {
      if (!words(piece).empty()) ++count;
      piece.clear();
    }
  }
  if (!words(piece).empty()) ++count;
  return count;
}

struct Casing {
  double lower = 0, upper = 0, title = 0;
};

inline Casing casing(const std::string& text) {
  double alpha = 0, lo = 0, up = 0, ti = 0;
  for (const auto& w : words(text)) {
    std::string letters;
    bool digit = false;
    for (char c : w) {
      if (is_alpha(c)) letters.push_back(c);
      if (is_num(c)) digit = true;
    }
    if (letters.empty() || digit) continue;
    alpha += 1;
    const bool all_up = std::all_of(letters.begin(), letters.end(), [](char c) { return c <= 'Z'; });
    const bool all_lo = std::all_of(letters.begin(), letters.end(), [](char c) { return c >= 'a'; });
    const bool tail_lo =
        std::all_of(letters.begin() + 1, letters.end(), [](char c) { return c >= 'a'; });
    if (all_up) {
      up += 1;
    } else if (all_lo) {
      lo += 1;
    } else if (letters[0] <= 'Z' && tail_lo) {
      ti += 1;
    }
  }
  if (alpha == 0) return {};
  return {lo / alpha, up / alpha, ti / alpha};
}

inline std::size_t elongated(const std::vector<std::string>& ws) {
  std::size_t n = 0;
  for (const auto& w : ws) {
    for (std::size_t i = 0; i + 2 < w.size(); ++i) {
      if (w[i] == w[i + 1] && w[i + 1] == w[i + 2]) {
        ++n;
        break;
      }
    }
  }
  return n;
}

inline bool is_vowel(char c) {
  c = lower(c);
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

inline int syllables(const std::string& word) {
  int groups = 0;
  bool in_group = false;
  for (char c : word) {
    if (is_vowel(c)) {
      if (!in_group) ++groups;
      in_group = true;
    } else {
      in_group = false;
    }
  }
  // Silent trailing e: "cake" has one vowel sound, "the" keeps its only one.
  const std::size_t n = word.size();
  if (groups > 1 && n >= 2 && lower(word[n - 1]) == 'e' && !is_vowel(word[n - 2])) --groups;
  return std::max(groups, 1);
}

inline const std::set<std::string>& easy_words(const std::string& path) {
  static std::map<std::string, std::set<std::string>> cache;
  auto& s = cache[path];
  if (s.empty()) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty() && line[0] != '#') {
        std::string l;
        for (char c : line) l.push_back(lower(c));
        s.insert(l);
      }
    }
  }
  return s;
}

struct ReadabilityIndices {
  double flesch = 0, fk_grade = 0, smog = 0, coleman_liau = 0, ari = 0, dale_chall = 0,
         difficult = 0, linsear = 0, fog = 0;
};

// Textbook closed forms over the counts above.
inline ReadabilityIndices readability(const std::string& text, const std::string& easy_path) {
  const auto ws = words(text);
  const auto w = static_cast<double>(ws.size());
  const auto s = static_cast<double>(sentences(text));
  ReadabilityIndices r;
  if (w == 0 || s == 0) return r;
  double syl = 0, poly = 0, easy_lw = 0, letters = 0, alnum = 0, difficult = 0;
  const auto& easy = easy_words(easy_path);
  for (const auto& word : ws) {
    const int k = syllables(word);
    syl += k;
    if (k >= 3) poly += 1;
    if (k < 3) easy_lw += 1;
    for (char c : word) {
      if (is_alpha(c)) letters += 1;
      if (is_alpha(c) || is_num(c)) alnum += 1;
    }
    std::string l;
    for (char c : word) l.push_back(lower(c));
    if (k >= 2 && !easy.contains(l)) difficult += 1;
  }
  r.flesch = 206.835 - 1.015 * (w / s) - 84.6 * (syl / w);
  r.fk_grade = 0.39 * (w / s) + 11.8 * (syl / w) - 15.59;
  r.smog = 1.043 * std::sqrt(poly * (30.0 / s)) + 3.1291;
  r.coleman_liau = 0.0588 * (letters / w * 100.0) - 0.296 * (s / w * 100.0) - 15.8;
  r.ari = 4.71 * (alnum / w) + 0.5 * (w / s) - 21.43;
  const double pdw = difficult / w * 100.0;
  r.dale_chall = 0.1579 * pdw + 0.0496 * (w / s) + (pdw > 5.0 ? 3.6365 : 0.0);
  r.difficult = difficult;
  const double lw = (easy_lw + 3.0 * poly) / s;
  r.linsear = lw > 20 ? lw / 2.0 : lw / 2.0 - 1.0;
  r.fog = 0.4 * (w / s + 100.0 * poly / w);
  return r;
}

// Fixed ASCII corpus for the text-statistic comparisons.
inline const std::vector<std::string>& text_corpus() {
  static const std::vector<std::string> kTexts{
      "The cat sat.",
      "Hi! Bye? Ok.",
      "the CAT Sat on the MAT",
      "Sooo happy today!!! Best dayyy ever.",
      "Automatically generated announcements: unbelievable opportunities available immediately.",
      "I can't believe it's already Monday. Don't you agree?",
      "Visit our website for 50 percent off everything. Offer ends 2019.",
      "Readability formulas estimate the educational level required to understand a passage.",
      "We walked home. It rained. The dog barked at the mailman twice.",
      "Extraordinary circumstances necessitate unconventional methodological considerations, "
      "particularly regarding interdisciplinary collaboration and institutional accountability.",
      "Go go go",
      "HELLO WORLD THIS IS LOUD",
      "A quick brown fox jumps over the lazy dog while the children watch quietly from the "
      "window and the neighbours prepare dinner in the kitchen before the evening news begins "
      "on television tonight.",
      "Coffee. Books. Rain. Repeat.",
      "'Quoted' words and o'clock times at 5 o'clock.",
      "Mixed CaSe WoRdS are NotTitle but Title Case is.",
      "Elementary, my dear Watson! The game is afoot.",
      "Cooperation between governments remains essential for environmental sustainability.",
      "Yesss nooo maybe",
      "One sentence without a terminator but with several reasonably ordinary words inside it",
  };
  return kTexts;
}

// ---- contingency statistics -------------------------------------------------

// Chi-square via sum(O^2/E) - n, scanning the raw arrays per cell.
inline double chi2(const std::vector<int>& x, const std::vector<int>& y) {
  const std::set<int> xs(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double acc = 0;
  for (int v : xs) {
    for (int c : {0, 1}) {
      double o = 0, row = 0, col = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == v && y[i] == c) o += 1;
        if (x[i] == v) row += 1;
        if (y[i] == c) col += 1;
      }
      const double e = row * col / n;
      if (e > 0) acc += o * o / e;
    }
  }
  return acc - n;
}

inline double entropy_of(const std::map<std::vector<int>, double>& counts, double n) {
  double h = 0;
  for (const auto& [k, c] : counts) {
    if (c > 0) h -= c / n * std::log2(c / n);
  }
  return h;
}

// Mutual information as H(X) + H(Y) - H(X,Y).
inline double mutual_info(const std::vector<int>& x, const std::vector<int>& y) {
  std::map<std::vector<int>, double> hx, hy, hxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    hx[{x[i]}] += 1;
    hy[{y[i]}] += 1;
    hxy[{x[i], y[i]}] += 1;
  }
  const double n = static_cast<double>(x.size());
  return entropy_of(hx, n) + entropy_of(hy, n) - entropy_of(hxy, n);
}

// ---- decision-tree splits ---------------------------------------------------

inline double gini(double pos, double total) {
  if (total <= 0) return 0;
  const double p = pos / total;
  return 1.0 - p * p - (1 - p) * (1 - p);
}

// Largest weighted Gini decrease over every feature and every cut between
// two consecutive distinct values, among the given rows. Zero when no cut
// exists.
inline double best_gain(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                        const std::vector<std::size_t>& rows) {
  double pos = 0;
  for (std::size_t r : rows) pos += y[r];
  const double n = static_cast<double>(rows.size());
  const double parent = gini(pos, n);
  double best = 0;
  for (std::size_t f = 0; f < x[0].size(); ++f) {
    std::set<double> values;
    for (std::size_t r : rows) values.insert(x[r][f]);
    for (auto it = values.begin(); it != values.end() && std::next(it) != values.end(); ++it) {
      const double thr = (*it + *std::next(it)) / 2;
      double ln = 0, lp = 0;
      for (std::size_t r : rows) {
        if (x[r][f] <= thr) {
          ln += 1;
          lp += y[r];
        }
      }
      const double gain = n * parent - ln * gini(lp, ln) - (n - ln) * gini(pos - lp, n - ln);
      best = std::max(best, gain);
    }
  }
  return best;
}

}  // namespace oracle
