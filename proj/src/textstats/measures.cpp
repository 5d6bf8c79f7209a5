#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "botminer/textstats.hpp"

namespace botminer::text {

double shannon_entropy(std::string_view s) {
  const std::u32string cps = decode_utf8(s);
  if (cps.empty()) return 0.0;
  std::map<char32_t, std::size_t> freq;
  for (char32_t c : cps) ++freq[c];
  const auto n = static_cast<double>(cps.size());
  double h = 0.0;
  for (const auto& [c, k] : freq) {
    const double p = static_cast<double>(k) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double mean_bigram_freq(std::string_view s) {
  const std::u32string cps = decode_utf8(s);
  if (cps.size() < 2) return 0.0;
  std::map<std::pair<char32_t, char32_t>, std::size_t> freq;
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) ++freq[{cps[i], cps[i + 1]}];
  const auto n = static_cast<double>(cps.size() - 1);
  double sum_sq = 0.0;
  for (const auto& [bg, k] : freq) sum_sq += static_cast<double>(k) * static_cast<double>(k);
  return sum_sq / (n * n);
}

std::size_t digit_count(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }));
}

std::size_t punctuation_count(std::string_view s) {
  std::size_t n = 0;
  for (char32_t c : decode_utf8(s)) {
    const bool ascii = c < 0x80 && ((c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
                                    (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E));
    const bool general = (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
                         c == 0xA1 || c == 0xBF || c == 0xAB || c == 0xBB;
    if (ascii || general) ++n;
  }
  return n;
}

std::size_t count_substring_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || haystack.size() < needle.size()) return 0;
  auto lower = [](char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c;
  };
  std::size_t count = 0;
  std::size_t i = 0;
  while (i + needle.size() <= haystack.size()) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (lower(haystack[i + k]) != lower(needle[k])) {
        match = false;
        break;
      }
    }
    if (match) {
      ++count;
      i += needle.size();
    } else {
      ++i;
    }
  }
  return count;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string x = decode_utf8(a);
  const std::u32string y = decode_utf8(b);
  std::vector<std::size_t> prev(y.size() + 1);
  std::vector<std::size_t> cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

double string_similarity(std::string_view a, std::string_view b) {
  const std::size_t la = code_point_count(a);
  const std::size_t lb = code_point_count(b);
  const std::size_t m = std::max(la, lb);
  if (m == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(m);
}

std::size_t count_elongated(const std::vector<std::string>& words) {
  std::size_t n = 0;
  for (const auto& w : words) {
    const std::u32string cps = decode_utf8(w);
    std::size_t run = 1;
    for (std::size_t i = 1; i < cps.size(); ++i) {
      run = cps[i] == cps[i - 1] ? run + 1 : 1;
      if (run >= 3) {
        ++n;
        break;
      }
    }
  }
  return n;
}

std::size_t unique_count(const std::vector<std::string>& items) {
  return std::set<std::string>(items.begin(), items.end()).size();
}

}  // namespace botminer::text
