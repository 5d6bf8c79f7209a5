#include "botminer/language.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "botminer/error.hpp"
#include "botminer/resources.hpp"
#include "botminer/textstats.hpp"

namespace botminer::text {
namespace {

constexpr std::string_view kBundledLanguages[] = {"de", "en", "es", "fr", "it", "nl", "pt"};

// Ranked n-grams (n = 1..3) over letter runs padded with '_'.
std::vector<std::u32string> ranked_ngrams(std::string_view text, std::size_t limit) {
  std::map<std::u32string, std::size_t> counts;
  const std::u32string cps = decode_utf8(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_letter(cps[i])) {
      ++i;
      continue;
    }
    std::u32string word = U"_";
    while (i < cps.size() && is_letter(cps[i])) word.push_back(to_lower(cps[i++]));
    word.push_back(U'_');
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t k = 0; k + n <= word.size(); ++k) {
        std::u32string gram = word.substr(k, n);
        if (gram == U"_") continue;
        ++counts[gram];
      }
    }
  }
  std::vector<std::pair<std::u32string, std::size_t>> items(counts.begin(), counts.end());
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (items.size() > limit) items.resize(limit);
  std::vector<std::u32string> out;
  out.reserve(items.size());
  for (auto& [g, c] : items) out.push_back(std::move(g));
  return out;
}

}  // namespace

NgramProfileDetector::NgramProfileDetector(const std::map<std::string, std::string>& corpora) {
  for (const auto& [code, corpus] : corpora) {
    Profile p;
    p.code = code;
    const auto grams = ranked_ngrams(corpus, kProfileSize);
    for (std::size_t r = 0; r < grams.size(); ++r) p.ranks.emplace(grams[r], r);
    if (!p.ranks.empty()) profiles_.push_back(std::move(p));
  }
  if (profiles_.empty()) {
    throw Error(ErrorKind::DetectorUnavailable, "no usable language profile");
  }
}

const NgramProfileDetector& NgramProfileDetector::bundled() {
  static const NgramProfileDetector kDetector = [] {
    std::map<std::string, std::string> corpora;
    for (auto code : kBundledLanguages) {
      const std::string name = "langid/" + std::string(code) + ".txt";
      auto data = resources::find(name);
      if (!data) throw Error(ErrorKind::DetectorUnavailable, "missing bundled profile " + name);
      corpora.emplace(std::string(code), std::string(*data));
    }
    return NgramProfileDetector(corpora);
  }();
  return kDetector;
}

NgramProfileDetector NgramProfileDetector::from_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorKind::DetectorUnavailable,
                "language profile directory not found: " + dir.string());
  }
  std::map<std::string, std::string> corpora;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    if (!in) {
      throw Error(ErrorKind::DetectorUnavailable, "cannot read " + entry.path().string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    corpora.emplace(entry.path().stem().string(), ss.str());
  }
  return NgramProfileDetector(corpora);
}

std::optional<std::string> NgramProfileDetector::detect(std::string_view text) const {
  const auto doc = ranked_ngrams(text, kProfileSize);
  if (doc.empty()) return std::nullopt;
  const Profile* best = nullptr;
  std::size_t best_distance = 0;
  for (const auto& p : profiles_) {
    std::size_t distance = 0;
    for (std::size_t r = 0; r < doc.size(); ++r) {
      auto it = p.ranks.find(doc[r]);
      if (it == p.ranks.end()) {
        distance += kProfileSize;
      } else {
        distance += it->second > r ? it->second - r : r - it->second;
      }
    }
    if (best == nullptr || distance < best_distance) {
      best = &p;
      best_distance = distance;
    }
  }
  return best->code;
}

std::vector<std::string> NgramProfileDetector::languages() const {
  std::vector<std::string> out;
  for (const auto& p : profiles_) out.push_back(p.code);
  return out;
}

std::optional<std::string> detect_language(std::string_view text,
                                           const LanguageDetector& detector) {
  const EntitySet e = extract_entities(text);
  const std::u32string cps = decode_utf8(e.stripped);
  if (cps.size() < 3) return std::nullopt;
  if (std::none_of(cps.begin(), cps.end(), [](char32_t c) { return is_letter(c); })) {
    return std::nullopt;
  }
  return detector.detect(e.stripped);
}

std::optional<std::string> detect_language(std::string_view text) {
  return detect_language(text, NgramProfileDetector::bundled());
}

}  // namespace botminer::text
