#include "botminer/textstats.hpp"

namespace botminer::text {
namespace {

bool is_tag_char(char32_t c) { return is_letter(c) || is_digit(c) || c == '_'; }

// Code points that only decorate a preceding emoji.
bool is_emoji_modifier(char32_t c) {
  return c == 0xFE0F || c == 0x200D || c == 0x20E3 || (c >= 0x1F3FB && c <= 0x1F3FF) ||
         (c >= 0xE0020 && c <= 0xE007F);
}

bool starts_with_ci(std::u32string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (to_lower(s[i]) != static_cast<char32_t>(prefix[i])) return false;
  }
  return true;
}

bool is_url_token(std::u32string_view token) {
  return starts_with_ci(token, "http://") || starts_with_ci(token, "https://") ||
         starts_with_ci(token, "www.");
}

std::u32string_view trim_url(std::u32string_view url) {
  while (!url.empty()) {
    const char32_t c = url.back();
    if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == ')' ||
        c == ']' || c == '"' || c == '\'') {
      url.remove_suffix(1);
    } else {
      break;
    }
  }
  return url;
}

// Removes emojis from a token, recording each emoji with its modifiers.
std::u32string take_emojis(std::u32string_view token, std::vector<std::string>& emojis) {
  std::u32string kept;
  std::size_t i = 0;
  while (i < token.size()) {
    const char32_t c = token[i];
    if (is_emoji_modifier(c)) {
      ++i;
      continue;
    }
    if (!is_emoji(c)) {
      kept.push_back(c);
      ++i;
      continue;
    }
    std::u32string emoji(1, c);
    ++i;
    while (i < token.size()) {
      if (token[i] == 0x200D && i + 1 < token.size() && is_emoji(token[i + 1]) &&
          !is_emoji_modifier(token[i + 1])) {
        emoji.push_back(token[i]);
        emoji.push_back(token[i + 1]);
        i += 2;
      } else if (is_emoji_modifier(token[i])) {
        emoji.push_back(token[i]);
        ++i;
      } else if (c >= 0x1F1E6 && c <= 0x1F1FF && emoji.size() == 1 && token[i] >= 0x1F1E6 &&
                 token[i] <= 0x1F1FF) {
        emoji.push_back(token[i]);  // flag: pair of regional indicators
        ++i;
      } else {
        break;
      }
    }
    emojis.push_back(encode_utf8(emoji));
  }
  return kept;
}

}  // namespace

std::size_t EntitySet::kinds_present() const {
  return static_cast<std::size_t>(!urls.empty()) + static_cast<std::size_t>(!hashtags.empty()) +
         static_cast<std::size_t>(!mentions.empty()) + static_cast<std::size_t>(!emojis.empty());
}

EntitySet extract_entities(std::string_view text) {
  EntitySet e;
  const std::u32string cps = decode_utf8(text);
  std::u32string stripped;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_space(cps[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    const std::u32string token =
        take_emojis(std::u32string_view(cps).substr(i, j - i), e.emojis);
    i = j;
    if (token.empty()) continue;
    if (is_url_token(token)) {
      e.urls.push_back(encode_utf8(trim_url(token)));
      continue;
    }
    std::u32string kept;
    std::size_t k = 0;
    while (k < token.size()) {
      const char32_t c = token[k];
      const bool marker = c == '#' || c == '@';
      const bool boundary = kept.empty() || !is_tag_char(kept.back());
      if (marker && boundary && k + 1 < token.size() && is_tag_char(token[k + 1])) {
        std::size_t m = k + 1;
        while (m < token.size() && is_tag_char(token[m])) ++m;
        std::string name = encode_utf8(std::u32string_view(token).substr(k + 1, m - k - 1));
        (c == '#' ? e.hashtags : e.mentions).push_back(std::move(name));
        k = m;
        continue;
      }
      kept.push_back(c);
      ++k;
    }
    if (kept.empty()) continue;
    if (!stripped.empty()) stripped.push_back(' ');
    stripped += kept;
  }
  e.stripped = encode_utf8(stripped);
  return e;
}

}  // namespace botminer::text
