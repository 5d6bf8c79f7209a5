#include "botminer/timestamp.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace botminer {
namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (H. Hinnant's
// days_from_civil).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool valid_date(int y, unsigned m, unsigned d) {
  static constexpr std::array<unsigned, 12> kDays{31, 28, 31, 30, 31, 30,
                                                  31, 31, 30, 31, 30, 31};
  if (m < 1 || m > 12 || d < 1) return false;
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  const unsigned limit = kDays[m - 1] + ((m == 2 && leap) ? 1U : 0U);
  return d <= limit;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

std::optional<unsigned> month_from_abbrev(std::string_view m) {
  static constexpr std::array<std::string_view, 12> kMonths{
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (unsigned i = 0; i < kMonths.size(); ++i) {
    if (kMonths[i] == m) return i + 1;
  }
  return std::nullopt;
}

std::optional<Timestamp> build(int y, unsigned mo, unsigned d, int h, int mi, int s,
                               int offset_seconds) {
  if (!valid_date(y, mo, d) || h > 23 || mi > 59 || s > 60) return std::nullopt;
  const std::int64_t secs = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s -
                            offset_seconds;
  return Timestamp{std::chrono::seconds{secs}};
}

// "+0000" / "+00:00" / "Z"
std::optional<int> parse_offset(std::string_view s) {
  if (s == "Z" || s.empty()) return 0;
  if (s.front() != '+' && s.front() != '-') return std::nullopt;
  const int sign = s.front() == '-' ? -1 : 1;
  s.remove_prefix(1);
  int hh = 0;
  int mm = 0;
  if (s.size() == 4) {
    if (!read_int(s, 0, 2, hh) || !read_int(s, 2, 2, mm)) return std::nullopt;
  } else if (s.size() == 5 && s[2] == ':') {
    if (!read_int(s, 0, 2, hh) || !read_int(s, 3, 2, mm)) return std::nullopt;
  } else {
    return std::nullopt;
  }
  return sign * (hh * 3600 + mm * 60);
}

// Tue Jun 11 11:20:35 +0000 2013
std::optional<Timestamp> parse_api_style(std::string_view s) {
  if (s.size() != 30 || s[3] != ' ' || s[7] != ' ' || s[10] != ' ' || s[19] != ' ' ||
      s[25] != ' ') {
    return std::nullopt;
  }
  const auto month = month_from_abbrev(s.substr(4, 3));
  int d = 0, h = 0, mi = 0, sec = 0, y = 0;
  if (!month || !read_int(s, 8, 2, d) || !read_int(s, 11, 2, h) || s[13] != ':' ||
      !read_int(s, 14, 2, mi) || s[16] != ':' || !read_int(s, 17, 2, sec) ||
      !read_int(s, 26, 4, y)) {
    return std::nullopt;
  }
  const auto off = parse_offset(s.substr(20, 5));
  if (!off) return std::nullopt;
  return build(y, *month, static_cast<unsigned>(d), h, mi, sec, *off);
}

// 2013-06-11[ T]11:20:35[Z|+hh:mm|.fff]
std::optional<Timestamp> parse_iso_style(std::string_view s) {
  int y = 0, mo = 0, d = 0;
  if (s.size() < 10 || !read_int(s, 0, 4, y) || s[4] != '-' || !read_int(s, 5, 2, mo) ||
      s[7] != '-' || !read_int(s, 8, 2, d)) {
    return std::nullopt;
  }
  if (s.size() == 10) return build(y, mo, d, 0, 0, 0, 0);
  int h = 0, mi = 0, sec = 0;
  if (s.size() < 19 || (s[10] != ' ' && s[10] != 'T') || !read_int(s, 11, 2, h) ||
      s[13] != ':' || !read_int(s, 14, 2, mi) || s[16] != ':' || !read_int(s, 17, 2, sec)) {
    return std::nullopt;
  }
  std::string_view rest = s.substr(19);
  if (!rest.empty() && rest.front() == '.') {
    rest.remove_prefix(1);
    while (!rest.empty() && std::isdigit(static_cast<unsigned char>(rest.front()))) {
      rest.remove_prefix(1);
    }
  }
  rest = trim(rest);
  const auto off = parse_offset(rest);
  if (!off) return std::nullopt;
  return build(y, static_cast<unsigned>(mo), static_cast<unsigned>(d), h, mi, sec, *off);
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (auto t = parse_api_style(text)) return t;
  return parse_iso_style(text);
}

std::string format_timestamp(Timestamp t) {
  const std::int64_t secs = t.time_since_epoch().count();
  std::int64_t days = secs / 86400;
  std::int64_t rem = secs % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  // civil_from_days
  days += 719468;
  const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
  const auto doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  if (m <= 2) ++y;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                static_cast<long long>((rem % 3600) / 60), static_cast<long long>(rem % 60));
  return buf;
}

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute,
                         int second) {
  const std::int64_t secs =
      days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
  return Timestamp{std::chrono::seconds{secs}};
}

}  // namespace botminer
