#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace botminer {

/// UTC instant with one-second resolution.
using Timestamp = std::chrono::sys_seconds;

/// Parses the timestamp layouts found in bot-detection dumps:
///   "Tue Jun 11 11:20:35 +0000 2013"   (platform API style)
///   "2013-06-11 11:20:35"              (SQL style, interpreted as UTC)
///   "2013-06-11T11:20:35Z", "2013-06-11T11:20:35+02:00", "2013-06-11"
/// Surrounding whitespace is ignored. Returns nullopt on anything else.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// ISO-8601 "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour = 0,
                         int minute = 0, int second = 0);

}  // namespace botminer
