#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace transeal {

using Timestamp = std::chrono::sys_seconds;

// A point in time plus an optional label naming where it came from
// (e.g. a time-stamping service). The label is recorded, never verified.
struct TimeStamp {
  Timestamp time;
  std::optional<std::string> source;

  bool operator==(const TimeStamp&) const = default;
};

using Clock = std::function<Timestamp()>;
Clock system_clock();

// "YYYY-MM-DDThh:mm:ssZ"
std::string format_utc(Timestamp t);

// Accepts "YYYY-MM-DDThh:mm:ss" followed by "Z" or "+hh:mm"/"-hh:mm" and
// normalises to UTC. Throws ParseError.
Timestamp parse_timestamp(std::string_view text);

Timestamp make_utc(int year, unsigned month, unsigned day, int hour = 0, int minute = 0,
                   int second = 0);

}  // namespace transeal
