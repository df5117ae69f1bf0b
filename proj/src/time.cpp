#include "transeal/time.hpp"

#include <cstdio>

#include "transeal/error.hpp"

namespace transeal {

namespace {

// Howard Hinnant's civil calendar algorithms (proleptic Gregorian).
long long days_from_civil(long long y, unsigned m, unsigned d) {
  y -= m <= 2;
  const long long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<long long>(doe) - 719468;
}

void civil_from_days(long long z, long long& y, unsigned& m, unsigned& d) {
  z += 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<long long>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

unsigned days_in_month(long long y, unsigned m) {
  static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  return m == 2 && leap ? 29 : kDays[m - 1];
}

int digits(std::string_view text, std::size_t at, std::size_t count) {
  int value = 0;
  if (at + count > text.size()) fail_parse("truncated timestamp", text.size());
  for (std::size_t i = at; i < at + count; ++i) {
    if (text[i] < '0' || text[i] > '9') fail_parse("expected digit in timestamp", i);
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

void literal(std::string_view text, std::size_t at, char c) {
  if (at >= text.size() || text[at] != c)
    fail_parse(std::string("expected '") + c + "' in timestamp", at);
}

}  // namespace

Clock system_clock() {
  return [] { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); };
}

Timestamp make_utc(int year, unsigned month, unsigned day, int hour, int minute, int second) {
  const long long days = days_from_civil(year, month, day);
  return Timestamp{std::chrono::seconds{days * 86400 + hour * 3600 + minute * 60 + second}};
}

std::string format_utc(Timestamp t) {
  const long long secs = t.time_since_epoch().count();
  long long days = secs / 86400;
  long long rem = secs % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  long long y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ", y, m, d, rem / 3600,
                rem / 60 % 60, rem % 60);
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  const int year = digits(text, 0, 4);
  literal(text, 4, '-');
  const int month = digits(text, 5, 2);
  literal(text, 7, '-');
  const int day = digits(text, 8, 2);
  literal(text, 10, 'T');
  const int hour = digits(text, 11, 2);
  literal(text, 13, ':');
  const int minute = digits(text, 14, 2);
  literal(text, 16, ':');
  const int second = digits(text, 17, 2);
  if (month < 1 || month > 12) fail_parse("month out of range", 5);
  if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, month))
    fail_parse("day out of range", 8);
  if (hour > 23) fail_parse("hour out of range", 11);
  if (minute > 59) fail_parse("minute out of range", 14);
  if (second > 59) fail_parse("second out of range", 17);

  int offset_seconds = 0;
  if (text.size() == 20 && text[19] == 'Z') {
    // UTC
  } else if (text.size() == 25 && (text[19] == '+' || text[19] == '-')) {
    const int oh = digits(text, 20, 2);
    literal(text, 22, ':');
    const int om = digits(text, 23, 2);
    if (oh > 23 || om > 59) fail_parse("offset out of range", 20);
    offset_seconds = (oh * 3600 + om * 60) * (text[19] == '+' ? 1 : -1);
  } else {
    fail_parse("expected 'Z' or a +hh:mm offset", std::min<std::size_t>(19, text.size()));
  }
  return make_utc(year, month, day, hour, minute, second) - std::chrono::seconds{offset_seconds};
}

}  // namespace transeal
