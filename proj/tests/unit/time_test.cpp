#include <doctest.h>

#include <ctime>
#include <random>

#include "transeal/error.hpp"
#include "transeal/time.hpp"

using namespace transeal;

namespace {

// Independent epoch conversion through the C library.
long long libc_epoch(int y, int mo, int d, int h, int mi, int s) {
  std::tm tm{};
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return static_cast<long long>(timegm(&tm));
}

}  // namespace

TEST_CASE("format and parse agree with timegm") {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    const int y = 1970 + static_cast<int>(rng() % 130), mo = 1 + rng() % 12, d = 1 + rng() % 28,
              h = rng() % 24, mi = rng() % 60, s = rng() % 60;
    const auto t = make_utc(y, mo, d, h, mi, s);
    REQUIRE(t.time_since_epoch().count() == libc_epoch(y, mo, d, h, mi, s));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, mo, d, h, mi, s);
    REQUIRE(format_utc(t) == buf);
    REQUIRE(parse_timestamp(buf) == t);
  }
}

TEST_CASE("epoch") {
  CHECK(format_utc(Timestamp{}) == "1970-01-01T00:00:00Z");
  CHECK(parse_timestamp("1970-01-01T00:00:00Z") == Timestamp{});
}

TEST_CASE("offsets normalise to UTC") {
  CHECK(parse_timestamp("2005-06-01T12:00:00+02:00") == make_utc(2005, 6, 1, 10, 0, 0));
  CHECK(parse_timestamp("2005-06-01T12:00:00-05:30") == make_utc(2005, 6, 1, 17, 30, 0));
  CHECK(parse_timestamp("2005-01-01T00:30:00+01:00") == make_utc(2004, 12, 31, 23, 30, 0));
}

TEST_CASE("malformed timestamps") {
  for (const char* bad : {"2005-13-01T00:00:00Z", "2005-02-30T00:00:00Z", "2005-01-01T24:00:00Z",
                          "2005-01-01T00:00:00", "2005-01-01 00:00:00Z", "2005-01-01T00:00:60Z",
                          "2005-01-01T00:00:00+24:00", "20050101T000000Z", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_timestamp(bad), Error);
  }
  CHECK_NOTHROW(parse_timestamp("2004-02-29T00:00:00Z"));
  CHECK_THROWS_AS(parse_timestamp("2005-02-29T00:00:00Z"), Error);
}
