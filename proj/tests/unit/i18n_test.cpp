#include <doctest.h>

#include <random>

#include "transeal/error.hpp"
#include "transeal/i18n.hpp"

using namespace transeal;
using namespace transeal::i18n;

namespace {

std::optional<std::size_t> tag_error_offset(std::string_view tag) {
  try {
    validate_language_tag(tag);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidLanguageTag);
    return e.position();
  }
  return std::nullopt;
}

// Grammar oracle: primary subtag 1-8 letters, further subtags 1-8
// alphanumerics, joined by single hyphens.
bool oracle_valid(const std::string& tag) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : tag) {
    if (c == '-') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.empty() || p.size() > 8) return false;
    for (char c : p) {
      const bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
      const bool digit = c >= '0' && c <= '9';
      if (!(letter || (i > 0 && digit))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("two- and three-letter codes for English are accepted") {
  CHECK(validate_language_tag("en").primary_subtag == "en");
  CHECK(validate_language_tag("eng").primary_subtag == "eng");
  CHECK(validate_language_tag("en-US").subtags == std::vector<std::string>{"US"});
  CHECK(validate_language_tag("de-AT").subtags == std::vector<std::string>{"AT"});
  CHECK(validate_language_tag("de-AT-1996").subtags.size() == 2);
  CHECK(validate_language_tag("i-klingon").primary_subtag == "i");
}

TEST_CASE("malformed tags name the offending offset") {
  CHECK(tag_error_offset("q1") == 1);
  CHECK(tag_error_offset("") == 0);
  CHECK(tag_error_offset("en--US") == 3);
  CHECK(tag_error_offset("en-") == 3);
  CHECK(tag_error_offset("abcdefghi") == 8);
  CHECK(tag_error_offset("en-abcdefghi") == 11);
  CHECK(tag_error_offset("en_US") == 2);
  CHECK(tag_error_offset("1en") == 0);
}

TEST_CASE("random tags agree with the grammar oracle") {
  std::mt19937 rng(13);
  const std::string alphabet = "abcXYZ019-_";
  for (int i = 0; i < 5000; ++i) {
    std::string tag;
    const auto len = rng() % 14;
    for (unsigned k = 0; k < len; ++k) tag += alphabet[rng() % alphabet.size()];
    CAPTURE(tag);
    REQUIRE(!tag_error_offset(tag).has_value() == oracle_valid(tag));
  }
}

TEST_CASE("tags compare case-insensitively") {
  CHECK(same_language("en-US", "EN-us"));
  CHECK_FALSE(same_language("en", "eng"));
}

TEST_CASE("transliteration table for Latin targets") {
  const auto reg = TransliterationRegistry::defaults();
  CHECK(reg.lookup("Arabic") == std::vector<std::string>{"ISO 233", "DIN 31635"});
  CHECK(reg.lookup("Greek") == std::vector<std::string>{"ISO 843", "DIN 31634"});
  CHECK(reg.lookup("Hebrew") == std::vector<std::string>{"ISO 259", "DIN 31636"});
  CHECK(reg.lookup("Cyrillic") == std::vector<std::string>{"ISO 9", "DIN 1460"});
  CHECK(reg.entries().size() == 4);
  CHECK(reg.lookup("Thai").empty());
  CHECK(kPhoneticFallback == "common phonetic rules");
}

TEST_CASE("transliteration registry file format") {
  const auto reg = TransliterationRegistry::parse(
      "# comment\n\nArmenian\tISO 9985\nArmenian\tDIN 31637\nGeorgian\tISO 9984\n");
  CHECK(reg.lookup("Armenian") == std::vector<std::string>{"ISO 9985", "DIN 31637"});
  CHECK(reg.lookup("Georgian").size() == 1);
  CHECK_THROWS_AS(TransliterationRegistry::parse("no tab here\n"), Error);
  CHECK_THROWS_AS(TransliterationRegistry::parse("\tISO 1\n"), Error);
}

TEST_CASE("Buddhist Era to Gregorian and back") {
  const auto th = thai_buddhist_calendar();
  CHECK(th.offset_years == 543);
  CHECK(convert_year(th, 2548, YearDirection::ToGregorian) == 2005);
  CHECK(convert_year(th, 2005, YearDirection::FromGregorian) == 2548);
  for (int y = 544; y < 4000; y += 37)
    REQUIRE(convert_year(th, convert_year(th, y, YearDirection::ToGregorian), YearDirection::FromGregorian) == y);
}

TEST_CASE("calendar conversion domain") {
  const auto th = thai_buddhist_calendar();
  CHECK_THROWS_AS(convert_year(th, 543, YearDirection::ToGregorian), Error);
  CHECK_THROWS_AS(convert_year(th, 0, YearDirection::FromGregorian), Error);
  CHECK_THROWS_AS(convert_year(th, -5, YearDirection::ToGregorian), Error);
  try {
    convert_year(th, 100, YearDirection::ToGregorian);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfDomain);
  }
}
