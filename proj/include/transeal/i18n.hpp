#pragma once

// Language tags (RFC 3066 syntax), transliteration standards and calendar
// year conversions recorded in a translation's language specification.

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace transeal::i18n {

struct LanguageTag {
  std::string raw;
  std::string primary_subtag;
  std::vector<std::string> subtags;  // everything after the primary subtag
};

// Primary subtag: 1-8 ASCII letters. Each further subtag: 1-8 ASCII letters
// or digits. Subtags joined by '-'. Throws InvalidLanguageTag carrying the
// offset of the first offending character.
LanguageTag validate_language_tag(std::string_view raw);

// Tags compare case-insensitively.
bool same_language(std::string_view a, std::string_view b);

class TransliterationRegistry {
 public:
  // The transliteration table for Latin-script targets (Arabic, Greek,
  // Hebrew, Cyrillic).
  static TransliterationRegistry defaults();

  // "script<TAB>standard" per line; blank lines and '#' comments skipped.
  // Lines for a script already present append to its list.
  static TransliterationRegistry parse(std::string_view text);

  // Empty when the script has no standard; the caller then records that
  // common phonetic rules were applied.
  std::vector<std::string> lookup(std::string_view script) const;

  const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

inline constexpr std::string_view kPhoneticFallback = "common phonetic rules";

enum class YearDirection { ToGregorian, FromGregorian };

// Whole-year offset between a calendar and the Gregorian calendar.
// Domain: years >= 1 on both sides.
struct CalendarConversion {
  std::string method_label;
  int offset_years = 0;
};

// "buddhist-gregorian-th", offset 543.
CalendarConversion thai_buddhist_calendar();

// Throws OutOfDomain when either side of the conversion would be < 1.
int convert_year(const CalendarConversion& conv, int year, YearDirection direction);

}  // namespace transeal::i18n
