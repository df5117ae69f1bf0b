#include "transeal/i18n.hpp"

#include <cctype>

#include "transeal/error.hpp"

namespace transeal::i18n {

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void bad_tag(std::string_view raw, std::string why, std::size_t pos) {
  throw Error(ErrorCode::InvalidLanguageTag,
              "invalid language tag '" + std::string(raw) + "': " + why + " at offset " +
                  std::to_string(pos),
              {}, pos);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

LanguageTag validate_language_tag(std::string_view raw) {
  LanguageTag tag{std::string(raw), {}, {}};
  std::size_t start = 0;
  bool primary = true;
  while (true) {
    std::size_t end = start;
    while (end < raw.size() && raw[end] != '-') {
      const char c = raw[end];
      if (primary ? !is_alpha(c) : !(is_alpha(c) || is_digit(c)))
        bad_tag(raw, primary ? "primary subtag must be letters" : "subtag must be alphanumeric",
                end);
      if (end - start == 8) bad_tag(raw, "subtag longer than 8 characters", end);
      ++end;
    }
    if (end == start) bad_tag(raw, "empty subtag", start);
    auto part = std::string(raw.substr(start, end - start));
    if (primary) {
      tag.primary_subtag = std::move(part);
    } else {
      tag.subtags.push_back(std::move(part));
    }
    primary = false;
    if (end == raw.size()) break;
    start = end + 1;
  }
  return tag;
}

bool same_language(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

TransliterationRegistry TransliterationRegistry::defaults() {
  TransliterationRegistry r;
  r.entries_["Arabic"] = {"ISO 233", "DIN 31635"};
  r.entries_["Greek"] = {"ISO 843", "DIN 31634"};
  r.entries_["Hebrew"] = {"ISO 259", "DIN 31636"};
  r.entries_["Cyrillic"] = {"ISO 9", "DIN 1460"};
  return r;
}

TransliterationRegistry TransliterationRegistry::parse(std::string_view text) {
  TransliterationRegistry r;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto tab = content.find('\t');
    if (tab == std::string::npos)
      fail(ErrorCode::ConfigError,
           "transliteration registry line " + std::to_string(line_no) + " has no TAB separator");
    auto script = trim(std::string_view(content).substr(0, tab));
    auto standard = trim(std::string_view(content).substr(tab + 1));
    if (script.empty() || standard.empty())
      fail(ErrorCode::ConfigError,
           "transliteration registry line " + std::to_string(line_no) + " is incomplete");
    r.entries_[script].push_back(std::move(standard));
  }
  return r;
}

std::vector<std::string> TransliterationRegistry::lookup(std::string_view script) const {
  const auto it = entries_.find(script);
  return it == entries_.end() ? std::vector<std::string>{} : it->second;
}

CalendarConversion thai_buddhist_calendar() { return {"buddhist-gregorian-th", 543}; }

int convert_year(const CalendarConversion& conv, int year, YearDirection direction) {
  const int result =
      direction == YearDirection::ToGregorian ? year - conv.offset_years : year + conv.offset_years;
  if (year < 1 || result < 1)
    fail(ErrorCode::OutOfDomain, "year " + std::to_string(year) + " is outside the domain of " +
                                     conv.method_label);
  return result;
}

}  // namespace transeal::i18n
