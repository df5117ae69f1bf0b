#include "transeal/xml.hpp"

#include "transeal/error.hpp"

namespace transeal::xml {

Element& Element::add(std::string child_name, std::string child_text) {
  children.emplace_back(std::move(child_name), std::move(child_text));
  return children.back();
}

Element& Element::add(Element child) {
  children.push_back(std::move(child));
  return children.back();
}

const Element* Element::find(std::string_view child_name) const {
  for (const auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

namespace {

void escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
}

void write_into(std::string& out, const Element& e) {
  out.push_back('<');
  out += e.name;
  out.push_back('>');
  if (e.children.empty()) {
    escape_into(out, e.text);
  } else {
    for (const auto& c : e.children) write_into(out, c);
  }
  out += "</";
  out += e.name;
  out.push_back('>');
}

bool is_name_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

constexpr int kMaxDepth = 64;

class Parser {
 public:
  explicit Parser(std::string_view in) : in_(in) {}

  Element document() {
    skip_space();
    if (in_.substr(pos_, 5) == "<?xml") {
      const auto close = in_.find("?>", pos_);
      if (close == std::string_view::npos) fail_parse("unterminated XML declaration", pos_);
      pos_ = close + 2;
    }
    skip_space();
    Element root = element(0);
    skip_space();
    if (pos_ != in_.size()) fail_parse("trailing content after root element", pos_);
    return root;
  }

 private:
  Element element(int depth) {
    if (depth > kMaxDepth) fail_parse("nesting too deep", pos_);
    expect('<');
    Element e(name());
    if (peek() == '/') {
      ++pos_;
      expect('>');
      return e;
    }
    if (peek() != '>') fail_parse("attributes are not supported", pos_);
    ++pos_;

    std::string text;
    bool saw_non_space = false;
    while (true) {
      if (pos_ >= in_.size()) fail_parse("unterminated element <" + e.name + ">", pos_);
      const char c = in_[pos_];
      if (c == '<') {
        if (pos_ + 1 < in_.size() && in_[pos_ + 1] == '/') break;
        if (saw_non_space) fail_parse("mixed content in <" + e.name + ">", pos_);
        e.children.push_back(element(depth + 1));
        continue;
      }
      if (c == '&') {
        text.push_back(entity());
        saw_non_space = true;
        continue;
      }
      if (c == '>') fail_parse("unescaped '>'", pos_);
      if (!is_space(c)) {
        if (!e.children.empty()) fail_parse("mixed content in <" + e.name + ">", pos_);
        saw_non_space = true;
      }
      text.push_back(c);
      ++pos_;
    }
    if (e.children.empty()) e.text = std::move(text);
    pos_ += 2;  // "</"
    const auto close_at = pos_;
    if (name() != e.name) fail_parse("mismatched closing tag for <" + e.name + ">", close_at);
    expect('>');
    return e;
  }

  std::string name() {
    const auto start = pos_;
    if (pos_ >= in_.size() || !is_name_start(in_[pos_])) fail_parse("expected element name", pos_);
    while (pos_ < in_.size() && is_name_char(in_[pos_])) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  char entity() {
    const auto start = pos_;
    for (auto [ent, ch] : {std::pair{"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}}) {
      const std::string_view sv(ent);
      if (in_.substr(pos_, sv.size()) == sv) {
        pos_ += sv.size();
        return ch;
      }
    }
    fail_parse("unsupported entity", start);
  }

  void expect(char c) {
    if (pos_ >= in_.size() || in_[pos_] != c)
      fail_parse(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  char peek() const {
    if (pos_ >= in_.size()) fail_parse("unexpected end of input", pos_);
    return in_[pos_];
  }

  void skip_space() {
    while (pos_ < in_.size() && is_space(in_[pos_])) ++pos_;
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string write(const Element& root) {
  std::string out;
  write_into(out, root);
  return out;
}

Element parse(std::string_view document) { return Parser(document).document(); }

ChildReader::ChildReader(const Element& parent) : parent_(parent) {
  if (parent.children.empty() && !parent.text.empty())
    fail(ErrorCode::ParseError, "<" + parent.name + "> must contain elements, not text");
}

const Element& ChildReader::required(std::string_view name) {
  const Element* e = optional(name);
  if (!e)
    fail(ErrorCode::ParseError,
         "<" + parent_.name + "> is missing required element <" + std::string(name) + ">");
  return *e;
}

const Element* ChildReader::optional(std::string_view name) {
  if (next_ < parent_.children.size() && parent_.children[next_].name == name)
    return &parent_.children[next_++];
  return nullptr;
}

std::vector<const Element*> ChildReader::repeated(std::string_view name) {
  std::vector<const Element*> out;
  while (const Element* e = optional(name)) out.push_back(e);
  return out;
}

std::string ChildReader::required_text(std::string_view name) { return leaf_text(required(name)); }

void ChildReader::finish() const {
  if (next_ != parent_.children.size())
    fail(ErrorCode::ParseError, "unexpected element <" + parent_.children[next_].name + "> in <" +
                                    parent_.name + ">");
}

const std::string& leaf_text(const Element& e) {
  if (!e.children.empty()) fail(ErrorCode::ParseError, "<" + e.name + "> must contain text only");
  return e.text;
}

}  // namespace transeal::xml
