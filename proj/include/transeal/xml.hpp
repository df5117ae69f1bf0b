#pragma once

// Element-only XML subset used for every on-disk and signed format.
//
// Canonical form: UTF-8, no declaration, no attributes, no whitespace between
// elements, every element written as <Name>...</Name> (never self-closing),
// text escaped with &amp; &lt; &gt; only. An element carries either text or
// children, never both.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace transeal::xml {

struct Element {
  std::string name;
  std::string text;
  std::vector<Element> children;

  Element() = default;
  explicit Element(std::string n, std::string t = {}) : name(std::move(n)), text(std::move(t)) {}

  Element& add(std::string child_name, std::string child_text = {});
  Element& add(Element child);

  const Element* find(std::string_view child_name) const;

  bool operator==(const Element&) const = default;
};

std::string write(const Element& root);

// Accepts an optional <?xml ...?> prolog, whitespace between elements and
// <X/>; rejects attributes, comments, mixed content and unknown entities.
Element parse(std::string_view document);

// Walks an element's children in schema order. Each accessor consumes the
// next child only if its name matches, so out-of-order or duplicate
// elements are rejected by finish().
class ChildReader {
 public:
  explicit ChildReader(const Element& parent);

  const Element& required(std::string_view name);
  const Element* optional(std::string_view name);
  std::vector<const Element*> repeated(std::string_view name);
  std::string required_text(std::string_view name);
  void finish() const;

 private:
  const Element& parent_;
  std::size_t next_ = 0;
};

// Text of a leaf element; throws ParseError if it has children.
const std::string& leaf_text(const Element& e);

}  // namespace transeal::xml
