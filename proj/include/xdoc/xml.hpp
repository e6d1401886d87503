// Copyright 2026 The XDOC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Inline XML annotation model shared by all processing stages.
//
// A document is an ordered tree of elements and text spans; proper nesting
// is guaranteed by construction. The serializer is deterministic: attributes
// keep their stored order, text is escaped, no whitespace is invented.

#ifndef XDOC_XML_HPP_
#define XDOC_XML_HPP_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace xdoc {

struct TextSpan {
  std::string text;  // decoded; never contains raw markup
  bool operator==(const TextSpan&) const = default;
};

struct Attribute {
  std::string name;
  std::string value;
  bool operator==(const Attribute&) const = default;
};

struct Node;

class Element {
 public:
  Element() = default;
  // Validates the tag name; throws MalformedXml on a bad name.
  explicit Element(std::string name);

  const std::string& name() const { return name_; }
  void set_name(std::string name);

  const std::vector<Attribute>& attributes() const { return attributes_; }
  // Returns nullptr when absent.
  const std::string* attr(std::string_view name) const;
  // Sets or replaces; insertion order is preserved on replace.
  void set_attr(std::string_view name, std::string_view value);
  bool remove_attr(std::string_view name);

  std::vector<Node>& children() { return children_; }
  const std::vector<Node>& children() const { return children_; }

  Element& add_element(std::string name);
  void add_text(std::string text);
  void add_child(Node node);

  bool operator==(const Element&) const = default;

 private:
  std::string name_;
  std::vector<Attribute> attributes_;
  std::vector<Node> children_;
};

struct Node {
  std::variant<Element, TextSpan> value;

  Node(Element e) : value(std::move(e)) {}          // NOLINT(runtime/explicit)
  Node(TextSpan t) : value(std::move(t)) {}         // NOLINT(runtime/explicit)

  bool is_element() const { return std::holds_alternative<Element>(value); }
  bool is_text() const { return std::holds_alternative<TextSpan>(value); }
  Element& element() { return std::get<Element>(value); }
  const Element& element() const { return std::get<Element>(value); }
  const std::string& text() const { return std::get<TextSpan>(value).text; }

  bool operator==(const Node&) const = default;
};

struct AnnotatedDocument {
  Element root;
  bool operator==(const AnnotatedDocument&) const = default;
};

// True iff `name` matches the accepted XML name subset: letters, digits,
// '-', '_', '.', ':' with no leading digit, '-' or '.'.
bool valid_xml_name(std::string_view name);

// Parses a document from UTF-8 input. Supported subset: elements,
// attributes, character data, the five predefined entities and numeric
// character references. Comments and processing instructions are skipped.
// Throws MalformedXml.
AnnotatedDocument parse_xml(std::string_view input);

// Deterministic serialization; childless elements collapse to `<a/>`.
std::string serialize_xml(const AnnotatedDocument& doc);
std::string serialize_xml(const Element& element);

// serialize_xml plus the XML declaration line and a trailing newline;
// this is the on-disk file format of every stage.
std::string write_document(const AnnotatedDocument& doc);

// Escapes '&' '<' '>' '"' for use in text or attribute values.
std::string xml_escape(std::string_view text);

// Reparents children [from..to] of `parent` under a new element inserted at
// position `from`. Returns a reference to the new element. Throws
// IndexOutOfRange when from > to or to >= child count.
Element& wrap_span(Element& parent, std::size_t from, std::size_t to,
                   std::string name, std::vector<Attribute> attrs = {});

// Concatenation of all descendant text spans in document order.
std::string text_content(const Node& node);
std::string text_content(const Element& element);

}  // namespace xdoc

#endif  // XDOC_XML_HPP_
