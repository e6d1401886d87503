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

#include "xdoc/xml.hpp"

#include <algorithm>
#include <cctype>

#include "xdoc/errors.hpp"

namespace xdoc {

namespace {

bool name_start_char(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         c == '-' || c == '.';
}

}  // namespace

bool valid_xml_name(std::string_view name) {
  if (name.empty() || !name_start_char(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), name_char);
}

Element::Element(std::string name) { set_name(std::move(name)); }

void Element::set_name(std::string name) {
  if (!valid_xml_name(name))
    throw MalformedXml(0, "invalid element name '" + name + "'");
  name_ = std::move(name);
}

const std::string* Element::attr(std::string_view name) const {
  for (const auto& a : attributes_)
    if (a.name == name) return &a.value;
  return nullptr;
}

void Element::set_attr(std::string_view name, std::string_view value) {
  if (!valid_xml_name(name))
    throw MalformedXml(0, "invalid attribute name '" + std::string(name) + "'");
  for (auto& a : attributes_) {
    if (a.name == name) {
      a.value = std::string(value);
      return;
    }
  }
  attributes_.push_back({std::string(name), std::string(value)});
}

bool Element::remove_attr(std::string_view name) {
  for (auto it = attributes_.begin(); it != attributes_.end(); ++it) {
    if (it->name == name) {
      attributes_.erase(it);
      return true;
    }
  }
  return false;
}

Element& Element::add_element(std::string name) {
  children_.emplace_back(Element(std::move(name)));
  return children_.back().element();
}

void Element::add_text(std::string text) {
  if (text.empty()) return;
  // Merge with a preceding text span so parse(serialize(d)) cannot differ
  // from d by split spans.
  if (!children_.empty() && children_.back().is_text()) {
    std::get<TextSpan>(children_.back().value).text += text;
    return;
  }
  children_.emplace_back(TextSpan{std::move(text)});
}

void Element::add_child(Node node) {
  if (node.is_text()) {
    add_text(std::move(std::get<TextSpan>(node.value).text));
    return;
  }
  children_.push_back(std::move(node));
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view input) : in_(input) {}

  AnnotatedDocument parse() {
    skip_prolog();
    AnnotatedDocument doc{parse_element()};
    skip_misc();
    if (pos_ != in_.size()) fail("content after document element");
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw MalformedXml(pos_, reason);
  }

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  bool looking_at(std::string_view s) const {
    return in_.compare(pos_, s.size(), s) == 0;
  }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                      peek() == '\r'))
      ++pos_;
  }

  // XML declaration, comments, PIs and whitespace before/after the root.
  void skip_prolog() {
    for (;;) {
      skip_ws();
      if (looking_at("<?")) {
        skip_until("?>");
      } else if (looking_at("<!--")) {
        skip_until("-->");
      } else {
        return;
      }
    }
  }

  void skip_misc() { skip_prolog(); }

  void skip_until(std::string_view close) {
    auto p = in_.find(close, pos_);
    if (p == std::string_view::npos) fail("unterminated '" +
                                          std::string(close) + "' section");
    pos_ = p + close.size();
  }

  std::string parse_name() {
    std::size_t start = pos_;
    if (eof() || !name_start_char(peek())) fail("expected name");
    ++pos_;
    while (!eof() && name_char(peek())) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  std::string parse_reference() {
    std::size_t start = pos_;
    ++pos_;  // '&'
    auto semi = in_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 10)
      fail("unterminated entity reference");
    std::string_view name = in_.substr(pos_, semi - pos_);
    pos_ = semi + 1;
    if (name == "amp") return "&";
    if (name == "lt") return "<";
    if (name == "gt") return ">";
    if (name == "quot") return "\"";
    if (name == "apos") return "'";
    if (!name.empty() && name[0] == '#') return decode_char_ref(name, start);
    throw MalformedXml(start, "undefined entity '&" + std::string(name) + ";'");
  }

  std::string decode_char_ref(std::string_view body, std::size_t start) {
    body.remove_prefix(1);
    int base = 10;
    if (!body.empty() && (body[0] == 'x' || body[0] == 'X')) {
      base = 16;
      body.remove_prefix(1);
    }
    if (body.empty()) throw MalformedXml(start, "empty character reference");
    unsigned long cp = 0;
    for (char c : body) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else throw MalformedXml(start, "bad character reference");
      cp = cp * base + static_cast<unsigned long>(d);
      if (cp > 0x10FFFF) throw MalformedXml(start, "character out of range");
    }
    // Encode as UTF-8.
    std::string out;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
  }

  std::string parse_attr_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quote");
    char quote = peek();
    ++pos_;
    std::string value;
    while (!eof() && peek() != quote) {
      if (peek() == '<') fail("'<' in attribute value");
      if (peek() == '&') {
        value += parse_reference();
      } else {
        value += peek();
        ++pos_;
      }
    }
    if (eof()) fail("unterminated attribute value");
    ++pos_;
    return value;
  }

  Element parse_element() {
    if (eof() || peek() != '<') fail("expected element");
    std::size_t open_pos = pos_;
    ++pos_;
    Element element;
    std::string name = parse_name();
    if (!valid_xml_name(name)) fail("invalid element name '" + name + "'");
    element.set_name(name);
    for (;;) {
      bool had_ws = !eof() && std::isspace(static_cast<unsigned char>(peek()));
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '>') {
        ++pos_;
        break;
      }
      if (looking_at("/>")) {
        pos_ += 2;
        return element;
      }
      if (!had_ws) fail("expected whitespace before attribute");
      std::size_t attr_pos = pos_;
      std::string attr_name = parse_name();
      if (element.attr(attr_name) != nullptr)
        throw MalformedXml(attr_pos, "duplicate attribute '" + attr_name + "'");
      skip_ws();
      if (eof() || peek() != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_ws();
      element.set_attr(attr_name, parse_attr_value());
    }
    // Content.
    std::string text;
    auto flush_text = [&] {
      element.add_text(std::move(text));
      text.clear();
    };
    for (;;) {
      if (eof()) throw MalformedXml(open_pos, "unterminated element <" +
                                                  element.name() + ">");
      char c = peek();
      if (c == '<') {
        if (looking_at("</")) {
          flush_text();
          pos_ += 2;
          std::size_t close_pos = pos_;
          std::string close = parse_name();
          if (close != element.name())
            throw MalformedXml(close_pos, "mismatched close tag </" + close +
                                              "> for <" + element.name() +
                                              ">");
          skip_ws();
          if (eof() || peek() != '>') fail("expected '>' in close tag");
          ++pos_;
          return element;
        }
        if (looking_at("<!--")) {
          skip_until("-->");
          continue;
        }
        if (looking_at("<?")) {
          skip_until("?>");
          continue;
        }
        flush_text();
        element.add_child(Node(parse_element()));
      } else if (c == '&') {
        text += parse_reference();
      } else if (c == '>') {
        fail("raw '>' in character data");
      } else {
        text += c;
        ++pos_;
      }
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

void serialize_node(const Node& node, std::string& out);

void serialize_element(const Element& element, std::string& out) {
  out += '<';
  out += element.name();
  for (const auto& a : element.attributes()) {
    out += ' ';
    out += a.name;
    out += "=\"";
    out += xml_escape(a.value);
    out += '"';
  }
  if (element.children().empty()) {
    out += "/>";
    return;
  }
  out += '>';
  for (const auto& child : element.children()) serialize_node(child, out);
  out += "</";
  out += element.name();
  out += '>';
}

void serialize_node(const Node& node, std::string& out) {
  if (node.is_text()) {
    out += xml_escape(node.text());
  } else {
    serialize_element(node.element(), out);
  }
}

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

AnnotatedDocument parse_xml(std::string_view input) {
  return Parser(input).parse();
}

std::string serialize_xml(const Element& element) {
  std::string out;
  serialize_element(element, out);
  return out;
}

std::string serialize_xml(const AnnotatedDocument& doc) {
  return serialize_xml(doc.root);
}

std::string write_document(const AnnotatedDocument& doc) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" + serialize_xml(doc) +
         "\n";
}

Element& wrap_span(Element& parent, std::size_t from, std::size_t to,
                   std::string name, std::vector<Attribute> attrs) {
  if (from > to || to >= parent.children().size())
    throw IndexOutOfRange("wrap_span range [" + std::to_string(from) + ", " +
                          std::to_string(to) + "] out of range for " +
                          std::to_string(parent.children().size()) +
                          " children");
  Element wrapper(std::move(name));
  for (auto& a : attrs) wrapper.set_attr(a.name, a.value);
  auto& kids = parent.children();
  for (std::size_t i = from; i <= to; ++i)
    wrapper.children().push_back(std::move(kids[i]));
  kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(from),
             kids.begin() + static_cast<std::ptrdiff_t>(to) + 1);
  kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(from),
              Node(std::move(wrapper)));
  return kids[from].element();
}

std::string text_content(const Element& element) {
  std::string out;
  for (const auto& child : element.children()) out += text_content(child);
  return out;
}

std::string text_content(const Node& node) {
  if (node.is_text()) return node.text();
  return text_content(node.element());
}

}  // namespace xdoc
