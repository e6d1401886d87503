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

#include "xdoc/report.hpp"

#include <map>
#include <vector>

namespace xdoc {

namespace {

const char kStyle[] = R"(body{font-family:sans-serif;margin:2em}
.tok{padding:1px 3px;border-radius:3px;margin:0 1px}
.cat-N{background:#cde4ff}.cat-V{background:#ffd9c0}.cat-ADJ{background:#d3f7c6}
.cat-DETD,.cat-DETI{background:#eadcff}.cat-PRP{background:#fff3b0}
.cat-IP{background:#eee}.cat-XXX{background:#ffc9c9}
.cat-CONCEPT{background:#b7e3f5}.cat-PROPERTY{background:#f5d9b7}
.type{color:#555;font-size:80%;vertical-align:super}
table{border-collapse:collapse;margin:1em 0}
td,th{border:1px solid #bbb;padding:2px 8px}
pre{background:#f6f6f6;padding:1em;overflow-x:auto}
.attrs{color:#777;font-size:80%})";

void render_token(const Element& token, Audience audience, std::string* out) {
  *out += "<span class=\"tok cat-" + xml_escape(token.name()) + "\">";
  *out += xml_escape(text_content(token));
  if (const std::string* type = token.attr("TYPE"))
    *out += "<span class=\"type\">" + xml_escape(*type) + "</span>";
  if (audience == Audience::kDeveloper) {
    std::string attrs;
    for (const auto& a : token.attributes()) {
      if (a.name == "TYPE") continue;
      if (!attrs.empty()) attrs += ' ';
      attrs += a.name + "=" + a.value;
    }
    if (!attrs.empty())
      *out += "<span class=\"attrs\"> [" + xml_escape(attrs) + "]</span>";
  }
  *out += "</span>";
}

void render_node(const Node& node, Audience audience, std::string* out);

void render_element(const Element& element, Audience audience,
                    std::string* out) {
  bool leaf = true;
  for (const auto& child : element.children())
    if (child.is_element()) leaf = false;
  if (leaf && element.name() != "S") {
    render_token(element, audience, out);
    return;
  }
  // Phrase level: a labelled box in developer view, transparent otherwise.
  if (audience == Audience::kDeveloper) {
    std::string label = element.name();
    for (const auto& a : element.attributes())
      label += " " + a.name + "=" + a.value;
    *out += "<span class=\"attrs\">[" + xml_escape(label) + "</span> ";
  }
  for (const auto& child : element.children())
    render_node(child, audience, out);
  if (audience == Audience::kDeveloper)
    *out += " <span class=\"attrs\">]</span>";
}

void render_node(const Node& node, Audience audience, std::string* out) {
  if (node.is_text()) {
    *out += xml_escape(node.text());
    return;
  }
  render_element(node.element(), audience, out);
}

// Type of a token by its text, looked up among the sentence's sem tags.
std::string type_of(const Element& sentence, const std::string& text) {
  for (const auto& child : sentence.children()) {
    if (!child.is_element()) continue;
    const Element& element = child.element();
    if (text_content(element) == text) {
      if (const std::string* type = element.attr("TYPE")) return *type;
    }
  }
  return "";
}

void render_relations(const Element& sentence, std::string* out) {
  std::vector<const Element*> relations;
  for (const auto& child : sentence.children())
    if (child.is_element() && child.element().name() == "REL")
      relations.push_back(&child.element());
  if (relations.empty()) return;
  *out += "<table><tr><th>relation</th><th colspan=\"4\">arguments</th></tr>\n";
  for (const Element* rel : relations) {
    const std::string* name = rel->attr("NAME");
    *out += "<tr><td>" + xml_escape(name ? *name : "") + "</td>";
    for (int i = 1;; ++i) {
      const std::string* arg = rel->attr("ARG" + std::to_string(i));
      if (!arg) break;
      *out += "<td>" + xml_escape(*arg) + "</td><td>" +
              xml_escape(type_of(sentence, *arg)) + "</td>";
    }
    *out += "</tr>\n";
  }
  *out += "</table>\n";
}

void render_concepts(const Element& sentence, std::string* out) {
  for (const auto& child : sentence.children()) {
    if (!child.is_element() || child.element().name() != "CONCEPTS") continue;
    for (const auto& concept_node : child.element().children()) {
      if (!concept_node.is_element()) continue;
      const Element& block = concept_node.element();
      const std::string* type = block.attr("TYPE");
      std::string word, desc;
      for (const auto& part : block.children()) {
        if (!part.is_element()) continue;
        if (part.element().name() == "WORD") word = text_content(part);
        if (part.element().name() == "DESC") desc = text_content(part);
      }
      *out += "<h3>" + xml_escape(word) + " — " +
              xml_escape(type ? *type : "") + "</h3>\n<p><em>" +
              xml_escape(desc) + "</em></p>\n";
      std::string rows;
      for (const auto& part : block.children()) {
        if (!part.is_element() || part.element().name() != "SLOTS") continue;
        for (const auto& rel_node : part.element().children()) {
          if (!rel_node.is_element()) continue;
          const Element& relation = rel_node.element();
          if (const std::string* slot_type = relation.attr("TYPE")) {
            std::string form, content;
            for (const auto& field : relation.children()) {
              if (!field.is_element()) continue;
              if (field.element().name() == "FORM") form = text_content(field);
              if (field.element().name() == "CONTENT")
                content = text_content(field);
            }
            rows += "<tr><td>" + xml_escape(*slot_type) + "</td><td>" +
                    xml_escape(content) + "</td><td>" + xml_escape(form) +
                    "</td></tr>\n";
          } else {
            for (const auto& slot_node : relation.children()) {
              if (!slot_node.is_element()) continue;
              const Element& slot = slot_node.element();
              const std::string* form = slot.attr("FORM");
              rows += "<tr><td>" + xml_escape(slot.name()) + "</td><td>" +
                      xml_escape(text_content(slot)) + "</td><td>" +
                      xml_escape(form ? *form : "") + "</td></tr>\n";
            }
          }
        }
      }
      if (!rows.empty())
        *out += "<table><tr><th>relation</th><th>content</th><th>form</th>"
                "</tr>\n" + rows + "</table>\n";
    }
  }
}

}  // namespace

std::string render_report(const AnnotatedDocument& doc, Audience audience) {
  std::string out = "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">\n";
  out += "<title>xdoc report</title>\n<style>";
  out += kStyle;
  out += "</style></head>\n<body>\n";
  int index = 0;
  for (const auto& child : doc.root.children()) {
    if (!child.is_element()) continue;
    const Element& element = child.element();
    if (element.name() != "S") {
      out += "<p>";
      render_element(element, audience, &out);
      out += "</p>\n";
      continue;
    }
    ++index;
    out += "<h2>Sentence " + std::to_string(index) + "</h2>\n<p>";
    for (const auto& item : element.children()) {
      if (item.is_element() && (item.element().name() == "REL" ||
                                item.element().name() == "CONCEPTS"))
        continue;
      render_node(item, audience, &out);
    }
    out += "</p>\n";
    render_relations(element, &out);
    render_concepts(element, &out);
  }
  if (audience == Audience::kDeveloper) {
    out += "<h2>Document tree</h2>\n<pre>" + xml_escape(serialize_xml(doc)) +
           "</pre>\n";
  }
  out += "</body></html>\n";
  return out;
}

}  // namespace xdoc
