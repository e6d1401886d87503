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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <functional>

#include "test_support.hpp"
#include "xdoc/errors.hpp"
#include "xdoc/structure.hpp"

using namespace xdoc;

namespace {

StructureConfig casting_config() {
  StructureConfig config;
  config.patterns = load_patterns(std::string(XDOC_DATA_DIR) +
                                  "/patterns/casting.pat");
  config.abbreviations =
      load_abbreviations(std::string(XDOC_DATA_DIR) + "/abbrev/german.abbr");
  return config;
}

std::string collapse_ws(const std::string& text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

}  // namespace

TEST_CASE("normalize_input") {
  CHECK(normalize_input("a\r\nb") == "a\nb");
  CHECK(normalize_input("a\rb") == "a\nb");
  CHECK(normalize_input("a\x01\x02t\tb") == "at\tb");
  CharMap map{{"ü", "ue"}, {"’", "'"}};
  CHECK(normalize_input("für", map) == "fuer");
  CHECK(normalize_input("Fabrik’s", map) == "Fabrik's");
  CHECK_THROWS_AS(normalize_input("\xFF\xFE"), InvalidEncoding);
  CHECK_THROWS_AS(normalize_input("ab\xC3"), InvalidEncoding);  // truncated
}

TEST_CASE("tokenizer reproduces the abbreviation-and-period example") {
  StructureConfig config = casting_config();
  AnnotatedDocument doc = tokenize(
      "Anwesend: Univ.-Prof. Dr. med. Dieter Krause, Direktor des "
      "Institutes fuer Rechtsmedizin",
      config);
  auto tags = xdoc_test::tag_sequence(doc);
  std::vector<std::pair<std::string, std::string>> expected = {
      {"TEXT", "Anwesend"},    {"IP", ":"},
      {"ABBR", "Univ.-Prof."}, {"ABBR", "Dr."},
      {"ABBR", "med."},        {"TEXT", "Dieter"},
      {"TEXT", "Krause"},      {"IP", ","},
      {"TEXT", "Direktor"},    {"TEXT", "des"},
      {"TEXT", "Institutes"},  {"TEXT", "fuer"},
      {"TEXT", "Rechtsmedizin"}};
  CHECK(tags == expected);
}

TEST_CASE("casting-domain pattern builds the PRODUCT element") {
  StructureConfig config = casting_config();
  AnnotatedDocument doc =
      tokenize("Gussstueck EN 1982 - CC333G - GS - XXXX", config);
  REQUIRE(doc.root.children().size() == 1);
  const Element& product = doc.root.children()[0].element();

  AnnotatedDocument expected = parse_xml(
      "<PRODUCT Method=\"Sandguss\" Material=\"CC333G\">"
      "<N>Gussstueck</N> <NORM><N>EN</N> <NR>1982</NR></NORM> <IP>-</IP> "
      "<MAT-ID>CC333G</MAT-ID> <IP>-</IP> <METHODE>GS</METHODE> <IP>-</IP> "
      "<MODELLNR>XXXX</MODELLNR></PRODUCT>");
  std::string diff;
  CHECK_MESSAGE(xdoc_test::same_structure(product, expected.root, &diff),
                diff);
}

TEST_CASE("numbers with internal periods stay whole") {
  StructureConfig config;
  AnnotatedDocument doc = tokenize("Wert stieg um 3.14 Punkte.", config);
  auto tags = xdoc_test::tag_sequence(doc);
  REQUIRE(tags.size() == 6);
  CHECK(tags[3] == std::pair<std::string, std::string>{"TEXT", "3.14"});
  CHECK(tags[5] == std::pair<std::string, std::string>{"IP", "."});
}

TEST_CASE("hyphens: freestanding is IP, between alphanumerics is internal") {
  StructureConfig config;
  auto tags = xdoc_test::tag_sequence(tokenize("CC333G - GS-Form", config));
  std::vector<std::pair<std::string, std::string>> expected = {
      {"TEXT", "CC333G"}, {"IP", "-"}, {"TEXT", "GS-Form"}};
  CHECK(tags == expected);
}

TEST_CASE("email pattern keeps periods out of sentence logic") {
  StructureConfig config;
  config.patterns =
      load_patterns(std::string(XDOC_DATA_DIR) + "/patterns/default.pat");
  AnnotatedDocument doc = detect_sentences(
      tokenize("Kontakt info@uni-md.de bitte.", config), config);
  // One sentence; the email is one token element.
  REQUIRE(doc.root.children().size() == 1);
  auto tags = xdoc_test::tag_sequence(doc);
  REQUIRE(tags.size() == 4);
  CHECK(tags[1] ==
        std::pair<std::string, std::string>{"EMAIL", "info@uni-md.de"});
}

TEST_CASE("character conservation under tokenization") {
  xdoc_test::Rng rng(7);
  StructureConfig config = casting_config();
  for (int i = 0; i < 200; ++i) {
    std::string text = collapse_ws(normalize_input(
        xdoc_test::random_text(rng) + " " + xdoc_test::random_text(rng)));
    AnnotatedDocument doc = tokenize(text, config);
    REQUIRE(collapse_ws(text_content(doc.root)) == collapse_ws(text));
  }
}

TEST_CASE("longest pattern match wins; ties go to declaration order") {
  StructureConfig config;
  std::string dir = std::string(XDOC_DATA_DIR);
  // Write a throwaway pattern file with overlapping patterns.
  std::string path = "/tmp/xdoc_structure_test.pat";
  {
    std::ofstream out(path);
    out << "SHORT\tab\t\n";
    out << "LONG\tabc+\t\n";
    out << "ALSO\tabc\t\n";
  }
  config.patterns = load_patterns(path);
  auto tags = xdoc_test::tag_sequence(tokenize("abcc ab abc", config));
  std::vector<std::pair<std::string, std::string>> expected = {
      {"LONG", "abcc"}, {"SHORT", "ab"}, {"LONG", "abc"}};
  // "abc": LONG and ALSO both match 3 chars; LONG is declared first.
  CHECK(tags == expected);
}

TEST_CASE("sentence detection splits on real full stops") {
  StructureConfig config = casting_config();
  AnnotatedDocument doc = detect_sentences(
      tokenize("Harnblase leer. Harnleiter frei.", config), config);
  int sentences = 0;
  for (const auto& child : doc.root.children())
    if (child.is_element() && child.element().name() == "S") ++sentences;
  CHECK(sentences == 2);
  // Both sentences carry three tokens.
  for (const auto& child : doc.root.children()) {
    if (!child.is_element()) continue;
    auto tags = std::vector<std::pair<std::string, std::string>>();
    xdoc_test::tag_sequence_of(child.element(), &tags);
    CHECK(tags.size() == 3);
  }
}

TEST_CASE("abbreviation periods do not split sentences") {
  StructureConfig config = casting_config();
  AnnotatedDocument doc = detect_sentences(
      tokenize("Dr. med. Krause kam.", config), config);
  int sentences = 0;
  for (const auto& child : doc.root.children())
    if (child.is_element() && child.element().name() == "S") ++sentences;
  CHECK(sentences == 1);
}

TEST_CASE("a trailing unit without terminal becomes an incomplete sentence") {
  StructureConfig config;
  AnnotatedDocument doc =
      detect_sentences(tokenize("Befund", config), config);
  REQUIRE(doc.root.children().size() == 1);
  const Element& s = doc.root.children()[0].element();
  CHECK(s.name() == "S");
  REQUIRE(s.attr("COMPLETE") != nullptr);
  CHECK(*s.attr("COMPLETE") == "no");
}

TEST_CASE("colon closes a heading-like unit; configurable") {
  StructureConfig config;
  AnnotatedDocument doc =
      detect_sentences(tokenize("Anwesend: Krause", config), config);
  REQUIRE(doc.root.children().size() == 2);
  CHECK(doc.root.children()[0].element().attr("COMPLETE") == nullptr);
  CHECK(*doc.root.children()[1].element().attr("COMPLETE") == "no");

  StructureConfig no_colon;
  no_colon.sentence_terminals.erase(":");
  AnnotatedDocument one =
      detect_sentences(tokenize("Anwesend: Krause", no_colon), no_colon);
  REQUIRE(one.root.children().size() == 1);
}

TEST_CASE("sentence detection is idempotent") {
  StructureConfig config = casting_config();
  AnnotatedDocument doc = detect_sentences(
      tokenize("Harnblase leer. Befund", config), config);
  AnnotatedDocument again = detect_sentences(doc, config);
  CHECK(again == doc);
}

TEST_CASE("terminal IPs never appear inside ABBR or pattern tokens") {
  StructureConfig config = casting_config();
  AnnotatedDocument doc = detect_sentences(
      tokenize("Dr. med. Krause sah Gussstueck EN 1982 - CC333G - GS - XXXX.",
               config),
      config);
  // Walk everything below top-level token elements: no SENT attribute there.
  std::function<void(const Element&, bool)> walk = [&](const Element& element,
                                                       bool inside_token) {
    for (const auto& child : element.children()) {
      if (!child.is_element()) continue;
      const Element& e = child.element();
      if (inside_token) CHECK(e.attr("SENT") == nullptr);
      bool token_level = e.name() != "S" && e.name() != "DOC";
      walk(e, inside_token || token_level);
    }
  };
  walk(doc.root, false);
}

TEST_CASE("abbreviation entries must contain a period") {
  std::string path = "/tmp/xdoc_bad_abbrev.txt";
  {
    std::ofstream out(path);
    out << "Dr.\nnope\n";
  }
  CHECK_THROWS_AS(load_abbreviations(path), FormatError);
}
