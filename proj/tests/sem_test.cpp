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

#include <functional>

#include "test_support.hpp"
#include "xdoc/errors.hpp"
#include "xdoc/parser.hpp"
#include "xdoc/postag.hpp"
#include "xdoc/sem.hpp"
#include "xdoc/structure.hpp"

using namespace xdoc;

namespace {

std::string data_path(const std::string& tail) {
  return std::string(XDOC_DATA_DIR) + "/" + tail;
}

AnnotatedDocument structured(const std::string& text) {
  StructureConfig config;
  config.abbreviations = load_abbreviations(data_path("abbrev/german.abbr"));
  return detect_sentences(tokenize(text, config), config);
}

AnnotatedDocument parsed(const std::string& text) {
  static Lexicon lexicon = Lexicon::load(data_path("lexicon/seed.lex"));
  static Grammar grammar = load_grammar({data_path("grammar/core.gr")});
  static std::vector<Heuristic> heuristics =
      load_heuristics(data_path("heuristics/default.heu"));
  AnnotatedDocument doc = tag_document(structured(text), lexicon, heuristics);
  ChartParser parser(grammar);
  for (auto& child : doc.root.children()) {
    if (!child.is_element() || child.element().name() != "S") continue;
    Element& sentence = child.element();
    std::vector<ParseToken> tokens = sentence_tokens(sentence);
    ParseResult result = parser.parse(tokens);
    annotate_sentence(sentence, result, tokens);
  }
  return doc;
}

const SemLexicon& autopsy() {
  static SemLexicon lexicon = SemLexicon::load(data_path("semlex/autopsy.sem"));
  return lexicon;
}

const SemLexicon& casting() {
  static SemLexicon lexicon = SemLexicon::load(data_path("semlex/casting.sem"));
  return lexicon;
}

const Element* find_named(const Element& root, const std::string& name) {
  if (root.name() == name) return &root;
  for (const auto& child : root.children()) {
    if (!child.is_element()) continue;
    if (const Element* found = find_named(child.element(), name)) return found;
  }
  return nullptr;
}

std::string field(const Element& relation, const std::string& name) {
  for (const auto& child : relation.children())
    if (child.is_element() && child.element().name() == name)
      return text_content(child.element());
  return "";
}

}  // namespace

TEST_CASE("form constraints parse and round-trip to canonical notation") {
  FormConstraint p = parse_form("P(akk, fak, durch)");
  CHECK(p.kind == 'P');
  CHECK(p.case_name == "akk");
  CHECK_FALSE(p.obligatory);
  CHECK(p.preposition == "durch");
  CHECK(p.to_string() == "P(akk, fak, durch)");

  FormConstraint n = parse_form("N(gen,fak)");  // spaces optional
  CHECK(n.kind == 'N');
  CHECK(n.preposition.empty());
  CHECK(n.to_string() == "N(gen, fak)");
  CHECK(parse_form(n.to_string()) == n);

  CHECK(parse_form("P(dat, obl, aus)").obligatory);
  CHECK_THROWS_AS(parse_form("Q(x)"), FormSyntaxError);
  CHECK_THROWS_AS(parse_form("N(gen)"), FormSyntaxError);
  CHECK_THROWS_AS(parse_form("N(xyz, fak)"), FormSyntaxError);
  CHECK_THROWS_AS(parse_form("P(akk, fak)"), FormSyntaxError);
  CHECK_THROWS_AS(parse_form("N(gen, maybe)"), FormSyntaxError);
}

TEST_CASE("semantic tagging of a telegraphic finding") {
  AnnotatedDocument doc = sem_tag(structured("Leber dunkelrot."), autopsy());
  auto tags = xdoc_test::tag_sequence(doc);
  REQUIRE(tags.size() == 3);
  CHECK(tags[0] == std::pair<std::string, std::string>{"CONCEPT", "Leber"});
  CHECK(tags[1] ==
        std::pair<std::string, std::string>{"PROPERTY", "dunkelrot"});
  CHECK(tags[2] == std::pair<std::string, std::string>{"XXX", "."});
  const Element* concept_element = find_named(doc.root, "CONCEPT");
  REQUIRE(concept_element != nullptr);
  CHECK(*concept_element->attr("TYPE") == "organ");
  const Element* property = find_named(doc.root, "PROPERTY");
  REQUIRE(property != nullptr);
  CHECK(*property->attr("TYPE") == "color");
}

TEST_CASE("an empty semantic lexicon tags everything XXX") {
  SemLexicon empty;
  AnnotatedDocument doc = sem_tag(structured("Leber dunkelrot."), empty);
  for (auto& [tag, text] : xdoc_test::tag_sequence(doc)) CHECK(tag == "XXX");
}

TEST_CASE("case frames fill from the following phrases") {
  AnnotatedDocument doc = fill_frames(
      parsed("Fertigen fester Koerper aus formlosem Stoff durch Schaffen "
             "des Zusammenhalts"),
      casting());
  const Element* concepts = find_named(doc.root, "CONCEPTS");
  REQUIRE(concepts != nullptr);
  const Element* concept_element = find_named(*concepts, "CONCEPT");
  REQUIRE(concept_element != nullptr);
  CHECK(*concept_element->attr("TYPE") == "Prozess");
  CHECK(field(*concept_element, "WORD") == "Fertigen");
  CHECK(field(*concept_element, "DESC") == "Schaffung von etwas");

  const Element* slots = find_named(*concept_element, "SLOTS");
  REQUIRE(slots != nullptr);
  std::map<std::string, std::pair<std::string, std::string>> filled;
  for (const auto& child : slots->children()) {
    if (!child.is_element()) continue;
    const Element& relation = child.element();
    REQUIRE(relation.name() == "RELATION");
    filled[*relation.attr("TYPE")] = {field(relation, "CONTENT"),
                                      field(relation, "FORM")};
  }
  REQUIRE(filled.size() == 3);
  CHECK(filled["RESULT"].first == "fester Koerper");
  CHECK(filled["RESULT"].second == "N(gen, fak) P(akk, fak, von)");
  CHECK(filled["SOURCE"].first == "aus formlosem Stoff");
  CHECK(filled["SOURCE"].second == "P(dat, fak, aus)");
  CHECK(filled["INSTRUMENT"].first == "durch Schaffen des Zusammenhalts");
  CHECK(filled["INSTRUMENT"].second == "P(akk, fak, durch)");
  // The governing word fills ASSIGN_TO.
  for (const auto& child : slots->children())
    if (child.is_element())
      CHECK(field(child.element(), "ASSIGN_TO") == "Fertigen");
}

TEST_CASE("slot fills satisfy their form constraints post hoc") {
  AnnotatedDocument doc = fill_frames(
      parsed("Fertigen fester Koerper aus formlosem Stoff durch Schaffen "
             "des Zusammenhalts"),
      casting());
  // RESULT filled "fester Koerper": its NP carries a genitive reading.
  const Element* sentence = find_named(doc.root, "S");
  REQUIRE(sentence != nullptr);
  std::function<const Element*(const Element&)> find_result_np =
      [&](const Element& element) -> const Element* {
    if (element.name() == "NP" &&
        text_content(element).find("fester Koerper") == 0)
      return &element;
    for (const auto& child : element.children()) {
      if (!child.is_element()) continue;
      if (const Element* np = find_result_np(child.element())) return np;
    }
    return nullptr;
  };
  const Element* np = find_result_np(*sentence);
  REQUIRE(np != nullptr);
  std::string cas = *np->attr("CAS");
  CHECK(cas.find("GEN") != std::string::npos);
}

TEST_CASE("the compatibility flag emits slot-named elements") {
  AnnotatedDocument doc = fill_frames(
      parsed("Fertigen fester Koerper aus formlosem Stoff durch Schaffen "
             "des Zusammenhalts"),
      casting(), /*ex7_style=*/true);
  const Element* slots = find_named(doc.root, "SLOTS");
  REQUIRE(slots != nullptr);
  const Element* relation = find_named(*slots, "RELATION");
  REQUIRE(relation != nullptr);
  const Element* result = find_named(*relation, "RESULT");
  REQUIRE(result != nullptr);
  CHECK(text_content(*result) == "fester Koerper");
  CHECK(*result->attr("FORM") == "N(gen, fak) P(akk, fak, von)");
  CHECK(find_named(*relation, "INSTRUMENT") != nullptr);
}

TEST_CASE("a phrase with the wrong preposition is not assigned") {
  SemLexicon lexicon = SemLexicon::from_string(
      "Fertigen\tCONCEPT\tProzess\tdesc\tINSTRUMENT:P(akk,fak,durch)\n");
  AnnotatedDocument doc =
      fill_frames(parsed("Fertigen fester Koerper"), lexicon);
  // The only candidate is an NP; no PP with "durch" exists, and the
  // slot is optional, so the concept block has no SLOTS element.
  const Element* concept_element = find_named(doc.root, "CONCEPT");
  REQUIRE(concept_element != nullptr);
  CHECK(find_named(*concept_element, "SLOTS") == nullptr);
}

TEST_CASE("readings with unfillable obligatory slots are dropped") {
  SemLexicon lexicon = SemLexicon::from_string(
      "Fertigen\tCONCEPT\tHandlung\tneeds mit\tMEANS:P(dat,obl,mit)\n"
      "Fertigen\tCONCEPT\tProzess\tok\tRESULT:N(gen,fak)\n");
  AnnotatedDocument doc =
      fill_frames(parsed("Fertigen fester Koerper"), lexicon);
  const Element* concepts = find_named(doc.root, "CONCEPTS");
  REQUIRE(concepts != nullptr);
  int count = 0;
  for (const auto& child : concepts->children())
    if (child.is_element() && child.element().name() == "CONCEPT") {
      ++count;
      CHECK(*child.element().attr("TYPE") == "Prozess");
    }
  CHECK(count == 1);
}

TEST_CASE("semantic type constraints are honoured when present") {
  SemLexicon typed = SemLexicon::from_string(
      "Fertigen\tCONCEPT\tProzess\tdesc\tRESULT:N(gen,fak):Objekt\n"
      "Koerper\tCONCEPT\tObjekt\tfester Gegenstand\t\n");
  AnnotatedDocument doc =
      fill_frames(parsed("Fertigen fester Koerper"), typed);
  const Element* relation = find_named(doc.root, "RELATION");
  REQUIRE(relation != nullptr);
  CHECK(field(*relation, "CONTENT") == "fester Koerper");

  SemLexicon mismatched = SemLexicon::from_string(
      "Fertigen\tCONCEPT\tProzess\tdesc\tRESULT:N(gen,fak):Material\n"
      "Koerper\tCONCEPT\tObjekt\tfester Gegenstand\t\n");
  AnnotatedDocument unfilled =
      fill_frames(parsed("Fertigen fester Koerper"), mismatched);
  const Element* concept_element = find_named(unfilled.root, "CONCEPT");
  REQUIRE(concept_element != nullptr);
  CHECK(find_named(*concept_element, "SLOTS") == nullptr);
}

TEST_CASE("structural interpretation extracts has-color") {
  auto rules = load_structural_rules(data_path("structural/autopsy.rules"));
  AnnotatedDocument doc = sem_tag(structured("Leber dunkelrot."), autopsy());
  auto instances = interpret_structure(&doc, rules);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].relation == "has-color");
  CHECK(instances[0].args ==
        std::vector<std::string>{"Leber", "dunkelrot"});
  const Element* rel = find_named(doc.root, "REL");
  REQUIRE(rel != nullptr);
  CHECK(*rel->attr("NAME") == "has-color");
  CHECK(*rel->attr("ARG1") == "Leber");
  CHECK(*rel->attr("ARG2") == "dunkelrot");
}

TEST_CASE("a state rule covers the container findings") {
  auto rules = structural_rules_from_string(
      "state: CONCEPT PROPERTY[state] IP -> has-state($1, $2)\n");
  AnnotatedDocument doc =
      sem_tag(structured("Harnblase leer."), autopsy());
  auto instances = interpret_structure(&doc, rules);
  REQUIRE(instances.size() == 1);
  CHECK(instances[0].relation == "has-state");
  CHECK(instances[0].args ==
        std::vector<std::string>{"Harnblase", "leer"});
}

TEST_CASE("sentences without the pattern emit nothing") {
  auto rules = load_structural_rules(data_path("structural/autopsy.rules"));
  AnnotatedDocument doc =
      sem_tag(structured("Direktor des Institutes kam."), autopsy());
  CHECK(interpret_structure(&doc, rules).empty());
  CHECK(find_named(doc.root, "REL") == nullptr);
}

TEST_CASE("structural rule syntax errors") {
  CHECK_THROWS_AS(structural_rules_from_string("x: -> rel($1)\n"),
                  FormatError);
  CHECK_THROWS_AS(structural_rules_from_string("x: CONCEPT -> rel($2)\n"),
                  FormatError);
  CHECK_THROWS_AS(structural_rules_from_string("x: CONCEPT rel($1)\n"),
                  FormatError);
  CHECK_THROWS_AS(structural_rules_from_string("x: CONCEPT -> rel(arg)\n"),
                  FormatError);
}

TEST_CASE("semantic lexicon format errors") {
  CHECK_THROWS_AS(SemLexicon::from_string("Leber\tWEIRD\torgan\tdesc\n"),
                  FormatError);
  CHECK_THROWS_AS(SemLexicon::from_string("Leber\tCONCEPT\torgan\n"),
                  FormatError);
  CHECK_THROWS_AS(
      SemLexicon::from_string("F\tCONCEPT\tx\td\tREL:Q(akk,fak)\n"),
      FormatError);
}
