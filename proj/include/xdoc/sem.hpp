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

// Semantic analysis: semantic tagging, case-frame slot filling and direct
// structural interpretation of telegraphic patterns.
//
// The semantic lexicon maps tokens to concepts/properties with a domain
// type; frame-bearing concepts additionally carry slots whose fillers must
// satisfy paired syntactic form constraints — "N(gen, fak)" is an optional
// genitive NP, "P(akk, obl, durch)" an obligatory accusative PP headed by
// "durch" — and optionally a semantic type.

#ifndef XDOC_SEM_HPP_
#define XDOC_SEM_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "xdoc/xml.hpp"

namespace xdoc {

struct FormConstraint {
  char kind = 'N';  // 'N' noun phrase, 'P' prepositional phrase
  std::string case_name;  // "nom", "gen", "dat", "akk"
  bool obligatory = false;
  std::string preposition;  // only for kind 'P'

  // Canonical notation: "N(gen, fak)", "P(akk, fak, durch)".
  std::string to_string() const;
  bool operator==(const FormConstraint&) const = default;
};

// Parses the canonical notation (whitespace after commas optional).
// Throws FormSyntaxError.
FormConstraint parse_form(std::string_view text);

struct SemSlot {
  std::string relation;             // RESULT, SOURCE, INSTRUMENT, ...
  std::vector<FormConstraint> forms;
  std::string sem_type;             // empty: unconstrained

  bool obligatory() const;          // any form marked obl
  std::string forms_label() const;  // space-joined canonical forms
};

struct SemEntry {
  std::string surface;
  std::string category;  // CONCEPT, PROPERTY or REL
  std::string type;      // domain type: organ, color, Prozess, ...
  std::string desc;
  std::vector<SemSlot> slots;  // the case frame; may be empty
};

class SemLexicon {
 public:
  // `surface <TAB> category <TAB> type <TAB> desc [<TAB> frame]`, frame =
  // `REL:form,form[:semtype];REL:...`; '#' starts a comment line.
  static SemLexicon load(const std::string& path);
  static SemLexicon from_string(std::string_view text,
                                const std::string& name = "<string>");

  void add(SemEntry entry);
  // Exact surface match; with `try_lowered`, a capitalized token is also
  // looked up decapitalized.
  std::vector<const SemEntry*> lookup(std::string_view surface,
                                      bool try_lowered = false) const;
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<SemEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_surface_;
};

// Renames the top-level tokens of every sentence to their semantic class:
// matched tokens become <CONCEPT TYPE=.../> / <PROPERTY TYPE=.../>,
// unmatched ones <XXX>. Original attributes are preserved, additional
// readings ride in ALT as CATEGORY/type pairs.
AnnotatedDocument sem_tag(AnnotatedDocument doc, const SemLexicon& lexicon);

// Case-frame analysis over a syntactically parsed document: for each
// frame-bearing concept token, the NPs/PPs following it inside its maximal
// projection are assigned to matching slots; readings whose obligatory
// slots stay unfilled are dropped. Results are appended per sentence as a
// <CONCEPTS> block; `ex7_style` switches from RELATION(ASSIGN_TO, FORM,
// CONTENT) blocks to slot-named elements with FORM attributes.
AnnotatedDocument fill_frames(AnnotatedDocument doc, const SemLexicon& lexicon,
                              bool ex7_style = false);

struct StructuralRule {
  struct Atom {
    enum Kind { kSemantic, kPunctuation, kLiteral } kind;
    std::string category;  // kSemantic: element name
    std::string type;      // kSemantic: required TYPE, empty = any
    std::string literal;   // kLiteral
  };
  std::string name;
  std::vector<Atom> pattern;
  std::string relation;
  std::vector<std::size_t> args;  // 1-based pattern positions
};

// `NAME: atoms -> relation($1, $2)`; atoms are `CONCEPT[type]`, `PROPERTY`,
// `IP` or a quoted literal.
std::vector<StructuralRule> load_structural_rules(const std::string& path);
std::vector<StructuralRule> structural_rules_from_string(
    std::string_view text, const std::string& name = "<string>");

struct RelationInstance {
  std::string relation;
  std::vector<std::string> args;

  bool operator==(const RelationInstance&) const = default;
};

// Matches rule patterns against the semantically tagged token sequence of
// each sentence; every match appends <REL NAME=... ARG1=... .../> to its
// sentence and yields one instance.
std::vector<RelationInstance> interpret_structure(
    AnnotatedDocument* doc, const std::vector<StructuralRule>& rules);

}  // namespace xdoc

#endif  // XDOC_SEM_HPP_
