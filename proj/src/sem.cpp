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

#include "xdoc/sem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "xdoc/errors.hpp"
#include "xdoc/morph.hpp"

namespace xdoc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

// Split on `sep` outside parentheses.
std::vector<std::string_view> split_outside_parens(std::string_view text,
                                                   char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == sep && depth == 0)) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return parts;
}

bool valid_case_name(std::string_view name) {
  return name == "nom" || name == "gen" || name == "dat" || name == "akk";
}

}  // namespace

std::string FormConstraint::to_string() const {
  std::string out;
  out += kind;
  out += '(';
  out += case_name;
  out += ", ";
  out += obligatory ? "obl" : "fak";
  if (kind == 'P') {
    out += ", ";
    out += preposition;
  }
  out += ')';
  return out;
}

FormConstraint parse_form(std::string_view text) {
  std::string_view view = trim(text);
  if (view.size() < 4 || (view[0] != 'N' && view[0] != 'P') ||
      view[1] != '(' || view.back() != ')')
    throw FormSyntaxError(std::string(text));
  FormConstraint form;
  form.kind = view[0];
  auto parts = split(view.substr(2, view.size() - 3), ',');
  if (form.kind == 'N' ? parts.size() != 2 : parts.size() != 3)
    throw FormSyntaxError(std::string(text));
  std::string_view case_name = trim(parts[0]);
  if (!valid_case_name(case_name)) throw FormSyntaxError(std::string(text));
  form.case_name = std::string(case_name);
  std::string_view obligation = trim(parts[1]);
  if (obligation == "obl") form.obligatory = true;
  else if (obligation == "fak") form.obligatory = false;
  else throw FormSyntaxError(std::string(text));
  if (form.kind == 'P') {
    form.preposition = std::string(trim(parts[2]));
    if (form.preposition.empty()) throw FormSyntaxError(std::string(text));
  }
  return form;
}

bool SemSlot::obligatory() const {
  return std::any_of(forms.begin(), forms.end(),
                     [](const FormConstraint& f) { return f.obligatory; });
}

std::string SemSlot::forms_label() const {
  std::string out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i) out += ' ';
    out += forms[i].to_string();
  }
  return out;
}

void SemLexicon::add(SemEntry entry) {
  by_surface_[entry.surface].push_back(entries_.size());
  entries_.push_back(std::move(entry));
}

std::vector<const SemEntry*> SemLexicon::lookup(std::string_view surface,
                                                bool try_lowered) const {
  std::vector<const SemEntry*> out;
  auto it = by_surface_.find(surface);
  if (it != by_surface_.end())
    for (std::size_t i : it->second) out.push_back(&entries_[i]);
  if (out.empty() && try_lowered && starts_uppercase(surface)) {
    auto lowered = by_surface_.find(lower_first(surface));
    if (lowered != by_surface_.end())
      for (std::size_t i : lowered->second) out.push_back(&entries_[i]);
  }
  return out;
}

namespace {

SemLexicon load_semlex_stream(std::istream& in, const std::string& name) {
  SemLexicon lexicon;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (trim(view).empty() || trim(view).front() == '#') continue;
    auto fields = split(view, '\t');
    if (fields.size() < 4)
      throw FormatError(name, lineno,
                        "expected surface<TAB>category<TAB>type<TAB>desc");
    SemEntry entry;
    entry.surface = std::string(trim(fields[0]));
    entry.category = std::string(trim(fields[1]));
    entry.type = std::string(trim(fields[2]));
    entry.desc = std::string(trim(fields[3]));
    if (entry.category != "CONCEPT" && entry.category != "PROPERTY" &&
        entry.category != "REL")
      throw FormatError(name, lineno,
                        "bad category '" + entry.category + "'");
    if (entry.surface.empty() || entry.type.empty())
      throw FormatError(name, lineno, "empty surface or type");
    if (fields.size() >= 5 && !trim(fields[4]).empty()) {
      for (auto slot_spec : split_outside_parens(trim(fields[4]), ';')) {
        auto parts = split_outside_parens(slot_spec, ':');
        if (parts.size() < 2 || parts.size() > 3)
          throw FormatError(name, lineno,
                            "slot must be REL:forms[:semtype]");
        SemSlot slot;
        slot.relation = std::string(trim(parts[0]));
        if (!valid_xml_name(slot.relation))
          throw FormatError(name, lineno,
                            "bad relation name '" + slot.relation + "'");
        for (auto form_text : split_outside_parens(parts[1], ',')) {
          try {
            slot.forms.push_back(parse_form(form_text));
          } catch (const FormSyntaxError& e) {
            throw FormatError(name, lineno, e.what());
          }
        }
        if (parts.size() == 3) slot.sem_type = std::string(trim(parts[2]));
        entry.slots.push_back(std::move(slot));
      }
    }
    lexicon.add(std::move(entry));
  }
  return lexicon;
}

}  // namespace

SemLexicon SemLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open semantic lexicon: " + path);
  return load_semlex_stream(in, path);
}

SemLexicon SemLexicon::from_string(std::string_view text,
                                   const std::string& name) {
  std::istringstream in{std::string(text)};
  return load_semlex_stream(in, name);
}

namespace {

bool whitespace_only(const Node& node) {
  if (!node.is_text()) return false;
  return std::all_of(node.text().begin(), node.text().end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

bool leaf_element(const Element& element) {
  return std::all_of(element.children().begin(), element.children().end(),
                     [](const Node& n) { return n.is_text(); });
}

void apply_sem_readings(Element& token,
                        const std::vector<const SemEntry*>& readings) {
  token.set_name(readings[0]->category);
  token.set_attr("TYPE", readings[0]->type);
  if (readings.size() > 1) {
    std::string alt;
    for (std::size_t i = 1; i < readings.size(); ++i) {
      if (i > 1) alt += ',';
      alt += readings[i]->category + "/" + readings[i]->type;
    }
    token.set_attr("ALT", alt);
  } else {
    token.remove_attr("ALT");
  }
}

void sem_tag_sentence(Element& sentence, const SemLexicon& lexicon) {
  std::vector<Node> items;
  bool pending_space = false;
  bool first_token = true;
  auto emit = [&](Node node) {
    if (pending_space && !items.empty()) items.emplace_back(TextSpan{" "});
    pending_space = false;
    items.push_back(std::move(node));
  };
  for (auto& child : sentence.children()) {
    if (whitespace_only(child)) {
      pending_space = true;
      continue;
    }
    if (child.is_text()) {
      // Unwrapped words: split and tag each.
      const std::string text = child.text();
      std::size_t pos = 0;
      while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
          pending_space = true;
          ++pos;
          continue;
        }
        std::size_t start = pos;
        while (pos < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[pos])))
          ++pos;
        std::string word = text.substr(start, pos - start);
        Element token("XXX");
        token.add_text(word);
        auto readings = lexicon.lookup(word, first_token);
        if (!readings.empty()) apply_sem_readings(token, readings);
        first_token = false;
        emit(Node(std::move(token)));
      }
      continue;
    }
    Element element = child.element();
    if (leaf_element(element)) {
      auto readings = lexicon.lookup(text_content(element), first_token);
      if (readings.empty()) {
        element.set_name("XXX");
        element.remove_attr("TYPE");
      } else {
        apply_sem_readings(element, readings);
      }
      first_token = false;
    }
    emit(Node(std::move(element)));
  }
  sentence.children() = std::move(items);
}

}  // namespace

AnnotatedDocument sem_tag(AnnotatedDocument doc, const SemLexicon& lexicon) {
  bool found = false;
  for (auto& child : doc.root.children()) {
    if (child.is_element() && child.element().name() == "S") {
      found = true;
      sem_tag_sentence(child.element(), lexicon);
    }
  }
  if (!found) sem_tag_sentence(doc.root, lexicon);
  return doc;
}

namespace {

// Flat view of the token leaves under an element, in document order.
void collect_leaves(Element& element,
                    std::vector<Element*>* leaves) {
  if (leaf_element(element)) {
    leaves->push_back(&element);
    return;
  }
  for (auto& child : element.children())
    if (child.is_element()) collect_leaves(child.element(), leaves);
}

int leaf_position(Element& root, const Element* leaf) {
  std::vector<Element*> leaves;
  collect_leaves(root, &leaves);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    if (leaves[i] == leaf) return static_cast<int>(i);
  return -1;
}

bool element_contains(const Element& haystack, const Element* needle) {
  if (&haystack == needle) return true;
  for (const auto& child : haystack.children())
    if (child.is_element() && element_contains(child.element(), needle))
      return true;
  return false;
}

// NPs and PPs following the concept token inside its maximal projection,
// outermost first, never descending into a candidate.
void collect_candidates(Element& node, const Element* concept_token,
                        std::vector<Element*>* candidates) {
  for (auto& child : node.children()) {
    if (!child.is_element()) continue;
    Element& element = child.element();
    if (element_contains(element, concept_token)) {
      if (&element != concept_token)
        collect_candidates(element, concept_token, candidates);
      continue;
    }
    if (element.name() == "NP" || element.name() == "PP") {
      candidates->push_back(&element);
      continue;
    }
    collect_candidates(element, concept_token, candidates);
  }
}

std::vector<std::string_view> case_labels(const Element& phrase) {
  const std::string* cas = phrase.attr("CAS");
  if (!cas || *cas == "_") return {"NOM", "GEN", "DAT", "AKK"};
  std::vector<std::string_view> labels;
  for (auto label : split(*cas, ',')) labels.push_back(label);
  return labels;
}

std::string upper_case_name(const std::string& name) {
  std::string out = name;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::string phrase_text(const Element& phrase) {
  return std::string(trim(text_content(phrase)));
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool form_matches(const FormConstraint& form, Element& phrase) {
  if (form.kind == 'N' && phrase.name() != "NP") return false;
  if (form.kind == 'P' && phrase.name() != "PP") return false;
  std::string wanted = upper_case_name(form.case_name);
  auto labels = case_labels(phrase);
  if (std::find(labels.begin(), labels.end(), wanted) == labels.end())
    return false;
  if (form.kind == 'P') {
    std::vector<Element*> leaves;
    collect_leaves(phrase, &leaves);
    if (leaves.empty()) return false;
    if (lowercase(text_content(*leaves[0])) != lowercase(form.preposition))
      return false;
  }
  return true;
}

bool sem_type_matches(const SemSlot& slot, Element& phrase,
                      const SemLexicon& lexicon) {
  if (slot.sem_type.empty()) return true;
  std::vector<Element*> leaves;
  collect_leaves(phrase, &leaves);
  // Head: rightmost nominal leaf, otherwise the last token.
  Element* head = nullptr;
  for (auto it = leaves.rbegin(); it != leaves.rend(); ++it) {
    if ((*it)->name() == "N" || (*it)->name() == "CONCEPT") {
      head = *it;
      break;
    }
  }
  if (!head && !leaves.empty()) head = leaves.back();
  if (!head) return false;
  for (const SemEntry* entry : lexicon.lookup(text_content(*head)))
    if (entry->type == slot.sem_type) return true;
  return false;
}

struct SlotFill {
  const SemSlot* slot;
  Element* phrase;
  const FormConstraint* matched;
};

Element concept_block(const SemEntry& entry, const std::string& word,
                      const std::vector<SlotFill>& fills, bool ex7_style) {
  Element block("CONCEPT");
  block.set_attr("TYPE", entry.type);
  block.add_element("WORD").add_text(word);
  block.add_element("DESC").add_text(entry.desc);
  if (fills.empty()) return block;  // SLOTS is optional
  Element& slots = block.add_element("SLOTS");
  if (ex7_style) {
    Element& relation = slots.add_element("RELATION");
    for (const auto& fill : fills) {
      Element& slot_element = relation.add_element(fill.slot->relation);
      slot_element.set_attr("FORM", fill.slot->forms_label());
      slot_element.add_text(phrase_text(*fill.phrase));
    }
  } else {
    for (const auto& fill : fills) {
      Element& relation = slots.add_element("RELATION");
      relation.set_attr("TYPE", fill.slot->relation);
      relation.add_element("ASSIGN_TO").add_text(word);
      relation.add_element("FORM").add_text(fill.slot->forms_label());
      relation.add_element("CONTENT").add_text(phrase_text(*fill.phrase));
    }
  }
  return block;
}

void fill_frames_sentence(Element& sentence, const SemLexicon& lexicon,
                          bool ex7_style) {
  std::vector<Element*> leaves;
  collect_leaves(sentence, &leaves);
  std::vector<Element> concepts;
  for (Element* leaf : leaves) {
    std::string word = text_content(*leaf);
    auto readings = lexicon.lookup(word);
    if (readings.empty()) continue;
    // Maximal projection: the sentence-level subtree holding the token.
    Element* projection = nullptr;
    for (auto& child : sentence.children()) {
      if (child.is_element() &&
          element_contains(child.element(), leaf)) {
        projection = &child.element();
        break;
      }
    }
    if (!projection || projection == leaf) continue;
    int concept_pos = leaf_position(sentence, leaf);
    std::vector<Element*> all_candidates;
    collect_candidates(*projection, leaf, &all_candidates);
    std::vector<Element*> candidates;
    for (Element* phrase : all_candidates) {
      std::vector<Element*> phrase_leaves;
      collect_leaves(*phrase, &phrase_leaves);
      if (!phrase_leaves.empty() &&
          leaf_position(sentence, phrase_leaves[0]) > concept_pos)
        candidates.push_back(phrase);
    }

    for (const SemEntry* entry : readings) {
      if (entry->category != "CONCEPT" || entry->slots.empty()) continue;
      std::vector<SlotFill> fills;
      std::vector<bool> used(entry->slots.size(), false);
      for (Element* phrase : candidates) {
        for (std::size_t s = 0; s < entry->slots.size(); ++s) {
          if (used[s]) continue;
          const SemSlot& slot = entry->slots[s];
          const FormConstraint* matched = nullptr;
          for (const auto& form : slot.forms) {
            if (form_matches(form, *phrase)) {
              matched = &form;
              break;
            }
          }
          if (!matched || !sem_type_matches(slot, *phrase, lexicon)) continue;
          fills.push_back({&slot, phrase, matched});
          used[s] = true;
          break;  // one slot per phrase
        }
      }
      bool satisfied = true;
      for (std::size_t s = 0; s < entry->slots.size(); ++s)
        if (entry->slots[s].obligatory() && !used[s]) satisfied = false;
      if (!satisfied) continue;
      concepts.push_back(concept_block(*entry, word, fills, ex7_style));
    }
  }
  if (concepts.empty()) return;
  Element& block = sentence.add_element("CONCEPTS");
  for (auto& entry_block : concepts) block.add_child(Node(std::move(entry_block)));
}

}  // namespace

AnnotatedDocument fill_frames(AnnotatedDocument doc, const SemLexicon& lexicon,
                              bool ex7_style) {
  bool found = false;
  for (auto& child : doc.root.children()) {
    if (child.is_element() && child.element().name() == "S") {
      found = true;
      fill_frames_sentence(child.element(), lexicon, ex7_style);
    }
  }
  if (!found) fill_frames_sentence(doc.root, lexicon, ex7_style);
  return doc;
}

namespace {

StructuralRule::Atom parse_atom(std::string_view text, const std::string& file,
                                std::size_t lineno) {
  StructuralRule::Atom atom;
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    atom.kind = StructuralRule::Atom::kLiteral;
    atom.literal = std::string(text.substr(1, text.size() - 2));
    return atom;
  }
  if (text == "IP") {
    atom.kind = StructuralRule::Atom::kPunctuation;
    return atom;
  }
  atom.kind = StructuralRule::Atom::kSemantic;
  auto bracket = text.find('[');
  if (bracket == std::string_view::npos) {
    atom.category = std::string(text);
  } else {
    if (text.back() != ']')
      throw FormatError(file, lineno, "unterminated '[' in pattern atom");
    atom.category = std::string(text.substr(0, bracket));
    atom.type =
        std::string(text.substr(bracket + 1, text.size() - bracket - 2));
  }
  if (!valid_xml_name(atom.category))
    throw FormatError(file, lineno,
                      "bad pattern category '" + atom.category + "'");
  return atom;
}

std::vector<StructuralRule> load_rules_stream(std::istream& in,
                                              const std::string& name) {
  std::vector<StructuralRule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty() || view[0] == '#') continue;
    auto colon = view.find(':');
    if (colon == std::string_view::npos)
      throw FormatError(name, lineno, "expected 'NAME: pattern -> relation'");
    StructuralRule rule;
    rule.name = std::string(trim(view.substr(0, colon)));
    auto arrow = view.find("->", colon);
    if (arrow == std::string_view::npos)
      throw FormatError(name, lineno, "missing '->'");
    std::istringstream atoms{
        std::string(view.substr(colon + 1, arrow - colon - 1))};
    std::string atom_text;
    while (atoms >> atom_text)
      rule.pattern.push_back(parse_atom(atom_text, name, lineno));
    if (rule.pattern.empty())
      throw FormatError(name, lineno, "empty pattern");
    std::string_view rhs = trim(view.substr(arrow + 2));
    auto paren = rhs.find('(');
    if (paren == std::string_view::npos || rhs.back() != ')')
      throw FormatError(name, lineno, "expected relation(args)");
    rule.relation = std::string(trim(rhs.substr(0, paren)));
    for (auto arg : split(rhs.substr(paren + 1, rhs.size() - paren - 2), ',')) {
      arg = trim(arg);
      if (arg.size() < 2 || arg[0] != '$')
        throw FormatError(name, lineno, "argument must be $<position>");
      std::size_t index = 0;
      for (char c : arg.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw FormatError(name, lineno, "argument must be $<position>");
        index = index * 10 + static_cast<std::size_t>(c - '0');
      }
      if (index == 0 || index > rule.pattern.size())
        throw FormatError(name, lineno, "argument position out of range");
      rule.args.push_back(index);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

bool punctuation_token(const Element& element) {
  std::string text = text_content(element);
  if (text.empty()) return false;
  return std::none_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  });
}

bool atom_matches(const StructuralRule::Atom& atom, const Element& token) {
  switch (atom.kind) {
    case StructuralRule::Atom::kLiteral:
      return text_content(token) == atom.literal;
    case StructuralRule::Atom::kPunctuation:
      return token.name() == "IP" || punctuation_token(token);
    case StructuralRule::Atom::kSemantic: {
      if (token.name() != atom.category) return false;
      if (atom.type.empty()) return true;
      const std::string* type = token.attr("TYPE");
      return type != nullptr && *type == atom.type;
    }
  }
  return false;
}

void interpret_sentence(Element& sentence,
                        const std::vector<StructuralRule>& rules,
                        std::vector<RelationInstance>* instances) {
  std::vector<const Element*> tokens;
  for (const auto& child : sentence.children()) {
    if (!child.is_element()) continue;
    const Element& element = child.element();
    if (element.name() == "REL" || element.name() == "CONCEPTS") continue;
    tokens.push_back(&element);
  }
  std::vector<Element> found;
  for (const auto& rule : rules) {
    std::size_t i = 0;
    while (i + rule.pattern.size() <= tokens.size()) {
      bool all = true;
      for (std::size_t k = 0; k < rule.pattern.size(); ++k) {
        if (!atom_matches(rule.pattern[k], *tokens[i + k])) {
          all = false;
          break;
        }
      }
      if (!all) {
        ++i;
        continue;
      }
      RelationInstance instance;
      instance.relation = rule.relation;
      Element rel("REL");
      rel.set_attr("NAME", rule.relation);
      for (std::size_t a = 0; a < rule.args.size(); ++a) {
        std::string value = text_content(*tokens[i + rule.args[a] - 1]);
        rel.set_attr("ARG" + std::to_string(a + 1), value);
        instance.args.push_back(std::move(value));
      }
      found.push_back(std::move(rel));
      instances->push_back(std::move(instance));
      i += rule.pattern.size();
    }
  }
  for (auto& rel : found) sentence.add_child(Node(std::move(rel)));
}

}  // namespace

std::vector<StructuralRule> load_structural_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open structural rules: " + path);
  return load_rules_stream(in, path);
}

std::vector<StructuralRule> structural_rules_from_string(
    std::string_view text, const std::string& name) {
  std::istringstream in{std::string(text)};
  return load_rules_stream(in, name);
}

std::vector<RelationInstance> interpret_structure(
    AnnotatedDocument* doc, const std::vector<StructuralRule>& rules) {
  std::vector<RelationInstance> instances;
  bool found = false;
  for (auto& child : doc->root.children()) {
    if (child.is_element() && child.element().name() == "S") {
      found = true;
      interpret_sentence(child.element(), rules, &instances);
    }
  }
  if (!found) interpret_sentence(doc->root, rules, &instances);
  return instances;
}

}  // namespace xdoc
