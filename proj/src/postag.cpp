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

#include "xdoc/postag.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "xdoc/errors.hpp"

namespace xdoc {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

Heuristic::Condition parse_condition(std::string_view text,
                                     const std::string& file,
                                     std::size_t lineno) {
  Heuristic::Condition cond;
  text = trim(text);
  if (!text.empty() && text[0] == '!') {
    cond.negated = true;
    text = trim(text.substr(1));
  }
  auto eq = text.find('=');
  std::string_view key = eq == std::string_view::npos ? text : text.substr(0, eq);
  if (eq != std::string_view::npos) cond.arg = std::string(text.substr(eq + 1));
  if (key == "suffix") cond.kind = Heuristic::Condition::kSuffix;
  else if (key == "prefix") cond.kind = Heuristic::Condition::kPrefix;
  else if (key == "capitalized") cond.kind = Heuristic::Condition::kCapitalized;
  else if (key == "lowercase") cond.kind = Heuristic::Condition::kLowercase;
  else if (key == "digits") cond.kind = Heuristic::Condition::kDigits;
  else if (key == "initial") cond.kind = Heuristic::Condition::kInitial;
  else if (key == "prev") cond.kind = Heuristic::Condition::kPrevTag;
  else if (key == "next") cond.kind = Heuristic::Condition::kNextTag;
  else
    throw FormatError(file, lineno,
                      "unknown condition '" + std::string(key) + "'");
  if ((cond.kind == Heuristic::Condition::kSuffix ||
       cond.kind == Heuristic::Condition::kPrefix ||
       cond.kind == Heuristic::Condition::kPrevTag ||
       cond.kind == Heuristic::Condition::kNextTag) &&
      cond.arg.empty())
    throw FormatError(file, lineno, "condition needs an argument");
  return cond;
}

bool eval_condition(const Heuristic::Condition& cond,
                    const TokenContext& token) {
  bool value = false;
  switch (cond.kind) {
    case Heuristic::Condition::kSuffix:
      value = ends_with(token.surface, cond.arg);
      break;
    case Heuristic::Condition::kPrefix:
      value = token.surface.rfind(cond.arg, 0) == 0;
      break;
    case Heuristic::Condition::kCapitalized:
      value = starts_uppercase(token.surface);
      break;
    case Heuristic::Condition::kLowercase:
      value = starts_lowercase(token.surface);
      break;
    case Heuristic::Condition::kDigits:
      value = all_digits(token.surface);
      break;
    case Heuristic::Condition::kInitial:
      value = token.sentence_initial;
      break;
    case Heuristic::Condition::kPrevTag:
      value = token.prev_tag == cond.arg;
      break;
    case Heuristic::Condition::kNextTag:
      value = token.next_tag == cond.arg;
      break;
  }
  return cond.negated ? !value : value;
}

std::vector<Heuristic> load_from_stream(std::istream& in,
                                        const std::string& name) {
  std::vector<Heuristic> heuristics;
  std::set<std::string> names;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (trim(view).empty() || trim(view).front() == '#') continue;
    auto fields = split_fields(view, '\t');
    if (fields.size() < 3)
      throw FormatError(name, lineno,
                        "expected NAME<TAB>predicate<TAB>POS[<TAB>features]");
    Heuristic heuristic;
    heuristic.name = std::string(trim(fields[0]));
    if (!names.insert(heuristic.name).second)
      throw FormatError(name, lineno,
                        "duplicate heuristic '" + heuristic.name + "'");
    heuristic.pos = std::string(trim(fields[2]));
    if (!known_pos_class(heuristic.pos))
      throw FormatError(name, lineno,
                        "unknown POS class '" + heuristic.pos + "'");
    FeatureSet default_features = FeatureSet::full();
    if (fields.size() >= 4 && !trim(fields[3]).empty())
      default_features =
          FeatureSet::parse_or_throw(trim(fields[3]), name + ":" +
                                                          std::to_string(lineno));
    for (auto clause_text : split_fields(trim(fields[1]), ';')) {
      Heuristic::Clause clause;
      clause.features = default_features;
      std::string_view body = clause_text;
      auto arrow = clause_text.find("=>");
      if (arrow != std::string_view::npos) {
        body = clause_text.substr(0, arrow);
        clause.features = FeatureSet::parse_or_throw(
            trim(clause_text.substr(arrow + 2)),
            name + ":" + std::to_string(lineno));
      }
      for (auto cond_text : split_fields(body, '&'))
        clause.conditions.push_back(parse_condition(cond_text, name, lineno));
      heuristic.clauses.push_back(std::move(clause));
    }
    heuristics.push_back(std::move(heuristic));
  }
  return heuristics;
}

}  // namespace

bool Heuristic::matches(const TokenContext& token, FeatureSet* features) const {
  for (const auto& clause : clauses) {
    bool all = true;
    for (const auto& cond : clause.conditions) {
      if (!eval_condition(cond, token)) {
        all = false;
        break;
      }
    }
    if (all) {
      if (features) *features = clause.features;
      return true;
    }
  }
  return false;
}

std::vector<Heuristic> load_heuristics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open heuristics file: " + path);
  return load_from_stream(in, path);
}

std::vector<Heuristic> heuristics_from_string(const std::string& text,
                                              const std::string& name) {
  std::istringstream in(text);
  return load_from_stream(in, name);
}

Element tagged_token(const std::string& surface,
                     const std::vector<MorphAnalysis>& analyses) {
  Element token(analyses.at(0).pos);
  if (!analyses[0].source.empty())
    token.set_attr("SRC", analyses[0].source);
  if (!analyses[0].features.is_full())
    token.set_attr("FS", analyses[0].features.to_string());
  if (analyses.size() > 1) {
    std::string alt, fsa;
    for (std::size_t i = 1; i < analyses.size(); ++i) {
      if (i > 1) {
        alt += ',';
        fsa += ' ';
      }
      alt += analyses[i].pos;
      fsa += analyses[i].features.to_string();
    }
    token.set_attr("ALT", alt);
    token.set_attr("FSA", fsa);
  }
  token.add_text(surface);
  return token;
}

std::vector<MorphAnalysis> analyses_of(const Element& token) {
  std::vector<MorphAnalysis> analyses;
  MorphAnalysis first;
  first.pos = token.name();
  first.lemma = text_content(token);
  first.features = FeatureSet::full();
  if (const std::string* fs = token.attr("FS"))
    first.features = FeatureSet::parse_or_throw(*fs, "FS attribute");
  if (const std::string* src = token.attr("SRC")) first.source = *src;
  analyses.push_back(std::move(first));
  const std::string* alt = token.attr("ALT");
  if (!alt) return analyses;
  auto classes = split_fields(*alt, ',');
  std::vector<std::string_view> feature_sets;
  if (const std::string* fsa = token.attr("FSA"))
    feature_sets = split_fields(*fsa, ' ');
  for (std::size_t i = 0; i < classes.size(); ++i) {
    MorphAnalysis a;
    a.pos = std::string(trim(classes[i]));
    a.lemma = analyses[0].lemma;
    a.features = i < feature_sets.size()
                     ? FeatureSet::parse_or_throw(feature_sets[i],
                                                  "FSA attribute")
                     : FeatureSet::full();
    analyses.push_back(std::move(a));
  }
  return analyses;
}

namespace {

bool whitespace_only_text(const Node& node) {
  if (!node.is_text()) return false;
  const std::string& t = node.text();
  return std::all_of(t.begin(), t.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

// A sentence's content as a list of token items, words still unwrapped.
struct Item {
  bool is_word;
  std::string word;   // when is_word
  Node node;          // otherwise the original element
  bool space_before;
};

std::vector<Item> sentence_items(const Element& sentence) {
  std::vector<Item> items;
  bool pending_space = false;
  for (const auto& child : sentence.children()) {
    if (child.is_text()) {
      const std::string& text = child.text();
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
        items.push_back({true, text.substr(start, pos - start),
                         Node(TextSpan{" "}), pending_space});
        pending_space = false;
      }
    } else {
      items.push_back({false, "", child, pending_space});
      pending_space = false;
    }
  }
  return items;
}

void tag_sentence(Element& sentence, const Lexicon& lexicon,
                  const std::vector<Heuristic>& heuristics) {
  std::vector<Item> items = sentence_items(sentence);
  sentence.children().clear();
  bool word_seen = false;
  std::string prev_tag;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Item& item = items[i];
    if (item.space_before && !sentence.children().empty())
      sentence.add_text(" ");
    if (!item.is_word) {
      prev_tag = item.node.element().name();
      sentence.add_child(std::move(item.node));
      continue;
    }
    TokenContext context;
    context.surface = item.word;
    context.sentence_initial = !word_seen;
    context.prev_tag = prev_tag;
    if (i + 1 < items.size())
      context.next_tag =
          items[i + 1].is_word ? "TOK" : items[i + 1].node.element().name();
    word_seen = true;

    std::vector<MorphAnalysis> analyses =
        lexicon.analyze(item.word, context.sentence_initial);
    if (analyses.empty()) {
      for (const auto& heuristic : heuristics) {
        FeatureSet features;
        if (heuristic.matches(context, &features)) {
          analyses.push_back(
              {heuristic.pos, features, item.word, heuristic.name});
          break;
        }
      }
    }
    Element token =
        analyses.empty()
            ? [&] {
                Element unknown("XXX");
                unknown.add_text(item.word);
                return unknown;
              }()
            : tagged_token(item.word, analyses);
    prev_tag = token.name();
    sentence.add_child(Node(std::move(token)));
  }
}

}  // namespace

AnnotatedDocument tag_document(AnnotatedDocument doc, const Lexicon& lexicon,
                               const std::vector<Heuristic>& heuristics) {
  bool found_sentence = false;
  for (auto& child : doc.root.children()) {
    if (child.is_element() && child.element().name() == "S") {
      found_sentence = true;
      tag_sentence(child.element(), lexicon, heuristics);
    }
  }
  if (!found_sentence) tag_sentence(doc.root, lexicon, heuristics);
  return doc;
}

CoverageStats coverage_report(const AnnotatedDocument& doc) {
  CoverageStats stats;
  auto count_sentence = [&stats](const Element& sentence) {
    for (const auto& child : sentence.children()) {
      if (!child.is_element()) {
        if (!whitespace_only_text(child)) ++stats.total;  // untagged word
        continue;
      }
      const Element& token = child.element();
      ++stats.total;
      if (token.name() == "XXX") ++stats.unknown;
      else if (token.attr("SRC") != nullptr) ++stats.heuristic_covered;
      else if (known_pos_class(token.name())) ++stats.lexicon_covered;
    }
  };
  bool found_sentence = false;
  for (const auto& child : doc.root.children()) {
    if (child.is_element() && child.element().name() == "S") {
      found_sentence = true;
      count_sentence(child.element());
    }
  }
  if (!found_sentence) count_sentence(doc.root);
  return stats;
}

}  // namespace xdoc
