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

// Structure detection: raw text to tokenized, sentence-segmented documents.
//
// The hard part is the period. It may close a sentence, sit inside an
// abbreviation ("Dr.", "z.B."), inside a number (3.14) or inside a
// domain-specific token (product codes, emails). Token patterns and an
// abbreviation lexicon are consulted before any punctuation decision.

#ifndef XDOC_STRUCTURE_HPP_
#define XDOC_STRUCTURE_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xdoc/textmatch.hpp"
#include "xdoc/xml.hpp"

namespace xdoc {

// Extraction of one element attribute from a named group of the pattern,
// optionally decoded through a lookup table ("GS" -> "Sandguss").
struct AttrRule {
  std::string attr;
  std::string group;
  std::string table;  // empty: use the group text verbatim
};

struct TokenPattern {
  std::string name;
  TextPattern matcher;
  std::vector<AttrRule> attrs;
};

struct PatternSet {
  std::vector<TokenPattern> patterns;  // in declaration order
  std::map<std::string, std::map<std::string, std::string>> tables;
};

struct AbbreviationLexicon {
  // Sorted by descending length so the longest entry wins at one position.
  std::vector<std::string> entries;

  void add(std::string entry);
  bool empty() const { return entries.empty(); }
};

struct StructureConfig {
  std::set<std::string> sentence_terminals = {".", "!", "?", ":"};
  PatternSet patterns;
  AbbreviationLexicon abbreviations;
};

// Codepoint replacement map applied during normalization, e.g. typographic
// apostrophe -> ' or umlaut transliteration.
using CharMap = std::map<std::string, std::string>;

// Pattern file: `NAME <TAB> pattern [<TAB> Attr=GROUP[@table],...]` plus
// `!table NAME key=value ...` lines; '#' starts a comment line.
PatternSet load_patterns(const std::string& path);

// One abbreviation per line; every entry must contain a '.'.
AbbreviationLexicon load_abbreviations(const std::string& path);

// `from <TAB> to` per line, UTF-8.
CharMap load_charmap(const std::string& path);

// UTF-8 validation (throws InvalidEncoding), CRLF -> LF, control characters
// other than LF/TAB dropped, then the character map.
std::string normalize_input(std::string_view raw, const CharMap& map = {});

// Splits normalized text into tokens under a DOC root. Special tokens become
// elements (pattern names, ABBR, IP); plain words and numbers stay as text.
// Tokens separated by whitespace in the input are separated by a single
// space afterwards; adjacent tokens stay adjacent.
AnnotatedDocument tokenize(std::string_view text, const StructureConfig& config);

// Wraps token runs into <S> elements. A top-level IP token whose text is a
// sentence terminal closes the sentence and gets SENT="end"; a trailing run
// without a terminal becomes <S COMPLETE="no">. No-op when the document is
// already segmented.
AnnotatedDocument detect_sentences(AnnotatedDocument doc,
                                   const StructureConfig& config);

}  // namespace xdoc

#endif  // XDOC_STRUCTURE_HPP_
