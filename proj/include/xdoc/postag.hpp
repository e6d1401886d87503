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

// POS tagging: lexicon first, string/position heuristics second, XXX last.
//
// Every plain token becomes one element. Ambiguity is never resolved here:
// the element name is the first class, the remaining classes ride along in
// ALT (and their feature sets in FSA) for the parser to expand. Heuristic
// tags carry the heuristic name in SRC. The exact feature triples travel in
// the FS attribute so later stages need no lexicon.

#ifndef XDOC_POSTAG_HPP_
#define XDOC_POSTAG_HPP_

#include <string>
#include <vector>

#include "xdoc/features.hpp"
#include "xdoc/morph.hpp"
#include "xdoc/xml.hpp"

namespace xdoc {

// One token as seen by a heuristic predicate.
struct TokenContext {
  std::string surface;
  bool sentence_initial = false;
  std::string prev_tag;  // element name of the previous token, "" at start
  std::string next_tag;  // next pre-tagged element's name, "TOK" for a word
};

struct Heuristic {
  struct Condition {
    enum Kind { kSuffix, kPrefix, kCapitalized, kLowercase, kDigits,
                kInitial, kPrevTag, kNextTag } kind;
    std::string arg;
    bool negated = false;
  };
  struct Clause {
    std::vector<Condition> conditions;
    FeatureSet features;  // emitted when this clause fires
  };

  std::string name;
  std::vector<Clause> clauses;
  std::string pos;

  bool matches(const TokenContext& token, FeatureSet* features) const;
};

// `NAME <TAB> predicate [<TAB> POS [<TAB> features]]`. A predicate is
// ';'-separated clauses of '&'-joined conditions, each condition optionally
// '!'-negated; a clause may override the emitted features with
// "cond & cond => FEATURES". Heuristic names must be unique.
std::vector<Heuristic> load_heuristics(const std::string& path);
std::vector<Heuristic> heuristics_from_string(const std::string& text,
                                              const std::string& name);

// Tags every plain token of every sentence. Pre-tagged elements (IP, ABBR,
// pattern tokens) are untouched. Heuristics fire only on lexicon misses, in
// list order; tokens nothing applies to become XXX.
AnnotatedDocument tag_document(AnnotatedDocument doc, const Lexicon& lexicon,
                               const std::vector<Heuristic>& heuristics);

struct CoverageStats {
  std::size_t total = 0;
  std::size_t lexicon_covered = 0;
  std::size_t heuristic_covered = 0;
  std::size_t unknown = 0;

  double unknown_ratio() const {
    return total == 0 ? 0.0 : static_cast<double>(unknown) /
                                  static_cast<double>(total);
  }
};

// Token counts over a tagged document; the XXX ratio indicates lexical
// coverage of the domain.
CoverageStats coverage_report(const AnnotatedDocument& doc);

// Reads the analyses a tagged token element carries (FS/ALT/FSA attributes).
std::vector<MorphAnalysis> analyses_of(const Element& token);

// Writes analyses into a token element for `surface`; analyses must be
// non-empty.
Element tagged_token(const std::string& surface,
                     const std::vector<MorphAnalysis>& analyses);

}  // namespace xdoc

#endif  // XDOC_POSTAG_HPP_
