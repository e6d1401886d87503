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

// Morphosyntactic analysis and generation for German.
//
// Closed-class items and irregular verb forms are stored per surface form
// with their admissible feature triples. Open-class words are covered by
// root entries plus declension/conjugation paradigms (suffix tables), so a
// token analyzes by root+suffix decomposition and generates by table lookup.
// Analysis in isolation is deliberately ambiguous: all readings are
// returned, disambiguation belongs to the parser.
//
// Verbs are housed with number only; tense/mood/person stay outside the
// case-number-gender feature space.

#ifndef XDOC_MORPH_HPP_
#define XDOC_MORPH_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xdoc/features.hpp"

namespace xdoc {

// The POS classes a lexicon may assign. XXX is reserved for unknowns and
// never appears in a lexicon.
bool known_pos_class(std::string_view pos);
bool open_class_pos(std::string_view pos);  // N, V, ADJ

struct LexEntry {
  std::string root;      // surface form for fixed entries, stem otherwise
  std::string pos;
  std::string paradigm;  // empty for fixed (closed-class / irregular) entries
  FeatureSet fixed = FeatureSet::full();  // admissible triples / restriction
  std::map<std::string, std::string> extra;  // lemma=..., gov=...

  std::string lemma() const {
    auto it = extra.find("lemma");
    return it == extra.end() ? root : it->second;
  }
};

struct Paradigm {
  struct Cell {
    FeatureSet features;
    std::vector<std::string> suffixes;  // empty: no surface for these features
  };
  std::string id;
  std::string pos;
  std::vector<Cell> cells;
};

struct MorphAnalysis {
  std::string pos;
  FeatureSet features;
  std::string lemma;
  std::string source;  // empty = lexicon, otherwise the heuristic name

  bool operator==(const MorphAnalysis&) const = default;
};

class Lexicon {
 public:
  // `surface-or-root <TAB> POS <TAB> paradigm-or-'-' <TAB> features-or-'_'
  //  [<TAB> key=value ...]` plus `!paradigm` lines; '#' starts a comment.
  static Lexicon load(const std::string& path);
  static Lexicon from_string(std::string_view text,
                             const std::string& name = "<string>");

  void add_entry(LexEntry entry);
  void add_paradigm(Paradigm paradigm);

  const Paradigm* paradigm(const std::string& id) const;
  const std::vector<LexEntry>& entries() const { return entries_; }
  std::vector<const LexEntry*> open_class_entries() const;
  bool empty() const { return entries_.empty(); }

  // All analyses of a token. With `sentence_initial`, a capitalized token is
  // also looked up with its first letter lowered (German sentence starts).
  std::vector<MorphAnalysis> analyze(std::string_view token,
                                     bool sentence_initial = false) const;

  // All surface forms of an open-class entry compatible with `features`.
  // Throws UnknownParadigm.
  std::set<std::string> inflect(const LexEntry& entry,
                                FeatureSet features) const;

 private:
  std::vector<LexEntry> entries_;
  std::map<std::string, std::vector<std::size_t>> fixed_by_surface_;
  std::vector<std::size_t> open_entries_;
  std::map<std::string, Paradigm> paradigms_;
};

// Lowers the first letter (ASCII or two-byte UTF-8 Latin); returns the token
// unchanged when it does not start uppercase.
std::string lower_first(std::string_view token);
bool starts_uppercase(std::string_view token);
bool starts_lowercase(std::string_view token);

}  // namespace xdoc

#endif  // XDOC_MORPH_HPP_
