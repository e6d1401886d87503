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

// Bottom-up chart parser over tagged token lattices.
//
// Input tokens may carry several POS readings, partial features or no class
// at all (XXX); the chart explores every reading and every rule, finds all
// complete analyses, and falls back to minimal tilings of the input by
// maximal partial results when no complete analysis exists. An unknown token
// may fill a rule slot that licenses it ('?xxx'); the assumed class is
// reported as the AS attribute and can be harvested as a lexicon candidate,
// as can feature values that agreement fully pinned down.

#ifndef XDOC_PARSER_HPP_
#define XDOC_PARSER_HPP_

#include <deque>
#include <string>
#include <vector>

#include "xdoc/features.hpp"
#include "xdoc/grammar.hpp"
#include "xdoc/morph.hpp"
#include "xdoc/xml.hpp"

namespace xdoc {

struct TokenReading {
  std::string pos;
  FeatureSet features;
  std::string src;  // heuristic name when heuristically tagged
};

struct ParseToken {
  std::string surface;
  std::vector<TokenReading> readings;  // empty: unknown token (XXX)
  Element original;                    // tagged element, kept for output
  bool unknown() const { return readings.empty(); }
};

// Token list of a tagged sentence element. Throws Error on untagged content.
std::vector<ParseToken> sentence_tokens(const Element& sentence);

struct Edge {
  int start = 0, end = 0;
  std::string category;
  FeatureSet features;
  const GrammarRule* rule = nullptr;   // null: terminal edge
  std::vector<const Edge*> daughters;
  int token = -1;                      // terminal edges
  int reading = -1;                    // -1 on XXX terminals
  int unary_depth = 0;

  bool terminal() const { return rule == nullptr; }
};

struct ParseOptions {
  std::vector<std::string> roots;  // accepted root categories; empty = any
  std::size_t max_covers = 0;      // cap on reported tilings; 0 = all
  int max_unary_depth = 10;
  std::size_t max_edges = 5'000'000;  // hard stop against chart blowup
};

struct ParseResult {
  // All complete analyses, deterministically ordered.
  std::vector<const Edge*> complete;
  // Minimal tilings of the input, only filled when `complete` is empty.
  std::vector<std::vector<const Edge*>> partial_cover;
};

class ChartParser {
 public:
  explicit ChartParser(const Grammar& grammar, ParseOptions options = {});

  // Parses one sentence; the returned edges stay owned by the parser and
  // live until the next parse() call.
  ParseResult parse(const std::vector<ParseToken>& tokens);

  // All passive edges of the last parse (terminals included).
  const std::deque<Edge>& chart() const { return edges_; }

 private:
  struct Active {
    const GrammarRule* rule;
    std::size_t dot;
    int start, end;
    std::vector<const Edge*> daughters;
    std::vector<FeatureSet> groups;
  };

  void add_passive(Edge edge);
  void route_active(Active active);
  bool slot_accepts(const Constituent& slot, const Edge& edge) const;

  const Grammar& grammar_;
  ParseOptions options_;
  std::deque<Edge> edges_;
  std::vector<const Edge*> passives_;
  std::vector<Active> actives_;
  std::vector<const Edge*> pending_;
};

// Enumerates the minimal tilings of [0, n) by the given edges (terminal
// edges count). Covers come back ordered leftmost-longest, rule ids breaking
// ties; `max_covers` 0 means unlimited. Exposed separately so synthetic
// charts can be covered in tests.
std::vector<std::vector<const Edge*>> minimal_covers(
    int length, const std::vector<const Edge*>& edges,
    std::size_t max_covers = 0);

// Deterministic structural signature of a parse tree (used for ordering and
// comparison), and the nesting depth (flatter parses are reported first).
std::string tree_signature(const Edge& edge);
int tree_depth(const Edge& edge);

// Rebuilds sentence content from a parse: the first complete analysis, or
// the first minimal cover with PARTIAL="fragments" on the sentence; with
// `all_parses`, every complete analysis wrapped in <PARSE N="...">.
void annotate_sentence(Element& sentence, const ParseResult& result,
                       const std::vector<ParseToken>& tokens,
                       bool all_parses = false);

// One complete analysis as an element tree (features refined top-down).
Element parse_tree_element(const Edge& root,
                           const std::vector<ParseToken>& tokens);

struct LexCandidate {
  std::string surface;
  std::string pos;
  FeatureSet features;
  std::string origin;  // "assumption" or the heuristic name

  bool operator==(const LexCandidate&) const = default;
};

// Lexicon candidates from complete parses: every XXX assumption, plus every
// heuristically tagged token whose features agreement narrowed to a single
// triple. Candidates only; nothing is committed anywhere.
std::vector<LexCandidate> derive_lexicon_updates(
    const ParseResult& result, const std::vector<ParseToken>& tokens);

// Candidate as a lexicon file line.
std::string candidate_line(const LexCandidate& candidate);

}  // namespace xdoc

#endif  // XDOC_PARSER_HPP_
