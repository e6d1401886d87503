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

// Shared test machinery: random generators and the independent oracles the
// chart parser and partial-cover search are checked against. Everything here
// is deliberately brute force and shares no code with the implementations
// under test.

#ifndef XDOC_TESTS_TEST_SUPPORT_HPP_
#define XDOC_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "xdoc/features.hpp"
#include "xdoc/grammar.hpp"
#include "xdoc/parser.hpp"
#include "xdoc/xml.hpp"

namespace xdoc_test {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// ---- random feature sets --------------------------------------------------

inline xdoc::FeatureSet random_feature_set(Rng& rng) {
  uint32_t mask = 0;
  while (mask == 0)
    mask = std::uniform_int_distribution<uint32_t>(
               1, (uint32_t{1} << xdoc::kNumTriples) - 1)(rng);
  return xdoc::FeatureSet::from_mask(mask);
}

// ---- random documents (XML round-trip) ------------------------------------

inline std::string random_text(Rng& rng) {
  static const std::string_view pieces[] = {
      "Leber", "dunkelrot", "a<b", "x&y", "\"quote\"", "it's", "3.14",
      "Koerper", "äöüß", " ", "  ", "Befund frei", ">>",
      "z.B.", "-", "Harnblase leer"};
  std::string out;
  int n = pick(rng, 1, 3);
  for (int i = 0; i < n; ++i)
    out += pieces[static_cast<std::size_t>(pick(rng, 0, 15))];
  return out;
}

inline xdoc::Element random_element(Rng& rng, int depth) {
  static const std::string_view names[] = {"DOC", "S", "NP", "N", "ABBR",
                                           "IP", "X-1", "a.b", "_t"};
  xdoc::Element element(
      std::string(names[static_cast<std::size_t>(pick(rng, 0, 8))]));
  int attrs = pick(rng, 0, 3);
  static const std::string_view attr_names[] = {"CAS", "NUM", "GEN", "SRC",
                                                "TYPE", "RULE", "A-1"};
  for (int i = 0; i < attrs; ++i)
    element.set_attr(attr_names[static_cast<std::size_t>(pick(rng, 0, 6))],
                     random_text(rng));
  int children = depth > 0 ? pick(rng, 0, 3) : 0;
  for (int i = 0; i < children; ++i) {
    if (chance(rng, 0.5)) {
      element.add_text(random_text(rng));
    } else {
      element.add_child(xdoc::Node(random_element(rng, depth - 1)));
    }
  }
  return element;
}

inline xdoc::AnnotatedDocument random_document(Rng& rng) {
  return {random_element(rng, 3)};
}

// ---- random grammars and sentences for the parser oracle ------------------

struct RandomInstance {
  xdoc::Grammar grammar;
  std::vector<xdoc::ParseToken> tokens;
};

// Builds the instance through the grammar-file parser so the loader is
// exercised too. Unary rules only rewrite to strictly lower nonterminals or
// terminals, which keeps the derivation space finite.
inline RandomInstance random_instance(Rng& rng) {
  RandomInstance instance;
  int terminal_count = pick(rng, 2, 3);
  int nonterminal_count = pick(rng, 2, 4);
  auto terminal = [](int i) { return "T" + std::to_string(i); };
  auto nonterminal = [](int i) { return "N" + std::to_string(i); };

  std::string grammar_text;
  int rule_count = pick(rng, 3, 15);
  for (int r = 0; r < rule_count; ++r) {
    int lhs = pick(rng, 0, nonterminal_count - 1);
    int rhs_length = pick(rng, 1, 3);
    std::vector<std::string> symbols;
    bool can_group = true;
    for (int s = 0; s < rhs_length; ++s) {
      bool use_terminal =
          rhs_length == 1 ? (lhs == 0 || chance(rng, 0.6)) : chance(rng, 0.5);
      std::string symbol;
      if (use_terminal) {
        symbol = terminal(pick(rng, 0, terminal_count - 1));
        if (chance(rng, 0.25)) symbol += "?xxx";
      } else {
        int target = rhs_length == 1 ? pick(rng, 0, lhs - 1)
                                     : pick(rng, 0, nonterminal_count - 1);
        symbol = nonterminal(target);
      }
      if (chance(rng, 0.25)) {
        static const std::string_view constraints[] = {
            "[cas=NOM|GEN]", "[cas=DAT]", "[num=SG]", "[gen=FEM|NTR]",
            "[num=PL]"};
        symbol += constraints[static_cast<std::size_t>(pick(rng, 0, 4))];
      }
      symbols.push_back(symbol);
    }
    std::string lhs_text = nonterminal(lhs);
    if (chance(rng, 0.6) && can_group) {
      // Agreement group over the LHS and a random non-empty slot subset.
      int members = 0;
      std::string tagged_lhs = lhs_text + "@a";
      std::vector<std::string> tagged = symbols;
      for (auto& symbol : tagged)
        if (chance(rng, 0.6)) {
          symbol += "@a";
          ++members;
        }
      if (members == 0) {
        tagged[static_cast<std::size_t>(pick(
            rng, 0, static_cast<int>(tagged.size()) - 1))] += "@a";
      }
      lhs_text = tagged_lhs;
      symbols = tagged;
    }
    grammar_text += "R" + std::to_string(r) + ": " + lhs_text + " ->";
    for (const auto& symbol : symbols) grammar_text += " " + symbol;
    grammar_text += "\n";
  }
  instance.grammar = xdoc::Grammar::assemble(
      {xdoc::grammar_module_from_string(grammar_text, "random")});

  int token_count = pick(rng, 1, 8);
  for (int i = 0; i < token_count; ++i) {
    xdoc::ParseToken token;
    token.surface = "w" + std::to_string(i);
    token.original = xdoc::Element("XXX");
    token.original.add_text(token.surface);
    if (!chance(rng, 0.15)) {
      int readings = pick(rng, 1, 2);
      std::set<std::string> used;
      for (int r = 0; r < readings; ++r) {
        std::string pos = terminal(pick(rng, 0, terminal_count - 1));
        if (!used.insert(pos).second) continue;
        token.readings.push_back({pos, random_feature_set(rng), ""});
      }
    }
    instance.tokens.push_back(std::move(token));
  }
  return instance;
}

// ---- brute-force parse enumeration -----------------------------------------

struct OracleTree {
  int token = -1;
  int reading = -1;            // -1: unknown-token leaf
  std::string category;        // terminal category or LHS category
  const xdoc::GrammarRule* rule = nullptr;
  std::vector<OracleTree> children;
};

inline std::string oracle_signature(const OracleTree& tree) {
  if (tree.rule == nullptr) {
    return "t" + std::to_string(tree.token) + ":" +
           (tree.reading < 0 ? "XXX" : std::to_string(tree.reading)) + ":" +
           (tree.reading < 0 ? "XXX" : tree.category);
  }
  std::string out = tree.rule->id;
  out += '(';
  for (std::size_t i = 0; i < tree.children.size(); ++i) {
    if (i) out += ' ';
    out += oracle_signature(tree.children[i]);
  }
  out += ')';
  return out;
}

// Bottom-up feature evaluation with per-slot and per-group checks; nullopt
// means the tree violates a constraint somewhere.
inline std::optional<xdoc::FeatureSet> oracle_features(
    const OracleTree& tree, const std::vector<xdoc::ParseToken>& tokens) {
  if (tree.rule == nullptr) {
    if (tree.reading < 0) return xdoc::FeatureSet::full();
    return tokens[static_cast<std::size_t>(tree.token)]
        .readings[static_cast<std::size_t>(tree.reading)]
        .features;
  }
  const xdoc::GrammarRule& rule = *tree.rule;
  std::vector<xdoc::FeatureSet> groups(
      static_cast<std::size_t>(rule.group_count), xdoc::FeatureSet::full());
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    auto child_features = oracle_features(tree.children[i], tokens);
    if (!child_features) return std::nullopt;
    const xdoc::Constituent& slot = rule.rhs[i];
    xdoc::FeatureSet base = tree.children[i].rule == nullptr &&
                                    tree.children[i].reading < 0
                                ? xdoc::FeatureSet::full()
                                : *child_features;
    xdoc::FeatureSet contribution = base.unify(slot.constraint);
    if (contribution.empty()) return std::nullopt;
    if (slot.group >= 0)
      groups[static_cast<std::size_t>(slot.group)] =
          groups[static_cast<std::size_t>(slot.group)].unify(contribution);
  }
  for (const auto& group : groups)
    if (group.empty()) return std::nullopt;
  if (rule.lhs_group >= 0)
    return groups[static_cast<std::size_t>(rule.lhs_group)];
  return xdoc::FeatureSet::full();
}

class OracleEnumerator {
 public:
  // Thrown when the shape enumeration exceeds the work budget; such
  // instances are skipped (and regenerated) by the callers.
  struct TooLarge {};

  OracleEnumerator(const xdoc::Grammar& grammar,
                   const std::vector<xdoc::ParseToken>& tokens,
                   std::size_t budget = 200000)
      : grammar_(grammar), tokens_(tokens), budget_(budget) {}

  // All feature-valid complete trees over the whole input, as signatures.
  std::multiset<std::string> complete_signatures() {
    std::multiset<std::string> out;
    int n = static_cast<int>(tokens_.size());
    std::set<std::string> categories;
    for (const auto& rule : grammar_.rules())
      categories.insert(rule.lhs_category);
    for (const auto& category : categories) {
      for (const auto& tree : derive(category, 0, n)) {
        if (oracle_features(tree, tokens_)) out.insert(oracle_signature(tree));
      }
    }
    return out;
  }

 private:
  // All shape-valid trees of `category` over [from, to); features are
  // checked later, on whole trees.
  const std::vector<OracleTree>& derive(const std::string& category, int from,
                                        int to) {
    auto key = std::make_tuple(category, from, to);
    auto memo = memo_.find(key);
    if (memo != memo_.end()) return memo->second;
    std::vector<OracleTree> trees;
    if (to - from == 1) {
      const xdoc::ParseToken& token =
          tokens_[static_cast<std::size_t>(from)];
      for (std::size_t r = 0; r < token.readings.size(); ++r) {
        if (token.readings[r].pos == category) {
          OracleTree leaf;
          leaf.token = from;
          leaf.reading = static_cast<int>(r);
          leaf.category = category;
          trees.push_back(std::move(leaf));
        }
      }
    }
    for (const auto& rule : grammar_.rules()) {
      if (rule.lhs_category != category) continue;
      expand(rule, 0, from, to, {}, &trees);
    }
    return memo_.emplace(key, std::move(trees)).first->second;
  }

  void expand(const xdoc::GrammarRule& rule, std::size_t slot_index, int at,
              int to, std::vector<OracleTree> chosen,
              std::vector<OracleTree>* out) {
    if (slot_index == rule.rhs.size()) {
      if (at != to) return;
      if (budget_-- == 0) throw TooLarge{};
      OracleTree tree;
      tree.category = rule.lhs_category;
      tree.rule = &rule;
      tree.children = std::move(chosen);
      out->push_back(std::move(tree));
      return;
    }
    int remaining = static_cast<int>(rule.rhs.size() - slot_index) - 1;
    const xdoc::Constituent& slot = rule.rhs[slot_index];
    for (int end = at + 1; end + remaining <= to; ++end) {
      // Regular derivations of the slot category.
      for (const auto& child : derive(slot.category, at, end)) {
        if (budget_-- == 0) throw TooLarge{};
        auto next = chosen;
        next.push_back(child);
        expand(rule, slot_index + 1, end, to, std::move(next), out);
      }
      // Unknown-token admission.
      if (slot.allow_unknown && end == at + 1 &&
          tokens_[static_cast<std::size_t>(at)].unknown()) {
        OracleTree leaf;
        leaf.token = at;
        leaf.reading = -1;
        leaf.category = slot.category;
        auto next = chosen;
        next.push_back(std::move(leaf));
        expand(rule, slot_index + 1, end, to, std::move(next), out);
      }
    }
  }

  const xdoc::Grammar& grammar_;
  const std::vector<xdoc::ParseToken>& tokens_;
  std::size_t budget_;
  std::map<std::tuple<std::string, int, int>, std::vector<OracleTree>> memo_;
};

// Chart-side signatures for comparison.
inline std::multiset<std::string> chart_signatures(
    const std::vector<const xdoc::Edge*>& complete) {
  std::multiset<std::string> out;
  for (const xdoc::Edge* edge : complete) out.insert(xdoc::tree_signature(*edge));
  return out;
}

// ---- exhaustive tiling oracle ----------------------------------------------

// Enumerates every tiling of [0, n) by the given edges, keeps the minimal
// ones, and orders them with the same comparator the implementation
// documents (per fragment: longer first, then rule id; terminals last).
inline std::vector<std::vector<const xdoc::Edge*>> oracle_min_covers(
    int length, const std::vector<const xdoc::Edge*>& edges) {
  std::vector<std::vector<const xdoc::Edge*>> all;
  std::vector<const xdoc::Edge*> current;
  std::function<void(int)> walk = [&](int at) {
    if (at == length) {
      all.push_back(current);
      return;
    }
    for (const xdoc::Edge* edge : edges) {
      if (edge->start != at) continue;
      current.push_back(edge);
      walk(edge->end);
      current.pop_back();
    }
  };
  walk(0);
  if (all.empty()) return all;
  std::size_t best = all[0].size();
  for (const auto& cover : all) best = std::min(best, cover.size());
  std::vector<std::vector<const xdoc::Edge*>> minimal;
  for (const auto& cover : all)
    if (cover.size() == best) minimal.push_back(cover);
  auto rule_id = [](const xdoc::Edge& e) {
    return e.terminal() ? std::string("~token") : e.rule->id;
  };
  std::sort(minimal.begin(), minimal.end(),
            [&](const auto& a, const auto& b) {
              for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
                if (a[i]->end != b[i]->end) return a[i]->end > b[i]->end;
                if (rule_id(*a[i]) != rule_id(*b[i]))
                  return rule_id(*a[i]) < rule_id(*b[i]);
              }
              return a.size() < b.size();
            });
  return minimal;
}

// ---- structural comparison helpers -----------------------------------------

inline bool whitespace_node(const xdoc::Node& node) {
  if (!node.is_text()) return false;
  for (char c : node.text())
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') return false;
  return true;
}

// Equality on element name, attribute *sets* and non-whitespace content;
// whitespace text nodes are ignored, so the comparison is independent of
// pretty-printing and attribute order.
inline bool same_structure(const xdoc::Element& a, const xdoc::Element& b,
                           std::string* diff = nullptr) {
  if (a.name() != b.name()) {
    if (diff) *diff = "element <" + a.name() + "> vs <" + b.name() + ">";
    return false;
  }
  auto attrs = [](const xdoc::Element& e) {
    std::map<std::string, std::string> out;
    for (const auto& attr : e.attributes()) out[attr.name] = attr.value;
    return out;
  };
  if (attrs(a) != attrs(b)) {
    if (diff) {
      *diff = "<" + a.name() + "> attributes differ: ";
      for (const auto& [k, v] : attrs(a)) *diff += k + "=\"" + v + "\" ";
      *diff += "vs ";
      for (const auto& [k, v] : attrs(b)) *diff += k + "=\"" + v + "\" ";
    }
    return false;
  }
  std::vector<const xdoc::Node*> left, right;
  for (const auto& node : a.children())
    if (!whitespace_node(node)) left.push_back(&node);
  for (const auto& node : b.children())
    if (!whitespace_node(node)) right.push_back(&node);
  if (left.size() != right.size()) {
    if (diff)
      *diff = "<" + a.name() + "> child count " +
              std::to_string(left.size()) + " vs " +
              std::to_string(right.size());
    return false;
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i]->is_element() != right[i]->is_element()) {
      if (diff) *diff = "<" + a.name() + "> child " + std::to_string(i) +
                        " kind mismatch";
      return false;
    }
    if (left[i]->is_element()) {
      if (!same_structure(left[i]->element(), right[i]->element(), diff))
        return false;
    } else if (left[i]->text() != right[i]->text()) {
      if (diff) *diff = "text '" + left[i]->text() + "' vs '" +
                        right[i]->text() + "'";
      return false;
    }
  }
  return true;
}

// Token tag sequence: (element name, token text) for every leaf token plus
// ("TEXT", word) for unwrapped words. S wrappers and whitespace disappear.
inline void tag_sequence_of(const xdoc::Element& element,
                            std::vector<std::pair<std::string, std::string>>* out) {
  bool leaf = true;
  for (const auto& child : element.children())
    if (child.is_element()) leaf = false;
  if (leaf && element.name() != "S" && element.name() != "DOC") {
    out->push_back({element.name(), xdoc::text_content(element)});
    return;
  }
  for (const auto& child : element.children()) {
    if (child.is_element()) {
      tag_sequence_of(child.element(), out);
    } else {
      std::string word;
      for (char c : child.text() + " ") {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
          if (!word.empty()) out->push_back({"TEXT", word});
          word.clear();
        } else {
          word += c;
        }
      }
    }
  }
}

inline std::vector<std::pair<std::string, std::string>> tag_sequence(
    const xdoc::AnnotatedDocument& doc) {
  std::vector<std::pair<std::string, std::string>> out;
  tag_sequence_of(doc.root, &out);
  return out;
}

}  // namespace xdoc_test

#endif  // XDOC_TESTS_TEST_SUPPORT_HPP_
