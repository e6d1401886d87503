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

#include "xdoc/parser.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "xdoc/errors.hpp"
#include "xdoc/postag.hpp"

namespace xdoc {

std::vector<ParseToken> sentence_tokens(const Element& sentence) {
  std::vector<ParseToken> tokens;
  for (const auto& child : sentence.children()) {
    if (child.is_text()) {
      const std::string& text = child.text();
      if (std::all_of(text.begin(), text.end(), [](char c) {
            return c == ' ' || c == '\t' || c == '\n' || c == '\r';
          }))
        continue;
      throw Error("parser input contains untagged text '" + text +
                  "' (run the tag stage first)");
    }
    const Element& element = child.element();
    ParseToken token;
    token.surface = text_content(element);
    token.original = element;
    if (element.name() != "XXX") {
      for (const auto& analysis : analyses_of(element))
        token.readings.push_back(
            {analysis.pos, analysis.features, analysis.source});
    }
    tokens.push_back(std::move(token));
  }
  return tokens;
}

ChartParser::ChartParser(const Grammar& grammar, ParseOptions options)
    : grammar_(grammar), options_(std::move(options)) {}

bool ChartParser::slot_accepts(const Constituent& slot,
                               const Edge& edge) const {
  if (edge.category == slot.category)
    return !edge.features.unify(slot.constraint).empty();
  return slot.allow_unknown && edge.terminal() && edge.category == "XXX";
}

namespace {

// Feature contribution of an edge filling a slot: an unknown token is fully
// underspecified, so only the slot constraint remains.
FeatureSet slot_contribution(const Constituent& slot, const Edge& edge) {
  FeatureSet base =
      edge.category == slot.category ? edge.features : FeatureSet::full();
  return base.unify(slot.constraint);
}

}  // namespace

void ChartParser::add_passive(Edge edge) {
  if (edges_.size() >= options_.max_edges)
    throw Error("chart exceeds " + std::to_string(options_.max_edges) +
                " edges; input too ambiguous");
  edges_.push_back(std::move(edge));
  pending_.push_back(&edges_.back());
}

void ChartParser::route_active(Active active) {
  if (active.dot == active.rule->rhs.size()) {
    Edge edge;
    edge.start = active.start;
    edge.end = active.end;
    edge.category = active.rule->lhs_category;
    edge.features = active.rule->lhs_group >= 0
                        ? active.groups[static_cast<std::size_t>(
                              active.rule->lhs_group)]
                        : FeatureSet::full();
    edge.rule = active.rule;
    edge.daughters = active.daughters;
    if (active.daughters.size() == 1)
      edge.unary_depth = active.daughters[0]->unary_depth + 1;
    if (edge.unary_depth > options_.max_unary_depth) return;
    add_passive(std::move(edge));
    return;
  }
  // Extend with already-stored passives, then store.
  const Constituent& slot = active.rule->rhs[active.dot];
  std::vector<const Edge*> stored = passives_;
  actives_.push_back(active);
  for (const Edge* passive : stored) {
    if (passive->start != active.end || !slot_accepts(slot, *passive))
      continue;
    Active extended = active;
    extended.dot += 1;
    extended.end = passive->end;
    extended.daughters.push_back(passive);
    if (slot.group >= 0) {
      FeatureSet joined =
          extended.groups[static_cast<std::size_t>(slot.group)].unify(
              slot_contribution(slot, *passive));
      if (joined.empty()) continue;
      extended.groups[static_cast<std::size_t>(slot.group)] = joined;
    }
    route_active(std::move(extended));
  }
}

ParseResult ChartParser::parse(const std::vector<ParseToken>& tokens) {
  edges_.clear();
  passives_.clear();
  actives_.clear();
  pending_.clear();

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const ParseToken& token = tokens[i];
    if (token.unknown()) {
      Edge edge;
      edge.start = static_cast<int>(i);
      edge.end = static_cast<int>(i) + 1;
      edge.category = "XXX";
      edge.features = FeatureSet::full();
      edge.token = static_cast<int>(i);
      add_passive(std::move(edge));
      continue;
    }
    for (std::size_t r = 0; r < token.readings.size(); ++r) {
      Edge edge;
      edge.start = static_cast<int>(i);
      edge.end = static_cast<int>(i) + 1;
      edge.category = token.readings[r].pos;
      edge.features = token.readings[r].features;
      edge.token = static_cast<int>(i);
      edge.reading = static_cast<int>(r);
      add_passive(std::move(edge));
    }
  }

  while (!pending_.empty()) {
    const Edge* passive = pending_.back();
    pending_.pop_back();
    // Pair with stored actives expecting this edge.
    std::size_t active_count = actives_.size();
    for (std::size_t a = 0; a < active_count; ++a) {
      Active active = actives_[a];  // copy: actives_ may grow below
      if (active.end != passive->start) continue;
      const Constituent& slot = active.rule->rhs[active.dot];
      if (!slot_accepts(slot, *passive)) continue;
      active.dot += 1;
      active.end = passive->end;
      active.daughters.push_back(passive);
      if (slot.group >= 0) {
        FeatureSet joined =
            active.groups[static_cast<std::size_t>(slot.group)].unify(
                slot_contribution(slot, *passive));
        if (joined.empty()) continue;
        active.groups[static_cast<std::size_t>(slot.group)] = joined;
      }
      route_active(std::move(active));
    }
    // Start rules whose first slot matches.
    for (const GrammarRule& rule : grammar_.rules()) {
      const Constituent& slot = rule.rhs[0];
      if (!slot_accepts(slot, *passive)) continue;
      Active active;
      active.rule = &rule;
      active.dot = 1;
      active.start = passive->start;
      active.end = passive->end;
      active.daughters = {passive};
      active.groups.assign(static_cast<std::size_t>(rule.group_count),
                           FeatureSet::full());
      if (slot.group >= 0) {
        FeatureSet joined = slot_contribution(slot, *passive);
        if (joined.empty()) continue;
        active.groups[static_cast<std::size_t>(slot.group)] = joined;
      }
      route_active(std::move(active));
    }
    passives_.push_back(passive);
  }

  ParseResult result;
  int n = static_cast<int>(tokens.size());
  for (const Edge& edge : edges_) {
    if (edge.terminal() || edge.start != 0 || edge.end != n) continue;
    if (!options_.roots.empty() &&
        std::find(options_.roots.begin(), options_.roots.end(),
                  edge.category) == options_.roots.end())
      continue;
    result.complete.push_back(&edge);
  }
  // Flatter analyses first (attachment at the outermost level), then the
  // structural signature for a total deterministic order.
  std::sort(result.complete.begin(), result.complete.end(),
            [](const Edge* a, const Edge* b) {
              int da = tree_depth(*a), db = tree_depth(*b);
              if (da != db) return da < db;
              return tree_signature(*a) < tree_signature(*b);
            });

  if (result.complete.empty() && n > 0) {
    std::vector<const Edge*> universe;
    std::set<std::tuple<int, int, std::string>> seen;
    std::set<int> token_done;
    for (const Edge& edge : edges_) {
      if (edge.terminal()) continue;
      auto key = std::make_tuple(edge.start, edge.end,
                                 edge.rule->id + "/" + edge.category);
      if (seen.insert(key).second) universe.push_back(&edge);
    }
    for (const Edge& edge : edges_) {
      if (!edge.terminal()) continue;
      if (token_done.insert(edge.token).second) universe.push_back(&edge);
    }
    result.partial_cover = minimal_covers(n, universe, options_.max_covers);
  }
  return result;
}

namespace {

const std::string kTrivialRuleId = "~token";

const std::string& cover_rule_id(const Edge& edge) {
  return edge.terminal() ? kTrivialRuleId : edge.rule->id;
}

}  // namespace

std::vector<std::vector<const Edge*>> minimal_covers(
    int length, const std::vector<const Edge*>& edges,
    std::size_t max_covers) {
  std::vector<std::vector<const Edge*>> by_start(
      static_cast<std::size_t>(length));
  for (const Edge* edge : edges) {
    if (edge->start < 0 || edge->end > length || edge->start >= edge->end)
      continue;
    by_start[static_cast<std::size_t>(edge->start)].push_back(edge);
  }
  for (auto& bucket : by_start) {
    std::sort(bucket.begin(), bucket.end(), [](const Edge* a, const Edge* b) {
      if (a->end != b->end) return a->end > b->end;  // longest first
      return cover_rule_id(*a) < cover_rule_id(*b);
    });
  }

  constexpr int kInf = 1 << 29;
  std::vector<int> best(static_cast<std::size_t>(length) + 1, kInf);
  best[static_cast<std::size_t>(length)] = 0;
  for (int i = length - 1; i >= 0; --i) {
    for (const Edge* edge : by_start[static_cast<std::size_t>(i)]) {
      int tail = best[static_cast<std::size_t>(edge->end)];
      if (tail != kInf)
        best[static_cast<std::size_t>(i)] =
            std::min(best[static_cast<std::size_t>(i)], tail + 1);
    }
  }
  std::vector<std::vector<const Edge*>> covers;
  if (best[0] == kInf) return covers;

  std::vector<const Edge*> current;
  std::function<bool(int)> walk = [&](int pos) {
    if (pos == length) {
      covers.push_back(current);
      return max_covers != 0 && covers.size() >= max_covers;
    }
    for (const Edge* edge : by_start[static_cast<std::size_t>(pos)]) {
      if (best[static_cast<std::size_t>(edge->end)] + 1 !=
          best[static_cast<std::size_t>(pos)])
        continue;
      current.push_back(edge);
      bool done = walk(edge->end);
      current.pop_back();
      if (done) return true;
    }
    return false;
  };
  walk(0);
  return covers;
}

int tree_depth(const Edge& edge) {
  if (edge.terminal()) return 1;
  int deepest = 0;
  for (const Edge* daughter : edge.daughters)
    deepest = std::max(deepest, tree_depth(*daughter));
  return deepest + 1;
}

std::string tree_signature(const Edge& edge) {
  if (edge.terminal()) {
    return "t" + std::to_string(edge.token) + ":" +
           (edge.reading < 0 ? "XXX" : std::to_string(edge.reading)) + ":" +
           edge.category;
  }
  std::string out = edge.rule->id;
  out += '(';
  for (std::size_t i = 0; i < edge.daughters.size(); ++i) {
    if (i) out += ' ';
    out += tree_signature(*edge.daughters[i]);
  }
  out += ')';
  return out;
}

namespace {

// Walks a parse tree re-narrowing features top down: the refinement of the
// mother flows into the agreement group the LHS belongs to, and each
// daughter is narrowed by its group's refined intersection.
void visit_refined(
    const Edge& edge, FeatureSet refined, const Constituent* slot,
    const std::function<void(const Edge&, FeatureSet, const Constituent*)>&
        visit) {
  visit(edge, refined, slot);
  if (edge.terminal()) return;
  const GrammarRule& rule = *edge.rule;
  std::vector<FeatureSet> groups(static_cast<std::size_t>(rule.group_count),
                                 FeatureSet::full());
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    const Constituent& s = rule.rhs[i];
    if (s.group >= 0)
      groups[static_cast<std::size_t>(s.group)] =
          groups[static_cast<std::size_t>(s.group)].unify(
              slot_contribution(s, *edge.daughters[i]));
  }
  if (rule.lhs_group >= 0)
    groups[static_cast<std::size_t>(rule.lhs_group)] = refined;
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    const Constituent& s = rule.rhs[i];
    FeatureSet daughter_refined = slot_contribution(s, *edge.daughters[i]);
    if (s.group >= 0)
      daughter_refined =
          daughter_refined.unify(groups[static_cast<std::size_t>(s.group)]);
    visit_refined(*edge.daughters[i], daughter_refined, &s, visit);
  }
}

Element token_leaf_element(const Edge& edge, FeatureSet refined,
                           const Constituent* slot,
                           const std::vector<ParseToken>& tokens) {
  const ParseToken& token = tokens[static_cast<std::size_t>(edge.token)];
  std::string name =
      edge.reading < 0
          ? "XXX"
          : token.readings[static_cast<std::size_t>(edge.reading)].pos;
  Element element(name);
  if (edge.reading < 0 && slot != nullptr && slot->category != "XXX")
    element.set_attr("AS", slot->category);
  if (edge.reading >= 0) {
    const TokenReading& reading =
        token.readings[static_cast<std::size_t>(edge.reading)];
    if (!reading.src.empty()) element.set_attr("SRC", reading.src);
    // Prepositions show the case their government resolved to.
    if (reading.pos == "PRP") element.set_attr("CAS", refined.case_label());
  }
  element.add_text(token.surface);
  return element;
}

Element build_tree(const Edge& edge, FeatureSet refined,
                   const Constituent* slot,
                   const std::vector<ParseToken>& tokens) {
  if (edge.terminal()) return token_leaf_element(edge, refined, slot, tokens);
  const GrammarRule& rule = *edge.rule;
  Element element(edge.category);
  for (const auto& attr : rule.out_attrs)
    element.set_attr(attr.name, attr.value);
  if (rule.emit_rule) element.set_attr("RULE", rule.id);
  if (rule.emit_cas) element.set_attr("CAS", refined.case_label());
  if (rule.emit_num) element.set_attr("NUM", refined.number_label());
  if (rule.emit_gen) element.set_attr("GEN", refined.gender_label());

  std::vector<FeatureSet> groups(static_cast<std::size_t>(rule.group_count),
                                 FeatureSet::full());
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    const Constituent& s = rule.rhs[i];
    if (s.group >= 0)
      groups[static_cast<std::size_t>(s.group)] =
          groups[static_cast<std::size_t>(s.group)].unify(
              slot_contribution(s, *edge.daughters[i]));
  }
  if (rule.lhs_group >= 0)
    groups[static_cast<std::size_t>(rule.lhs_group)] = refined;
  for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
    const Constituent& s = rule.rhs[i];
    FeatureSet daughter_refined = slot_contribution(s, *edge.daughters[i]);
    if (s.group >= 0)
      daughter_refined =
          daughter_refined.unify(groups[static_cast<std::size_t>(s.group)]);
    if (i > 0) element.add_text(" ");
    element.add_child(
        Node(build_tree(*edge.daughters[i], daughter_refined, &s, tokens)));
  }
  return element;
}

}  // namespace

Element parse_tree_element(const Edge& root,
                           const std::vector<ParseToken>& tokens) {
  return build_tree(root, root.features, nullptr, tokens);
}

void annotate_sentence(Element& sentence, const ParseResult& result,
                       const std::vector<ParseToken>& tokens,
                       bool all_parses) {
  if (tokens.empty()) return;
  sentence.children().clear();
  if (!result.complete.empty()) {
    if (result.complete.size() > 1)
      sentence.set_attr("PARSES", std::to_string(result.complete.size()));
    if (all_parses && result.complete.size() > 1) {
      for (std::size_t i = 0; i < result.complete.size(); ++i) {
        Element alternative("PARSE");
        alternative.set_attr("N", std::to_string(i + 1));
        alternative.add_child(
            Node(parse_tree_element(*result.complete[i], tokens)));
        sentence.add_child(Node(std::move(alternative)));
      }
    } else {
      Element tree = parse_tree_element(*result.complete[0], tokens);
      if (tree.name() == sentence.name()) {
        // A sentence-level rule: fold the tree into the existing element.
        for (const auto& attr : tree.attributes())
          sentence.set_attr(attr.name, attr.value);
        sentence.children() = std::move(tree.children());
      } else {
        sentence.add_child(Node(std::move(tree)));
      }
    }
    return;
  }
  if (result.partial_cover.empty()) return;
  const auto& cover = result.partial_cover[0];
  sentence.set_attr("PARTIAL", std::to_string(cover.size()));
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (i > 0) sentence.add_text(" ");
    const Edge& fragment = *cover[i];
    if (fragment.terminal()) {
      sentence.add_child(
          Node(tokens[static_cast<std::size_t>(fragment.token)].original));
    } else {
      sentence.add_child(Node(parse_tree_element(fragment, tokens)));
    }
  }
}

std::vector<LexCandidate> derive_lexicon_updates(
    const ParseResult& result, const std::vector<ParseToken>& tokens) {
  std::vector<LexCandidate> candidates;
  auto add = [&candidates](LexCandidate candidate) {
    if (std::find(candidates.begin(), candidates.end(), candidate) ==
        candidates.end())
      candidates.push_back(std::move(candidate));
  };
  for (const Edge* root : result.complete) {
    visit_refined(
        *root, root->features, nullptr,
        [&](const Edge& edge, FeatureSet refined, const Constituent* slot) {
          if (!edge.terminal()) return;
          const ParseToken& token =
              tokens[static_cast<std::size_t>(edge.token)];
          if (edge.reading < 0) {
            if (slot != nullptr)
              add({token.surface, slot->category, refined, "assumption"});
            return;
          }
          const TokenReading& reading =
              token.readings[static_cast<std::size_t>(edge.reading)];
          if (!reading.src.empty() && refined.size() == 1)
            add({token.surface, reading.pos, refined, reading.src});
        });
  }
  return candidates;
}

std::string candidate_line(const LexCandidate& candidate) {
  return candidate.surface + "\t" + candidate.pos + "\t-\t" +
         candidate.features.to_string() + "\tsrc=" + candidate.origin;
}

}  // namespace xdoc
