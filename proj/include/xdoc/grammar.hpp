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

// Context-free rules with feature agreement, organized in modules.
//
// Rule syntax, one per line:
//
//   ID: LHS[items]@g -> C1[items]@g C2?xxx ...
//
// '@g' puts the left-hand side or a constituent into agreement group 'g';
// all members of a group must unify (non-empty triple intersection), and the
// mother's features are the intersection of the group the LHS belongs to.
// Constituent items constrain dimensions ("cas=GEN", "cas=DAT|AKK").
// '?xxx' lets an unknown token fill the slot under the assumption that it
// belongs to the slot's category. LHS items may also set constant output
// attributes ("TYPE=FULL"), restrict the emitted feature attributes
// ("emit=cas", "emit=none") or drop the RULE attribute ("norule").

#ifndef XDOC_GRAMMAR_HPP_
#define XDOC_GRAMMAR_HPP_

#include <string>
#include <vector>

#include "xdoc/features.hpp"
#include "xdoc/xml.hpp"

namespace xdoc {

struct Constituent {
  std::string category;
  bool allow_unknown = false;          // accepts XXX under an assumption
  FeatureSet constraint = FeatureSet::full();
  int group = -1;
};

struct GrammarRule {
  std::string id;
  std::string module;
  std::string lhs_category;
  int lhs_group = -1;
  std::vector<Attribute> out_attrs;    // e.g. TYPE=FULL
  bool emit_rule = true;
  bool emit_cas = true, emit_num = true, emit_gen = true;
  std::vector<Constituent> rhs;
  int group_count = 0;
};

struct GrammarModule {
  std::string name;
  bool enabled = true;
  std::vector<GrammarRule> rules;
};

class Grammar {
 public:
  // Union of the enabled modules; duplicate rule ids across the union are
  // rejected (DuplicateRuleId).
  static Grammar assemble(std::vector<GrammarModule> modules);

  const std::vector<GrammarRule>& rules() const { return rules_; }
  const std::vector<std::string>& module_names() const { return modules_; }
  bool empty() const { return rules_.empty(); }

 private:
  std::vector<GrammarRule> rules_;
  std::vector<std::string> modules_;
};

// One module per file; module name = file stem.
GrammarModule load_grammar_module(const std::string& path);
GrammarModule grammar_module_from_string(const std::string& text,
                                         const std::string& name);
Grammar load_grammar(const std::vector<std::string>& paths);

}  // namespace xdoc

#endif  // XDOC_GRAMMAR_HPP_
