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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "xdoc/errors.hpp"
#include "xdoc/grammar.hpp"

using namespace xdoc;

TEST_CASE("the core module loads with the expected rules") {
  Grammar grammar =
      load_grammar({std::string(XDOC_DATA_DIR) + "/grammar/core.gr"});
  std::set<std::string> ids;
  for (const auto& rule : grammar.rules()) ids.insert(rule.id);
  for (const char* id : {"NP1", "NP2", "NP3", "NP4", "NPC1", "NPC3", "PP1"})
    CHECK_MESSAGE(ids.count(id) == 1, "missing rule ", id);

  for (const auto& rule : grammar.rules()) {
    if (rule.id == "NP3") {
      REQUIRE(rule.rhs.size() == 3);
      CHECK(rule.rhs[1].category == "ADJ");
      CHECK(rule.rhs[1].allow_unknown);
      CHECK(rule.lhs_group >= 0);
    }
    if (rule.id == "NPC1") {
      REQUIRE(rule.rhs.size() == 2);
      CHECK(rule.rhs[1].group == -1);
      CHECK(rule.rhs[1].constraint ==
            FeatureSet::any_case({Case::GEN}));
    }
    if (rule.id == "PP1") {
      CHECK_FALSE(rule.emit_rule);
      CHECK(rule.emit_cas);
      CHECK_FALSE(rule.emit_num);
    }
  }
}

TEST_CASE("modules combine; the telegraphic module adds sentence rules") {
  Grammar grammar =
      load_grammar({std::string(XDOC_DATA_DIR) + "/grammar/core.gr",
                    std::string(XDOC_DATA_DIR) + "/grammar/telegraphic.gr"});
  std::set<std::string> ids;
  for (const auto& rule : grammar.rules()) ids.insert(rule.id);
  CHECK(ids.count("NP2") == 1);
  CHECK(ids.count("TS1") == 1);
  CHECK(grammar.module_names().size() == 2);
}

TEST_CASE("duplicate rule ids are rejected across modules") {
  GrammarModule a = grammar_module_from_string("NP1: NP -> N\n", "a");
  GrammarModule b = grammar_module_from_string("NP1: NP -> DETD N\n", "b");
  CHECK_THROWS_AS(Grammar::assemble({a, b}), DuplicateRuleId);
  CHECK_THROWS_AS(
      grammar_module_from_string("X1: NP -> N\nX1: NP -> N N\n", "m"),
      DuplicateRuleId);
}

TEST_CASE("disabled modules are skipped") {
  GrammarModule a = grammar_module_from_string("NP1: NP -> N\n", "a");
  GrammarModule b = grammar_module_from_string("NP9: NP -> DETD N\n", "b");
  b.enabled = false;
  Grammar grammar = Grammar::assemble({a, b});
  CHECK(grammar.rules().size() == 1);
}

TEST_CASE("format errors") {
  CHECK_THROWS_AS(grammar_module_from_string("NP1 NP -> N\n", "m"),
                  GrammarFormatError);
  CHECK_THROWS_AS(grammar_module_from_string("NP1: NP N\n", "m"),
                  GrammarFormatError);
  CHECK_THROWS_AS(grammar_module_from_string("NP1: NP ->\n", "m"),
                  GrammarFormatError);
  CHECK_THROWS_AS(grammar_module_from_string("NP1: NP -> N[cas=XX]\n", "m"),
                  GrammarFormatError);
  CHECK_THROWS_AS(grammar_module_from_string("NP1: NP -> N[size=2]\n", "m"),
                  GrammarFormatError);
  // Agreement groups need at least two participants.
  CHECK_THROWS_AS(grammar_module_from_string("NP1: NP -> N@a\n", "m"),
                  GrammarFormatError);
  CHECK_THROWS_AS(grammar_module_from_string("NP1: NP@a -> N@a DETD@b\n", "m"),
                  GrammarFormatError);
}

TEST_CASE("comments and blank lines are ignored") {
  GrammarModule module = grammar_module_from_string(
      "# heading\n\nNP1: NP -> N\n  # indented comment\n", "m");
  CHECK(module.rules.size() == 1);
}
