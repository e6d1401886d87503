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

#include "xdoc/errors.hpp"
#include "xdoc/textmatch.hpp"

using namespace xdoc;

namespace {

std::optional<std::size_t> match(const std::string& pattern,
                                 const std::string& input,
                                 std::size_t pos = 0) {
  return TextPattern::compile(pattern).match_at(input, pos, nullptr);
}

}  // namespace

TEST_CASE("literals and classes") {
  CHECK(match("abc", "abcdef") == 3);
  CHECK_FALSE(match("abc", "abd"));
  CHECK(match("[A-Z]{2}[0-9]{3}", "CC333G") == 5);
  CHECK(match("[^0-9]+", "ab1") == 2);
  CHECK(match("a.c", "axc") == 3);
  CHECK_FALSE(match("a.c", "a\nc"));
  CHECK(match("\\d+", "1982x") == 4);
  CHECK(match("\\w+", "Körper!") == 7);  // umlaut bytes are word bytes
  CHECK(match("a\\.b", "a.b") == 3);
  CHECK_FALSE(match("a\\.b", "axb"));
}

TEST_CASE("repetition") {
  CHECK(match("ab?c", "ac") == 2);
  CHECK(match("ab?c", "abc") == 3);
  CHECK(match("a*", "aaab") == 3);
  CHECK_FALSE(match("a+", "b"));
  CHECK(match("[0-9]{2,4}", "12345") == 4);
  CHECK_FALSE(match("[0-9]{2,4}", "1"));
  CHECK(match("x{2}", "xx") == 2);
  CHECK(match("(ab)+", "ababab") == 6);
}

TEST_CASE("the longest alternative wins") {
  CHECK(match("a|ab", "ab") == 2);
  CHECK(match("ab|a", "ab") == 2);
  CHECK(match("GS|GSX", "GSX") == 3);
}

TEST_CASE("anchored matching at a position") {
  CHECK(match("b+", "abbb", 1) == 3);
  CHECK_FALSE(match("b+", "abbb", 0));
}

TEST_CASE("named groups capture, including nested ones") {
  TextPattern pattern = TextPattern::compile(
      "(?<NORM>(?<N>EN|DIN) (?<NR>[0-9]+)) - (?<MAT-ID>[A-Z0-9]+)");
  std::vector<TextPattern::GroupMatch> groups;
  std::string input = "EN 1982 - CC333G rest";
  auto length = pattern.match_at(input, 0, &groups);
  REQUIRE(length == 16);
  REQUIRE(groups.size() == 4);
  auto find = [&](const std::string& name) -> const TextPattern::GroupMatch& {
    for (const auto& g : groups)
      if (g.name == name) return g;
    FAIL("missing group ", name);
    return groups[0];
  };
  CHECK(input.substr(find("NORM").start,
                     find("NORM").end - find("NORM").start) == "EN 1982");
  CHECK(input.substr(find("N").start, find("N").end - find("N").start) ==
        "EN");
  CHECK(input.substr(find("NR").start, find("NR").end - find("NR").start) ==
        "1982");
  CHECK(input.substr(find("MAT-ID").start,
                     find("MAT-ID").end - find("MAT-ID").start) == "CC333G");
}

TEST_CASE("no match and empty match both come back empty") {
  CHECK_FALSE(match("x", "y"));
  CHECK_FALSE(match("a*", "bbb"));  // would be empty
}

TEST_CASE("syntax errors") {
  CHECK_THROWS_AS(TextPattern::compile("a["), PatternError);
  CHECK_THROWS_AS(TextPattern::compile("a(b"), PatternError);
  CHECK_THROWS_AS(TextPattern::compile("*a"), PatternError);
  CHECK_THROWS_AS(TextPattern::compile("a{3,1}"), PatternError);
  CHECK_THROWS_AS(TextPattern::compile("(?<>x)"), PatternError);
  CHECK_THROWS_AS(TextPattern::compile("a)b"), PatternError);
}
