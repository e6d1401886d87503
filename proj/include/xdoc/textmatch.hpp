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

// Small regex-style matcher for token patterns.
//
// Token recognition needs longest-match semantics (the whole pattern list is
// tried at one position and the longest hit wins) and named groups that turn
// into child elements, including nested ones. Both are awkward to get from
// std::regex, so this is a compact backtracking engine over bytes.
//
// Syntax: literals, '.', '[...]' classes (ranges, leading '^' negation),
// escapes (\d \w \s \. ...), postfix '?' '*' '+' '{m}' '{m,}' '{m,n}',
// alternation '|', groups '(...)' and named groups '(?<NAME>...)'.
// '\w' covers ASCII alphanumerics, '_' and all non-ASCII bytes.

#ifndef XDOC_TEXTMATCH_HPP_
#define XDOC_TEXTMATCH_HPP_

#include <bitset>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xdoc {

class TextPattern {
 public:
  struct GroupMatch {
    std::string name;
    std::size_t start;  // byte offsets into the full input
    std::size_t end;
  };

  // Throws PatternError on bad syntax.
  static TextPattern compile(std::string_view pattern);

  // Longest match anchored at input[pos..]. Returns the match length, or
  // nullopt when nothing matches. Group spans never partially overlap, so
  // callers can rebuild nesting by sorting on (start, -end).
  std::optional<std::size_t> match_at(std::string_view input, std::size_t pos,
                                      std::vector<GroupMatch>* groups) const;

  const std::string& source() const { return source_; }

 public:
  // An empty pattern matches nothing.
  TextPattern() = default;

 private:
  struct Ast;

  std::string source_;
  std::shared_ptr<const Ast> root_;
};

}  // namespace xdoc

#endif  // XDOC_TEXTMATCH_HPP_
