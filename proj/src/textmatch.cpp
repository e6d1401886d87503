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

#include "xdoc/textmatch.hpp"

#include <functional>
#include <limits>

#include "xdoc/errors.hpp"

namespace xdoc {

namespace {

using ByteSet = std::bitset<256>;

enum class NodeKind { kChar, kClass, kSeq, kAlt, kRepeat, kGroup };

struct Node {
  explicit Node(NodeKind k) : kind(k) {}

  NodeKind kind;
  char ch = 0;                      // kChar
  ByteSet bytes;                    // kClass
  std::vector<Node> children;       // kSeq, kAlt; kRepeat/kGroup use [0]
  std::size_t min = 0, max = 0;     // kRepeat (max == SIZE_MAX: unbounded)
  std::string name;                 // kGroup ("" = plain parentheses)
};

ByteSet class_for_escape(char c, bool* known) {
  ByteSet set;
  *known = true;
  switch (c) {
    case 'd':
      for (int b = '0'; b <= '9'; ++b) set.set(static_cast<std::size_t>(b));
      return set;
    case 'w':
      for (int b = 0; b < 256; ++b) {
        bool word = (b >= 'a' && b <= 'z') || (b >= 'A' && b <= 'Z') ||
                    (b >= '0' && b <= '9') || b == '_' || b >= 0x80;
        if (word) set.set(static_cast<std::size_t>(b));
      }
      return set;
    case 's':
      set.set(' ');
      set.set('\t');
      set.set('\n');
      set.set('\r');
      return set;
    default:
      *known = false;
      return set;
  }
}

class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : text_(text) {}

  Node parse() {
    Node node = parse_alt();
    if (pos_ != text_.size()) fail("unexpected ')'");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& reason) {
    throw PatternError("pattern '" + std::string(text_) + "' at offset " +
                       std::to_string(pos_) + ": " + reason);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }

  Node parse_alt() {
    Node alt(NodeKind::kAlt);
    alt.children.push_back(parse_seq());
    while (!eof() && peek() == '|') {
      ++pos_;
      alt.children.push_back(parse_seq());
    }
    if (alt.children.size() == 1) return std::move(alt.children[0]);
    return alt;
  }

  Node parse_seq() {
    Node seq(NodeKind::kSeq);
    while (!eof() && peek() != '|' && peek() != ')')
      seq.children.push_back(parse_repeat());
    return seq;
  }

  Node parse_repeat() {
    Node atom = parse_atom();
    for (;;) {
      if (eof()) return atom;
      std::size_t min, max;
      switch (peek()) {
        case '?': min = 0; max = 1; ++pos_; break;
        case '*': min = 0; max = std::numeric_limits<std::size_t>::max();
                  ++pos_; break;
        case '+': min = 1; max = std::numeric_limits<std::size_t>::max();
                  ++pos_; break;
        case '{': parse_bounds(&min, &max); break;
        default: return atom;
      }
      Node repeat(NodeKind::kRepeat);
      repeat.min = min;
      repeat.max = max;
      repeat.children.push_back(std::move(atom));
      atom = std::move(repeat);
    }
  }

  void parse_bounds(std::size_t* min, std::size_t* max) {
    ++pos_;  // '{'
    *min = parse_int();
    if (!eof() && peek() == ',') {
      ++pos_;
      if (!eof() && peek() == '}') {
        *max = std::numeric_limits<std::size_t>::max();
      } else {
        *max = parse_int();
      }
    } else {
      *max = *min;
    }
    if (eof() || take() != '}') fail("expected '}'");
    if (*max < *min) fail("bad repetition bounds");
  }

  std::size_t parse_int() {
    if (eof() || peek() < '0' || peek() > '9') fail("expected digit");
    std::size_t value = 0;
    while (!eof() && peek() >= '0' && peek() <= '9')
      value = value * 10 + static_cast<std::size_t>(take() - '0');
    return value;
  }

  Node parse_atom() {
    if (eof()) fail("expected atom");
    char c = take();
    switch (c) {
      case '(': return parse_group();
      case '[': return parse_class();
      case '.': {
        Node node(NodeKind::kClass);
        node.bytes.set();
        node.bytes.reset('\n');
        return node;
      }
      case '\\': return parse_escape();
      case '*': case '+': case '?': case '{': case '}': case ')':
        fail(std::string("misplaced '") + c + "'");
      default: {
        Node node(NodeKind::kChar);
        node.ch = c;
        return node;
      }
    }
  }

  Node parse_group() {
    Node group(NodeKind::kGroup);
    if (!eof() && peek() == '?') {
      ++pos_;
      if (eof() || take() != '<') fail("expected '<' after '(?'");
      while (!eof() && peek() != '>') group.name += take();
      if (eof()) fail("unterminated group name");
      ++pos_;  // '>'
      if (group.name.empty()) fail("empty group name");
    }
    group.children.push_back(parse_alt());
    if (eof() || take() != ')') fail("expected ')'");
    return group;
  }

  Node parse_escape() {
    if (eof()) fail("dangling escape");
    char c = take();
    bool known = false;
    ByteSet set = class_for_escape(c, &known);
    if (known) {
      Node node(NodeKind::kClass);
      node.bytes = set;
      return node;
    }
    Node node(NodeKind::kChar);
    switch (c) {
      case 'n': node.ch = '\n'; break;
      case 't': node.ch = '\t'; break;
      case 'r': node.ch = '\r'; break;
      default: node.ch = c;  // \. \\ \[ and friends
    }
    return node;
  }

  Node parse_class() {
    Node node(NodeKind::kClass);
    bool negate = false;
    if (!eof() && peek() == '^') {
      negate = true;
      ++pos_;
    }
    bool first = true;
    while (!eof() && (peek() != ']' || first)) {
      first = false;
      unsigned char lo;
      if (peek() == '\\') {
        ++pos_;
        if (eof()) fail("dangling escape in class");
        char c = take();
        bool known = false;
        ByteSet set = class_for_escape(c, &known);
        if (known) {
          node.bytes |= set;
          continue;
        }
        lo = static_cast<unsigned char>(c == 'n' ? '\n'
                                        : c == 't' ? '\t'
                                        : c == 'r' ? '\r' : c);
      } else {
        lo = static_cast<unsigned char>(take());
      }
      if (!eof() && peek() == '-' && pos_ + 1 < text_.size() &&
          text_[pos_ + 1] != ']') {
        ++pos_;
        unsigned char hi = static_cast<unsigned char>(take());
        if (hi == '\\') {
          if (eof()) fail("dangling escape in class");
          hi = static_cast<unsigned char>(take());
        }
        if (hi < lo) fail("bad class range");
        for (int b = lo; b <= hi; ++b) node.bytes.set(static_cast<std::size_t>(b));
      } else {
        node.bytes.set(lo);
      }
    }
    if (eof()) fail("unterminated class");
    ++pos_;  // ']'
    if (negate) node.bytes.flip();
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Exhaustive backtracking search for the longest match. Exploration order is
// greedy (repeats expand first, alternatives left to right), and among
// matches of equal length the first one found wins, so captures are
// deterministic. A step budget guards against pathological patterns.
class Matcher {
 public:
  Matcher(std::string_view input, std::size_t start)
      : input_(input), start_(start) {}

  std::optional<std::size_t> run(const Node& root,
                                 std::vector<TextPattern::GroupMatch>* groups) {
    match(root, start_, [this](std::size_t end) {
      if (!best_ || end > *best_) {
        best_ = end;
        best_caps_ = caps_;
      }
    });
    if (!best_) return std::nullopt;
    if (groups) *groups = std::move(best_caps_);
    return *best_ - start_;
  }

 private:
  using Cont = std::function<void(std::size_t)>;

  void match(const Node& node, std::size_t pos, const Cont& k) {
    if (++steps_ > kStepBudget)
      throw PatternError("pattern too complex for input");
    switch (node.kind) {
      case NodeKind::kChar:
        if (pos < input_.size() && input_[pos] == node.ch) k(pos + 1);
        return;
      case NodeKind::kClass:
        if (pos < input_.size() &&
            node.bytes[static_cast<unsigned char>(input_[pos])])
          k(pos + 1);
        return;
      case NodeKind::kSeq:
        match_seq(node, 0, pos, k);
        return;
      case NodeKind::kAlt:
        for (const Node& child : node.children) match(child, pos, k);
        return;
      case NodeKind::kRepeat:
        match_repeat(node, 0, pos, k);
        return;
      case NodeKind::kGroup: {
        match(node.children[0], pos, [&](std::size_t end) {
          if (!node.name.empty()) {
            caps_.push_back({node.name, pos, end});
            k(end);
            caps_.pop_back();
          } else {
            k(end);
          }
        });
        return;
      }
    }
  }

  void match_seq(const Node& node, std::size_t index, std::size_t pos,
                 const Cont& k) {
    if (index == node.children.size()) {
      k(pos);
      return;
    }
    match(node.children[index], pos,
          [&](std::size_t end) { match_seq(node, index + 1, end, k); });
  }

  void match_repeat(const Node& node, std::size_t count, std::size_t pos,
                    const Cont& k) {
    if (count < node.max) {
      match(node.children[0], pos, [&](std::size_t end) {
        if (end == pos && count >= node.min) return;  // empty-loop guard
        match_repeat(node, count + 1, end, k);
      });
    }
    if (count >= node.min) k(pos);
  }

  static constexpr std::size_t kStepBudget = 2'000'000;

  std::string_view input_;
  std::size_t start_;
  std::size_t steps_ = 0;
  std::vector<TextPattern::GroupMatch> caps_;
  std::optional<std::size_t> best_;
  std::vector<TextPattern::GroupMatch> best_caps_;
};

}  // namespace

struct TextPattern::Ast {
  Node root;
};

TextPattern TextPattern::compile(std::string_view pattern) {
  TextPattern result;
  result.source_ = std::string(pattern);
  result.root_ = std::make_shared<Ast>(Ast{PatternParser(pattern).parse()});
  return result;
}

std::optional<std::size_t> TextPattern::match_at(
    std::string_view input, std::size_t pos,
    std::vector<GroupMatch>* groups) const {
  if (!root_) return std::nullopt;
  Matcher matcher(input, pos);
  auto len = matcher.run(root_->root, groups);
  if (len && *len == 0) return std::nullopt;  // empty matches are useless here
  return len;
}

}  // namespace xdoc
