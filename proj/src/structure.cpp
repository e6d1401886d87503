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

#include "xdoc/structure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "xdoc/errors.hpp"

namespace xdoc {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

// Decodes the UTF-8 codepoint at `pos`; returns its byte length, 0 on
// malformed input.
std::size_t decode_utf8(std::string_view text, std::size_t pos,
                        uint32_t* codepoint) {
  if (pos >= text.size()) return 0;
  unsigned char b0 = static_cast<unsigned char>(text[pos]);
  std::size_t len;
  uint32_t cp;
  if (b0 < 0x80) {
    *codepoint = b0;
    return 1;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (pos + len > text.size()) return 0;
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings and surrogates.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
      cp > 0x10FFFF)
    return 0;
  *codepoint = cp;
  return len;
}

bool letter_codepoint(uint32_t cp) {
  if (cp < 0x80)
    return std::isalnum(static_cast<int>(cp)) != 0;
  // Latin-1 supplement and Latin Extended-A/B letters (umlauts, eszett, ...).
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  return false;
}

// Length in bytes of the word-character at pos, 0 if it is not one.
std::size_t word_char_len(std::string_view text, std::size_t pos) {
  uint32_t cp;
  std::size_t len = decode_utf8(text, pos, &cp);
  if (len == 0) return 0;
  return letter_codepoint(cp) ? len : 0;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

void AbbreviationLexicon::add(std::string entry) {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), entry,
      [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
      });
  if (it == entries.end() || *it != entry) entries.insert(it, std::move(entry));
}

PatternSet load_patterns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pattern file: " + path);
  PatternSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty() || view[0] == '#') continue;
    if (view.rfind("!table", 0) == 0) {
      std::istringstream parts{std::string(view.substr(6))};
      std::string name;
      if (!(parts >> name))
        throw FormatError(path, lineno, "!table needs a name");
      auto& table = set.tables[name];
      std::string pair;
      while (parts >> pair) {
        auto eq = pair.find('=');
        if (eq == std::string::npos)
          throw FormatError(path, lineno, "table entry must be key=value");
        table[pair.substr(0, eq)] = pair.substr(eq + 1);
      }
      continue;
    }
    auto fields = split_fields(view, '\t');
    if (fields.size() < 2)
      throw FormatError(path, lineno, "expected NAME<TAB>pattern");
    TokenPattern pattern;
    pattern.name = std::string(trim(fields[0]));
    if (!valid_xml_name(pattern.name))
      throw FormatError(path, lineno, "bad pattern name '" + pattern.name + "'");
    try {
      pattern.matcher = TextPattern::compile(trim(fields[1]));
    } catch (const PatternError& e) {
      throw FormatError(path, lineno, e.what());
    }
    if (fields.size() >= 3) {
      for (auto spec : split_fields(trim(fields[2]), ',')) {
        spec = trim(spec);
        if (spec.empty()) continue;
        auto eq = spec.find('=');
        if (eq == std::string_view::npos)
          throw FormatError(path, lineno, "attribute rule must be Attr=GROUP");
        AttrRule rule;
        rule.attr = std::string(spec.substr(0, eq));
        std::string_view rhs = spec.substr(eq + 1);
        auto at = rhs.find('@');
        if (at == std::string_view::npos) {
          rule.group = std::string(rhs);
        } else {
          rule.group = std::string(rhs.substr(0, at));
          rule.table = std::string(rhs.substr(at + 1));
        }
        pattern.attrs.push_back(std::move(rule));
      }
    }
    set.patterns.push_back(std::move(pattern));
  }
  return set;
}

AbbreviationLexicon load_abbreviations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open abbreviation lexicon: " + path);
  AbbreviationLexicon lexicon;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty() || view[0] == '#') continue;
    if (view.find('.') == std::string_view::npos)
      throw FormatError(path, lineno,
                        "abbreviation entry must contain a period");
    lexicon.add(std::string(view));
  }
  return lexicon;
}

CharMap load_charmap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open character map: " + path);
  CharMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (trim(view).empty() || trim(view)[0] == '#') continue;
    auto fields = split_fields(view, '\t');
    if (fields.size() != 2)
      throw FormatError(path, lineno, "expected from<TAB>to");
    map[std::string(fields[0])] = std::string(fields[1]);
  }
  return map;
}

std::string normalize_input(std::string_view raw, const CharMap& map) {
  std::string out;
  out.reserve(raw.size());
  std::size_t pos = 0;
  while (pos < raw.size()) {
    uint32_t cp;
    std::size_t len = decode_utf8(raw, pos, &cp);
    if (len == 0) throw InvalidEncoding(pos);
    std::string_view unit = raw.substr(pos, len);
    pos += len;
    if (cp == '\r') {
      if (pos < raw.size() && raw[pos] == '\n') continue;  // CRLF -> LF
      out += '\n';
      continue;
    }
    if (cp < 0x20 && cp != '\n' && cp != '\t') continue;
    if (cp == 0x7F) continue;
    if (!map.empty()) {
      auto it = map.find(std::string(unit));
      if (it != map.end()) {
        out += it->second;
        continue;
      }
    }
    out += unit;
  }
  return out;
}

namespace {

// Appends tokens and single-space separators to an element.
class TokenEmitter {
 public:
  explicit TokenEmitter(Element& target) : target_(target) {}

  void separator() { pending_space_ = !target_.children().empty(); }

  void text_token(std::string_view text) {
    flush();
    target_.add_text(std::string(text));
  }

  void element_token(Element element) {
    flush();
    target_.add_child(Node(std::move(element)));
  }

 private:
  void flush() {
    if (pending_space_) target_.add_text(" ");
    pending_space_ = false;
  }

  Element& target_;
  bool pending_space_ = false;
};

// Tokenizes a segment without patterns or abbreviations: words stay text,
// punctuation becomes IP. Used inside pattern matches, between the named
// groups.
void emit_plain(std::string_view text, std::size_t begin, std::size_t end,
                TokenEmitter& out) {
  std::size_t pos = begin;
  while (pos < end) {
    if (is_ascii_space(text[pos])) {
      out.separator();
      while (pos < end && is_ascii_space(text[pos])) ++pos;
      continue;
    }
    std::size_t len = word_char_len(text, pos);
    if (len > 0) {
      std::size_t start = pos;
      while (pos < end && (len = word_char_len(text, pos)) > 0) pos += len;
      out.text_token(text.substr(start, pos - start));
      continue;
    }
    uint32_t cp;
    len = decode_utf8(text, pos, &cp);
    if (len == 0) len = 1;
    Element ip("IP");
    ip.add_text(std::string(text.substr(pos, len)));
    out.element_token(std::move(ip));
    pos += len;
  }
}

struct GroupTree {
  const TextPattern::GroupMatch* group;
  std::vector<GroupTree> children;
};

// Rebuilds group nesting from spans; input sorted by (start, -end).
std::vector<GroupTree> nest_groups(
    const std::vector<TextPattern::GroupMatch>& groups) {
  std::vector<const TextPattern::GroupMatch*> sorted;
  for (const auto& g : groups) sorted.push_back(&g);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto* a, const auto* b) {
                     if (a->start != b->start) return a->start < b->start;
                     return a->end > b->end;
                   });
  std::vector<GroupTree> roots;
  std::vector<GroupTree*> stack;
  for (const auto* g : sorted) {
    while (!stack.empty() && g->start >= stack.back()->group->end)
      stack.pop_back();
    GroupTree node{g, {}};
    if (stack.empty()) {
      roots.push_back(std::move(node));
      stack.push_back(&roots.back());
    } else {
      stack.back()->children.push_back(std::move(node));
      stack.push_back(&stack.back()->children.back());
    }
  }
  return roots;
}

void build_group_children(std::string_view text, std::size_t begin,
                          std::size_t end,
                          const std::vector<GroupTree>& groups,
                          Element& target) {
  TokenEmitter out(target);
  std::size_t pos = begin;
  for (const auto& g : groups) {
    if (g.group->start > pos) emit_plain(text, pos, g.group->start, out);
    Element child(g.group->name);
    if (g.children.empty()) {
      child.add_text(
          std::string(text.substr(g.group->start, g.group->end - g.group->start)));
    } else {
      build_group_children(text, g.group->start, g.group->end, g.children,
                           child);
    }
    out.element_token(std::move(child));
    pos = g.group->end;
  }
  if (pos < end) emit_plain(text, pos, end, out);
}

Element build_pattern_element(std::string_view text, std::size_t start,
                              std::size_t len, const TokenPattern& pattern,
                              const PatternSet& set,
                              const std::vector<TextPattern::GroupMatch>& groups) {
  Element element(pattern.name);
  for (const auto& rule : pattern.attrs) {
    const TextPattern::GroupMatch* found = nullptr;
    for (const auto& g : groups) {
      if (g.name == rule.group) {
        found = &g;
        break;
      }
    }
    if (!found) continue;
    std::string value(text.substr(found->start, found->end - found->start));
    if (!rule.table.empty()) {
      auto table = set.tables.find(rule.table);
      if (table != set.tables.end()) {
        auto hit = table->second.find(value);
        if (hit != table->second.end()) value = hit->second;
      }
    }
    element.set_attr(rule.attr, value);
  }
  if (groups.empty()) {
    // Atomic pattern: the whole match is the token text.
    element.add_text(std::string(text.substr(start, len)));
  } else {
    build_group_children(text, start, start + len, nest_groups(groups),
                         element);
  }
  return element;
}

bool word_boundary(std::string_view text, std::size_t pos) {
  return pos >= text.size() || word_char_len(text, pos) == 0;
}

}  // namespace

AnnotatedDocument tokenize(std::string_view text,
                           const StructureConfig& config) {
  AnnotatedDocument doc{Element("DOC")};
  TokenEmitter out(doc.root);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (is_ascii_space(text[pos])) {
      out.separator();
      while (pos < text.size() && is_ascii_space(text[pos])) ++pos;
      continue;
    }
    // 1. Token patterns: longest match, declaration order breaks ties.
    {
      const TokenPattern* best = nullptr;
      std::size_t best_len = 0;
      std::vector<TextPattern::GroupMatch> best_groups;
      for (const auto& pattern : config.patterns.patterns) {
        std::vector<TextPattern::GroupMatch> groups;
        auto len = pattern.matcher.match_at(text, pos, &groups);
        if (len && *len > best_len) {
          best = &pattern;
          best_len = *len;
          best_groups = std::move(groups);
        }
      }
      if (best) {
        out.element_token(build_pattern_element(text, pos, best_len, *best,
                                                config.patterns, best_groups));
        pos += best_len;
        continue;
      }
    }
    // 2. Abbreviation lexicon (entries sorted longest first).
    {
      const std::string* hit = nullptr;
      for (const auto& entry : config.abbreviations.entries) {
        if (text.compare(pos, entry.size(), entry) == 0 &&
            word_boundary(text, pos + entry.size())) {
          hit = &entry;
          break;
        }
      }
      if (hit) {
        Element abbr("ABBR");
        abbr.add_text(*hit);
        out.element_token(std::move(abbr));
        pos += hit->size();
        continue;
      }
    }
    // 3. Numbers: keep internal periods/commas ("3.14" is one token).
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      while (pos + 1 < text.size() &&
             (text[pos] == '.' || text[pos] == ',') &&
             std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
        ++pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
      }
      // Mixed alphanumerics ("1982a", material codes) continue as a word.
      std::size_t len;
      while (pos < text.size() && (len = word_char_len(text, pos)) > 0)
        pos += len;
      out.text_token(text.substr(start, pos - start));
      continue;
    }
    // 4. Maximal alphanumeric runs; '-' and '\'' are token-internal when
    // both neighbours are word characters.
    if (word_char_len(text, pos) > 0) {
      std::size_t start = pos;
      for (;;) {
        std::size_t len;
        while (pos < text.size() && (len = word_char_len(text, pos)) > 0)
          pos += len;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '\'') &&
            word_char_len(text, pos + 1) > 0) {
          ++pos;
          continue;
        }
        break;
      }
      out.text_token(text.substr(start, pos - start));
      continue;
    }
    // 5. Single punctuation character.
    uint32_t cp;
    std::size_t len = decode_utf8(text, pos, &cp);
    if (len == 0) len = 1;
    Element ip("IP");
    ip.add_text(std::string(text.substr(pos, len)));
    out.element_token(std::move(ip));
    pos += len;
  }
  return doc;
}

namespace {

bool whitespace_only(const Node& node) {
  if (!node.is_text()) return false;
  const std::string& t = node.text();
  return std::all_of(t.begin(), t.end(), is_ascii_space);
}

}  // namespace

AnnotatedDocument detect_sentences(AnnotatedDocument doc,
                                   const StructureConfig& config) {
  Element& root = doc.root;
  for (const auto& child : root.children())
    if (child.is_element() && child.element().name() == "S")
      return doc;  // already segmented

  struct Range {
    std::size_t from, to;
    bool complete;
  };
  std::vector<Range> ranges;
  std::ptrdiff_t run_start = -1;
  std::size_t last_token = 0;
  auto& kids = root.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (whitespace_only(kids[i])) continue;
    if (run_start < 0) run_start = static_cast<std::ptrdiff_t>(i);
    last_token = i;
    if (kids[i].is_element() && kids[i].element().name() == "IP") {
      Element& ip = kids[i].element();
      if (config.sentence_terminals.count(text_content(ip))) {
        ip.set_attr("SENT", "end");
        ranges.push_back({static_cast<std::size_t>(run_start), i, true});
        run_start = -1;
      }
    }
  }
  if (run_start >= 0)
    ranges.push_back({static_cast<std::size_t>(run_start), last_token, false});

  for (auto it = ranges.rbegin(); it != ranges.rend(); ++it) {
    Element& s = wrap_span(root, it->from, it->to, "S");
    if (!it->complete) s.set_attr("COMPLETE", "no");
  }
  return doc;
}

}  // namespace xdoc
