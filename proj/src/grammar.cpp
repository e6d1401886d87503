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

#include "xdoc/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "xdoc/errors.hpp"

namespace xdoc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

// Splits "CAT[items]@g" into its three parts; bracket and group optional.
struct SymbolParts {
  std::string_view category;
  std::string_view items;
  std::string_view group;
  bool unknown_flag = false;
};

SymbolParts split_symbol(std::string_view text, const std::string& file,
                         std::size_t lineno) {
  SymbolParts parts;
  auto bracket = text.find('[');
  auto at = text.find('@');
  std::size_t category_end = std::min(
      bracket == std::string_view::npos ? text.size() : bracket,
      at == std::string_view::npos ? text.size() : at);
  parts.category = text.substr(0, category_end);
  if (bracket != std::string_view::npos) {
    auto close = text.find(']', bracket);
    if (close == std::string_view::npos)
      throw GrammarFormatError(file, lineno, "unterminated '['");
    parts.items = text.substr(bracket + 1, close - bracket - 1);
    at = text.find('@', close);
  }
  if (at != std::string_view::npos) {
    parts.group = text.substr(at + 1);
    if (parts.group.empty())
      throw GrammarFormatError(file, lineno, "empty agreement group tag");
  }
  // '?xxx' marker sits on the category.
  constexpr std::string_view kUnknown = "?xxx";
  if (parts.category.size() > kUnknown.size() &&
      parts.category.substr(parts.category.size() - kUnknown.size()) ==
          kUnknown) {
    parts.unknown_flag = true;
    parts.category.remove_suffix(kUnknown.size());
  }
  return parts;
}

FeatureSet dimension_constraint(std::string_view key, std::string_view values,
                                const std::string& file, std::size_t lineno) {
  FeatureSet constraint;
  for (auto value : split(values, '|')) {
    if (key == "cas") {
      Case c;
      if (!parse_case(value, &c))
        throw GrammarFormatError(file, lineno,
                                 "bad case '" + std::string(value) + "'");
      constraint = constraint.unite(FeatureSet::any_case({c}));
    } else if (key == "num") {
      Number n;
      if (!parse_number(value, &n))
        throw GrammarFormatError(file, lineno,
                                 "bad number '" + std::string(value) + "'");
      constraint = constraint.unite(FeatureSet::any_number({n}));
    } else {
      Gender g;
      if (!parse_gender(value, &g))
        throw GrammarFormatError(file, lineno,
                                 "bad gender '" + std::string(value) + "'");
      constraint = constraint.unite(FeatureSet::any_gender({g}));
    }
  }
  return constraint;
}

int group_index(std::map<std::string, int>* groups, std::string_view name) {
  auto [it, inserted] =
      groups->emplace(std::string(name), static_cast<int>(groups->size()));
  (void)inserted;
  return it->second;
}

GrammarRule parse_rule(std::string_view line, const std::string& file,
                       std::size_t lineno) {
  auto colon = line.find(':');
  if (colon == std::string_view::npos)
    throw GrammarFormatError(file, lineno, "expected 'ID: LHS -> RHS'");
  GrammarRule rule;
  rule.id = std::string(trim(line.substr(0, colon)));
  if (rule.id.empty())
    throw GrammarFormatError(file, lineno, "empty rule id");
  auto arrow = line.find("->", colon);
  if (arrow == std::string_view::npos)
    throw GrammarFormatError(file, lineno, "missing '->'");

  std::map<std::string, int> groups;
  SymbolParts lhs =
      split_symbol(trim(line.substr(colon + 1, arrow - colon - 1)), file,
                   lineno);
  rule.lhs_category = std::string(lhs.category);
  if (!valid_xml_name(rule.lhs_category))
    throw GrammarFormatError(file, lineno,
                             "bad LHS category '" + rule.lhs_category + "'");
  if (!lhs.group.empty()) rule.lhs_group = group_index(&groups, lhs.group);
  for (auto item : split(lhs.items, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "norule") {
      rule.emit_rule = false;
      continue;
    }
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw GrammarFormatError(file, lineno,
                               "bad LHS item '" + std::string(item) + "'");
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    if (key == "emit") {
      rule.emit_cas = rule.emit_num = rule.emit_gen = false;
      for (auto dim : split(value, '+')) {
        if (dim == "cas") rule.emit_cas = true;
        else if (dim == "num") rule.emit_num = true;
        else if (dim == "gen") rule.emit_gen = true;
        else if (dim == "none") {}
        else
          throw GrammarFormatError(file, lineno,
                                   "bad emit spec '" + std::string(dim) + "'");
      }
    } else {
      rule.out_attrs.push_back({std::string(key), std::string(value)});
    }
  }

  std::string_view rhs_text = trim(line.substr(arrow + 2));
  std::istringstream symbols{std::string(rhs_text)};
  std::string symbol;
  while (symbols >> symbol) {
    SymbolParts parts = split_symbol(symbol, file, lineno);
    Constituent constituent;
    constituent.category = std::string(parts.category);
    if (!valid_xml_name(constituent.category))
      throw GrammarFormatError(
          file, lineno, "bad category '" + constituent.category + "'");
    constituent.allow_unknown = parts.unknown_flag;
    for (auto item : split(parts.items, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw GrammarFormatError(
            file, lineno, "bad constraint '" + std::string(item) + "'");
      std::string_view key = item.substr(0, eq);
      if (key != "cas" && key != "num" && key != "gen")
        throw GrammarFormatError(
            file, lineno, "bad constraint key '" + std::string(key) + "'");
      constituent.constraint = constituent.constraint.unify(
          dimension_constraint(key, item.substr(eq + 1), file, lineno));
    }
    if (!parts.group.empty())
      constituent.group = group_index(&groups, parts.group);
    rule.rhs.push_back(std::move(constituent));
  }
  if (rule.rhs.empty())
    throw GrammarFormatError(file, lineno, "rule has an empty right-hand side");
  rule.group_count = static_cast<int>(groups.size());

  // An agreement group must tie at least two participants together.
  std::vector<int> members(groups.size(), 0);
  if (rule.lhs_group >= 0) ++members[static_cast<std::size_t>(rule.lhs_group)];
  for (const auto& c : rule.rhs)
    if (c.group >= 0) ++members[static_cast<std::size_t>(c.group)];
  for (int count : members)
    if (count < 2)
      throw GrammarFormatError(file, lineno,
                               "agreement group with fewer than two members");
  return rule;
}

GrammarModule parse_module(std::istream& in, const std::string& name,
                           const std::string& stem) {
  GrammarModule module;
  module.name = stem;
  std::string line;
  std::size_t lineno = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = trim(line);
    if (view.empty() || view[0] == '#') continue;
    GrammarRule rule = parse_rule(view, name, lineno);
    rule.module = module.name;
    if (!ids.insert(rule.id).second) throw DuplicateRuleId(rule.id);
    module.rules.push_back(std::move(rule));
  }
  return module;
}

std::string path_stem(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

GrammarModule load_grammar_module(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grammar file: " + path);
  return parse_module(in, path, path_stem(path));
}

GrammarModule grammar_module_from_string(const std::string& text,
                                         const std::string& name) {
  std::istringstream in(text);
  return parse_module(in, name, name);
}

Grammar Grammar::assemble(std::vector<GrammarModule> modules) {
  Grammar grammar;
  std::set<std::string> ids;
  for (auto& module : modules) {
    if (!module.enabled) continue;
    grammar.modules_.push_back(module.name);
    for (auto& rule : module.rules) {
      if (!ids.insert(rule.id).second) throw DuplicateRuleId(rule.id);
      grammar.rules_.push_back(std::move(rule));
    }
  }
  return grammar;
}

Grammar load_grammar(const std::vector<std::string>& paths) {
  std::vector<GrammarModule> modules;
  for (const auto& path : paths) modules.push_back(load_grammar_module(path));
  return Grammar::assemble(std::move(modules));
}

}  // namespace xdoc
