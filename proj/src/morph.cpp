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

#include "xdoc/morph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "xdoc/errors.hpp"

namespace xdoc {

namespace {

constexpr std::array<std::string_view, 14> kPosClasses = {
    "N",   "V",    "ADJ",     "ADV",      "DETD", "DETI",   "PRP",
    "NR",  "KONJ", "RELPRON", "PERSPRON", "PTKL", "POSSPRON", "ITJ"};

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
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

bool known_pos_class(std::string_view pos) {
  return std::find(kPosClasses.begin(), kPosClasses.end(), pos) !=
         kPosClasses.end();
}

bool open_class_pos(std::string_view pos) {
  return pos == "N" || pos == "V" || pos == "ADJ";
}

bool starts_uppercase(std::string_view token) {
  if (token.empty()) return false;
  unsigned char b = static_cast<unsigned char>(token[0]);
  if (b < 0x80) return std::isupper(b) != 0;
  if (b == 0xC3 && token.size() >= 2) {
    unsigned char b1 = static_cast<unsigned char>(token[1]);
    return b1 >= 0x80 && b1 <= 0x9E && b1 != 0x97;  // À..Þ minus ×
  }
  return false;
}

bool starts_lowercase(std::string_view token) {
  if (token.empty()) return false;
  unsigned char b = static_cast<unsigned char>(token[0]);
  if (b < 0x80) return std::islower(b) != 0;
  if (b == 0xC3 && token.size() >= 2) {
    unsigned char b1 = static_cast<unsigned char>(token[1]);
    return b1 >= 0x9F && b1 != 0xB7;  // ß, à..ÿ minus ÷
  }
  return false;
}

std::string lower_first(std::string_view token) {
  std::string out(token);
  if (out.empty()) return out;
  unsigned char b = static_cast<unsigned char>(out[0]);
  if (b < 0x80) {
    out[0] = static_cast<char>(std::tolower(b));
  } else if (b == 0xC3 && out.size() >= 2) {
    unsigned char b1 = static_cast<unsigned char>(out[1]);
    if (b1 >= 0x80 && b1 <= 0x9E && b1 != 0x97)
      out[1] = static_cast<char>(b1 + 0x20);
  }
  return out;
}

void Lexicon::add_entry(LexEntry entry) {
  std::size_t index = entries_.size();
  entries_.push_back(std::move(entry));
  const LexEntry& e = entries_.back();
  if (e.paradigm.empty()) {
    fixed_by_surface_[e.root].push_back(index);
  } else {
    open_entries_.push_back(index);
  }
}

void Lexicon::add_paradigm(Paradigm paradigm) {
  paradigms_[paradigm.id] = std::move(paradigm);
}

const Paradigm* Lexicon::paradigm(const std::string& id) const {
  auto it = paradigms_.find(id);
  return it == paradigms_.end() ? nullptr : &it->second;
}

std::vector<const LexEntry*> Lexicon::open_class_entries() const {
  std::vector<const LexEntry*> out;
  for (std::size_t i : open_entries_) out.push_back(&entries_[i]);
  return out;
}

namespace {

Paradigm parse_paradigm(const std::string& file, std::size_t lineno,
                        const std::vector<std::string_view>& fields) {
  if (fields.size() < 4)
    throw LexiconFormatError(file, lineno,
                             "!paradigm needs id, POS and cell table");
  Paradigm paradigm;
  paradigm.id = std::string(trim(fields[1]));
  paradigm.pos = std::string(trim(fields[2]));
  if (!open_class_pos(paradigm.pos))
    throw LexiconFormatError(file, lineno,
                             "paradigms only apply to open classes");
  FeatureSet covered;
  for (auto cell_spec : split_fields(trim(fields[3]), ';')) {
    auto eq = cell_spec.rfind('=');
    if (eq == std::string_view::npos)
      throw LexiconFormatError(file, lineno, "cell must be FEATURES=suffixes");
    Paradigm::Cell cell;
    if (!FeatureSet::parse(cell_spec.substr(0, eq), &cell.features))
      throw LexiconFormatError(
          file, lineno,
          "bad cell features '" + std::string(cell_spec.substr(0, eq)) + "'");
    std::string_view suffixes = cell_spec.substr(eq + 1);
    if (suffixes != "!") {
      for (auto s : split_fields(suffixes, '|'))
        cell.suffixes.push_back(s == "-" ? "" : std::string(s));
    }
    covered = covered.unite(cell.features);
    paradigm.cells.push_back(std::move(cell));
  }
  if (!covered.is_full())
    throw LexiconFormatError(file, lineno,
                             "paradigm cells must cover the full feature "
                             "cross product (use '!' for missing forms)");
  return paradigm;
}

Lexicon load_from_stream(std::istream& in, const std::string& name) {
  Lexicon lexicon;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (trim(view).empty() || trim(view).front() == '#') continue;
    auto fields = split_fields(view, '\t');
    if (trim(fields[0]) == "!paradigm") {
      lexicon.add_paradigm(parse_paradigm(name, lineno, fields));
      continue;
    }
    if (fields.size() < 4)
      throw LexiconFormatError(
          name, lineno, "expected surface<TAB>POS<TAB>paradigm<TAB>features");
    LexEntry entry;
    entry.root = std::string(trim(fields[0]));
    entry.pos = std::string(trim(fields[1]));
    if (entry.root.empty())
      throw LexiconFormatError(name, lineno, "empty surface form");
    if (!known_pos_class(entry.pos))
      throw LexiconFormatError(name, lineno,
                               "unknown POS class '" + entry.pos + "'");
    std::string_view paradigm = trim(fields[2]);
    if (paradigm != "-") {
      if (!open_class_pos(entry.pos))
        throw LexiconFormatError(name, lineno,
                                 "closed-class entry cannot have a paradigm");
      entry.paradigm = std::string(paradigm);
    }
    std::string_view features = trim(fields[3]);
    if (!FeatureSet::parse(features, &entry.fixed))
      throw LexiconFormatError(
          name, lineno, "bad feature set '" + std::string(features) + "'");
    if (entry.fixed.empty())
      throw LexiconFormatError(name, lineno, "empty feature set");
    for (std::size_t i = 4; i < fields.size(); ++i) {
      for (auto pair_view : split_fields(trim(fields[i]), ' ')) {
        auto pair = trim(pair_view);
        if (pair.empty()) continue;
        auto eq = pair.find('=');
        if (eq == std::string_view::npos)
          throw LexiconFormatError(name, lineno,
                                   "extras must be key=value pairs");
        entry.extra[std::string(pair.substr(0, eq))] =
            std::string(pair.substr(eq + 1));
      }
    }
    // Preposition case government expands to the admissible triples.
    auto gov = entry.extra.find("gov");
    if (gov != entry.extra.end()) {
      FeatureSet governed;
      for (auto case_name : split_fields(gov->second, '|')) {
        Case c;
        if (!parse_case(case_name, &c))
          throw LexiconFormatError(name, lineno,
                                   "bad gov case '" + std::string(case_name) +
                                       "'");
        governed = governed.unite(FeatureSet::any_case({c}));
      }
      entry.fixed = entry.fixed.unify(governed);
    }
    lexicon.add_entry(std::move(entry));
  }
  return lexicon;
}

}  // namespace

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon: " + path);
  return load_from_stream(in, path);
}

Lexicon Lexicon::from_string(std::string_view text, const std::string& name) {
  std::istringstream in{std::string(text)};
  return load_from_stream(in, name);
}

namespace {

// Feature triples of `surface` under root+suffix decomposition against one
// entry; empty when the surface does not belong to the entry's paradigm.
FeatureSet decompose(const LexEntry& entry, const Paradigm& paradigm,
                     std::string_view surface) {
  if (surface.size() < entry.root.size() ||
      surface.compare(0, entry.root.size(), entry.root) != 0)
    return {};
  std::string_view suffix = surface.substr(entry.root.size());
  FeatureSet features;
  for (const auto& cell : paradigm.cells) {
    for (const auto& s : cell.suffixes) {
      if (suffix == s) {
        features = features.unite(cell.features);
        break;
      }
    }
  }
  return features.unify(entry.fixed);
}

}  // namespace

std::vector<MorphAnalysis> Lexicon::analyze(std::string_view token,
                                            bool sentence_initial) const {
  std::vector<std::string> surfaces{std::string(token)};
  if (sentence_initial && starts_uppercase(token)) {
    std::string lowered = lower_first(token);
    if (lowered != surfaces[0]) surfaces.push_back(std::move(lowered));
  }

  std::vector<MorphAnalysis> analyses;
  auto merge = [&analyses](MorphAnalysis a) {
    for (auto& existing : analyses) {
      if (existing.pos == a.pos && existing.lemma == a.lemma) {
        existing.features = existing.features.unite(a.features);
        return;
      }
    }
    analyses.push_back(std::move(a));
  };

  for (const auto& surface : surfaces) {
    auto fixed = fixed_by_surface_.find(surface);
    if (fixed != fixed_by_surface_.end()) {
      for (std::size_t index : fixed->second) {
        const LexEntry& e = entries_[index];
        merge({e.pos, e.fixed, e.lemma(), ""});
      }
    }
    for (std::size_t index : open_entries_) {
      const LexEntry& e = entries_[index];
      const Paradigm* p = paradigm(e.paradigm);
      if (!p || p->pos != e.pos) continue;
      FeatureSet features = decompose(e, *p, surface);
      if (!features.empty()) merge({e.pos, features, e.lemma(), ""});
    }
  }
  return analyses;
}

std::set<std::string> Lexicon::inflect(const LexEntry& entry,
                                       FeatureSet features) const {
  if (entry.paradigm.empty())
    throw UnknownParadigm("(entry '" + entry.root + "' has no paradigm)");
  const Paradigm* p = paradigm(entry.paradigm);
  if (!p) throw UnknownParadigm(entry.paradigm);
  std::set<std::string> forms;
  FeatureSet wanted = features.unify(entry.fixed);
  for (const auto& cell : p->cells) {
    if (cell.features.unify(wanted).empty()) continue;
    for (const auto& suffix : cell.suffixes)
      forms.insert(entry.root + suffix);
  }
  return forms;
}

}  // namespace xdoc
