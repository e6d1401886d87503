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

#include "xdoc/features.hpp"

#include <bit>

#include "xdoc/errors.hpp"

namespace xdoc {

namespace {

const char* kCaseNames[kNumCases] = {"NOM", "GEN", "DAT", "AKK"};
const char* kNumberNames[kNumNumbers] = {"SG", "PL"};
const char* kGenderNames[kNumGenders] = {"MAS", "FEM", "NTR"};

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

std::string join_labels(const std::vector<std::string_view>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += labels[i];
  }
  return out;
}

}  // namespace

std::string_view to_string(Case c) { return kCaseNames[static_cast<int>(c)]; }
std::string_view to_string(Number n) {
  return kNumberNames[static_cast<int>(n)];
}
std::string_view to_string(Gender g) {
  return kGenderNames[static_cast<int>(g)];
}

bool parse_case(std::string_view text, Case* out) {
  for (int i = 0; i < kNumCases; ++i) {
    if (text == kCaseNames[i]) {
      *out = static_cast<Case>(i);
      return true;
    }
  }
  return false;
}

bool parse_number(std::string_view text, Number* out) {
  for (int i = 0; i < kNumNumbers; ++i) {
    if (text == kNumberNames[i]) {
      *out = static_cast<Number>(i);
      return true;
    }
  }
  return false;
}

bool parse_gender(std::string_view text, Gender* out) {
  for (int i = 0; i < kNumGenders; ++i) {
    if (text == kGenderNames[i]) {
      *out = static_cast<Gender>(i);
      return true;
    }
  }
  return false;
}

FeatureSet FeatureSet::any_case(std::initializer_list<Case> cases) {
  FeatureSet out;
  for (Case c : cases)
    for (int n = 0; n < kNumNumbers; ++n)
      for (int g = 0; g < kNumGenders; ++g)
        out.add(c, static_cast<Number>(n), static_cast<Gender>(g));
  return out;
}

FeatureSet FeatureSet::any_number(std::initializer_list<Number> numbers) {
  FeatureSet out;
  for (Number n : numbers)
    for (int c = 0; c < kNumCases; ++c)
      for (int g = 0; g < kNumGenders; ++g)
        out.add(static_cast<Case>(c), n, static_cast<Gender>(g));
  return out;
}

FeatureSet FeatureSet::any_gender(std::initializer_list<Gender> genders) {
  FeatureSet out;
  for (Gender g : genders)
    for (int c = 0; c < kNumCases; ++c)
      for (int n = 0; n < kNumNumbers; ++n)
        out.add(static_cast<Case>(c), static_cast<Number>(n), g);
  return out;
}

int FeatureSet::size() const { return std::popcount(mask_); }

std::vector<Case> FeatureSet::cases() const {
  std::vector<Case> out;
  for (int c = 0; c < kNumCases; ++c) {
    FeatureSet dim = any_case({static_cast<Case>(c)});
    if (!unify(dim).empty()) out.push_back(static_cast<Case>(c));
  }
  return out;
}

std::vector<Number> FeatureSet::numbers() const {
  std::vector<Number> out;
  for (int n = 0; n < kNumNumbers; ++n) {
    FeatureSet dim = any_number({static_cast<Number>(n)});
    if (!unify(dim).empty()) out.push_back(static_cast<Number>(n));
  }
  return out;
}

std::vector<Gender> FeatureSet::genders() const {
  std::vector<Gender> out;
  for (int g = 0; g < kNumGenders; ++g) {
    FeatureSet dim = any_gender({static_cast<Gender>(g)});
    if (!unify(dim).empty()) out.push_back(static_cast<Gender>(g));
  }
  return out;
}

std::string FeatureSet::case_label() const {
  auto values = cases();
  if (values.size() == kNumCases) return "_";
  std::vector<std::string_view> labels;
  for (Case c : values) labels.push_back(xdoc::to_string(c));
  return join_labels(labels);
}

std::string FeatureSet::number_label() const {
  auto values = numbers();
  if (values.size() == kNumNumbers) return "_";
  std::vector<std::string_view> labels;
  for (Number n : values) labels.push_back(xdoc::to_string(n));
  return join_labels(labels);
}

std::string FeatureSet::gender_label() const {
  auto values = genders();
  if (values.size() == kNumGenders) return "_";
  std::vector<std::string_view> labels;
  for (Gender g : values) labels.push_back(xdoc::to_string(g));
  return join_labels(labels);
}

std::string FeatureSet::to_string() const {
  if (is_full()) return "_";
  if (empty()) return "!";
  // Cross-product sets print one compact descriptor per dimension.
  FeatureSet cross;
  for (Case c : cases())
    for (Number n : numbers())
      for (Gender g : genders()) cross.add(c, n, g);
  auto dim = [](auto values, auto all, auto name) {
    if (values.size() == static_cast<std::size_t>(all)) return std::string("*");
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += '|';
      out += name(values[i]);
    }
    return out;
  };
  if (cross == *this) {
    std::string out;
    out += dim(cases(), kNumCases, [](Case c) { return xdoc::to_string(c); });
    out += '.';
    out += dim(numbers(), kNumNumbers,
               [](Number n) { return xdoc::to_string(n); });
    out += '.';
    out += dim(genders(), kNumGenders,
               [](Gender g) { return xdoc::to_string(g); });
    return out;
  }
  std::string out;
  bool first = true;
  for (int c = 0; c < kNumCases; ++c)
    for (int n = 0; n < kNumNumbers; ++n)
      for (int g = 0; g < kNumGenders; ++g) {
        if (!contains(static_cast<Case>(c), static_cast<Number>(n),
                      static_cast<Gender>(g)))
          continue;
        if (!first) out += ';';
        first = false;
        out += kCaseNames[c];
        out += '.';
        out += kNumberNames[n];
        out += '.';
        out += kGenderNames[g];
      }
  return out;
}

namespace {

// One "C.N.G" descriptor where each component may be a '|'-joined value
// list or '*'.
bool parse_triple_pattern(std::string_view text, FeatureSet* out) {
  auto parts = split(text, '.');
  if (parts.size() != 3) return false;
  uint32_t cases = 0, numbers = 0, genders = 0;
  for (auto v : split(parts[0], '|')) {
    if (v == "*") { cases = (1u << kNumCases) - 1; continue; }
    Case c;
    if (!parse_case(v, &c)) return false;
    cases |= 1u << static_cast<int>(c);
  }
  for (auto v : split(parts[1], '|')) {
    if (v == "*") { numbers = (1u << kNumNumbers) - 1; continue; }
    Number n;
    if (!parse_number(v, &n)) return false;
    numbers |= 1u << static_cast<int>(n);
  }
  for (auto v : split(parts[2], '|')) {
    if (v == "*") { genders = (1u << kNumGenders) - 1; continue; }
    Gender g;
    if (!parse_gender(v, &g)) return false;
    genders |= 1u << static_cast<int>(g);
  }
  if (!cases || !numbers || !genders) return false;
  for (int c = 0; c < kNumCases; ++c)
    for (int n = 0; n < kNumNumbers; ++n)
      for (int g = 0; g < kNumGenders; ++g)
        if ((cases >> c & 1) && (numbers >> n & 1) && (genders >> g & 1))
          out->add(static_cast<Case>(c), static_cast<Number>(n),
                   static_cast<Gender>(g));
  return true;
}

}  // namespace

bool FeatureSet::parse(std::string_view text, FeatureSet* out) {
  if (text == "_") {
    *out = full();
    return true;
  }
  if (text.empty()) return false;
  FeatureSet result;
  for (auto part : split(text, ';')) {
    if (!parse_triple_pattern(part, &result)) return false;
  }
  *out = result;
  return true;
}

FeatureSet FeatureSet::parse_or_throw(std::string_view text,
                                      const std::string& context) {
  FeatureSet out;
  if (!parse(text, &out))
    throw Error(context + ": bad feature set '" + std::string(text) + "'");
  return out;
}

}  // namespace xdoc
