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

// Morphosyntactic agreement features: case, number and gender.
//
// A feature set is stored extensionally as a set of (case, number, gender)
// triples; per-dimension value sets are only a projection used for display.
// The extensional form matters: the admissible triples of a German article
// form are not a cross product ("der" is NOM.SG.MAS, DAT.SG.FEM, GEN.SG.FEM
// and GEN.PL of any gender). Unification is plain set intersection; the
// empty set is unification failure.

#ifndef XDOC_FEATURES_HPP_
#define XDOC_FEATURES_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xdoc {

enum class Case : uint8_t { NOM = 0, GEN = 1, DAT = 2, AKK = 3 };
enum class Number : uint8_t { SG = 0, PL = 1 };
enum class Gender : uint8_t { MAS = 0, FEM = 1, NTR = 2 };

inline constexpr int kNumCases = 4;
inline constexpr int kNumNumbers = 2;
inline constexpr int kNumGenders = 3;
inline constexpr int kNumTriples = kNumCases * kNumNumbers * kNumGenders;

std::string_view to_string(Case c);
std::string_view to_string(Number n);
std::string_view to_string(Gender g);

class FeatureSet {
 public:
  // The empty set; as a value it means unification failure.
  constexpr FeatureSet() = default;

  static constexpr FeatureSet full() { return FeatureSet(kFullMask); }
  static FeatureSet of(Case c, Number n, Gender g) {
    return FeatureSet(uint32_t{1} << index(c, n, g));
  }
  // All triples whose case lies in `cases` (analogous helpers below).
  static FeatureSet any_case(std::initializer_list<Case> cases);
  static FeatureSet any_number(std::initializer_list<Number> numbers);
  static FeatureSet any_gender(std::initializer_list<Gender> genders);

  bool empty() const { return mask_ == 0; }
  bool is_full() const { return mask_ == kFullMask; }
  int size() const;
  bool contains(Case c, Number n, Gender g) const {
    return mask_ & (uint32_t{1} << index(c, n, g));
  }
  void add(Case c, Number n, Gender g) {
    mask_ |= uint32_t{1} << index(c, n, g);
  }

  // Set intersection; empty result = failure.
  FeatureSet unify(FeatureSet other) const {
    return FeatureSet(mask_ & other.mask_);
  }
  FeatureSet unite(FeatureSet other) const {
    return FeatureSet(mask_ | other.mask_);
  }
  bool subset_of(FeatureSet other) const {
    return (mask_ & ~other.mask_) == 0;
  }

  // Projections onto one dimension, in declaration order.
  std::vector<Case> cases() const;
  std::vector<Number> numbers() const;
  std::vector<Gender> genders() const;

  // Display form of one projection: "_" when the dimension is unconstrained,
  // otherwise comma-joined values ("DAT", "NOM,GEN").
  std::string case_label() const;
  std::string number_label() const;
  std::string gender_label() const;

  // Exact serialization. Cross-product sets print compactly as
  // "DAT|AKK.*.*"; everything else as ';'-joined triples
  // "NOM.SG.MAS;DAT.SG.FEM". The full set prints as "_".
  std::string to_string() const;
  // Inverse of to_string; also accepts '*' wildcards inside triples
  // ("GEN.PL.*"). Throws FormatError-free: returns false on bad syntax.
  static bool parse(std::string_view text, FeatureSet* out);
  // Like parse but throws xdoc::Error with `context` on failure.
  static FeatureSet parse_or_throw(std::string_view text,
                                   const std::string& context);

  uint32_t mask() const { return mask_; }
  static FeatureSet from_mask(uint32_t mask) {
    return FeatureSet(mask & kFullMask);
  }

  bool operator==(const FeatureSet&) const = default;

 private:
  static constexpr uint32_t kFullMask = (uint32_t{1} << kNumTriples) - 1;
  explicit constexpr FeatureSet(uint32_t mask) : mask_(mask) {}
  static constexpr int index(Case c, Number n, Gender g) {
    return (static_cast<int>(c) * kNumNumbers + static_cast<int>(n)) *
               kNumGenders +
           static_cast<int>(g);
  }

  uint32_t mask_ = 0;
};

bool parse_case(std::string_view text, Case* out);
bool parse_number(std::string_view text, Number* out);
bool parse_gender(std::string_view text, Gender* out);

}  // namespace xdoc

#endif  // XDOC_FEATURES_HPP_
