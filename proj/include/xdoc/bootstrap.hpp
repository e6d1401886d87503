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

// Lexicon and ontology bootstrapping from a fresh corpus.
//
// Telegraphic Noun-Adjective-Fullstop sentences ("Harnblase leer.") are easy
// to detect even before any lexicon exists: a capitalized unknown counts as
// the noun, a lowercase unknown as the adjective. The detected findings seed
// a candidate lexicon, and clustering nouns by their observed adjective
// values separates e.g. container-like entities (leer, gefuellt) from
// surface-like ones (glatt).

#ifndef XDOC_BOOTSTRAP_HPP_
#define XDOC_BOOTSTRAP_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "xdoc/xml.hpp"

namespace xdoc {

struct Finding {
  std::string noun;
  std::string adjective;
  std::string sentence_id;  // "<doc>:<sentence>"

  bool operator==(const Finding&) const = default;
};

// Scans sentence-segmented, POS-tagged documents (heuristic tags are fine)
// for exact [N|capitalized-XXX, ADJ|lowercase-XXX, "."] sentences.
std::vector<Finding> detect_findings(
    const std::vector<AnnotatedDocument>& corpus);
std::vector<Finding> detect_findings(const AnnotatedDocument& doc,
                                     const std::string& doc_id);

struct InducedEntry {
  std::string surface;
  std::string pos;  // N or ADJ
  std::size_t frequency = 0;

  bool operator==(const InducedEntry&) const = default;
};

// One N candidate per distinct noun, one ADJ candidate per distinct
// adjective, fully underspecified, sorted by (pos, surface). Candidates are
// written in lexicon file format but only enter a live lexicon through an
// explicit import.
std::vector<InducedEntry> induce_lexicon(const std::vector<Finding>& findings);
std::string candidate_lexicon_file(const std::vector<InducedEntry>& entries);

struct ConceptCandidate {
  std::string name;
  std::set<std::string> values;
  std::size_t frequency = 0;
};

// Noun -> set of observed adjectives, from findings.
std::vector<ConceptCandidate> concept_candidates(
    const std::vector<Finding>& findings);

struct Cluster {
  std::string id;  // "c1", "c2", ...
  std::vector<std::string> members;       // sorted
  std::vector<std::string> shared_values; // intersection over members, sorted
};

struct InducedOntology {
  std::vector<Cluster> clusters;
};

// Greedy agglomerative clustering by Jaccard similarity of value sets;
// merges while the best pair is >= threshold (clamped to [0,1]). Ties break
// lexicographically, so the partition is independent of input order. Two
// empty value sets count as identical (similarity 1).
InducedOntology cluster_concepts(const std::vector<ConceptCandidate>& candidates,
                                 double threshold);

// `id <TAB> members,comma-joined <TAB> shared-values`
std::string ontology_file(const InducedOntology& ontology);

}  // namespace xdoc

#endif  // XDOC_BOOTSTRAP_HPP_
