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

#include <algorithm>

#include "test_support.hpp"
#include "xdoc/bootstrap.hpp"
#include "xdoc/postag.hpp"
#include "xdoc/structure.hpp"

using namespace xdoc;

namespace {

std::string data_path(const std::string& tail) {
  return std::string(XDOC_DATA_DIR) + "/" + tail;
}

AnnotatedDocument tagged(const std::string& text) {
  static Lexicon lexicon = Lexicon::load(data_path("lexicon/seed.lex"));
  static std::vector<Heuristic> heuristics =
      load_heuristics(data_path("heuristics/default.heu"));
  StructureConfig config;
  return tag_document(detect_sentences(tokenize(text, config), config),
                      lexicon, heuristics);
}

const std::string kQuotation =
    "Harnblase leer. Harnleiter frei. Nierenoberflaeche glatt. "
    "Vorsteherdruese altersentsprechend.";

}  // namespace

TEST_CASE("telegraphic findings are detected, known or unknown alike") {
  auto findings = detect_findings(tagged(kQuotation), "doc1");
  REQUIRE(findings.size() == 4);
  CHECK(findings[0] == Finding{"Harnblase", "leer", "doc1:s1"});
  CHECK(findings[1] == Finding{"Harnleiter", "frei", "doc1:s2"});
  CHECK(findings[2] == Finding{"Nierenoberflaeche", "glatt", "doc1:s3"});
  CHECK(findings[3] ==
        Finding{"Vorsteherdruese", "altersentsprechend", "doc1:s4"});
}

TEST_CASE("only exact three-token Noun-Adjective-Fullstop sentences count") {
  CHECK(detect_findings(tagged("Bauchteil der grossen Koerperschlagader."),
                        "d")
            .empty());
  CHECK(detect_findings(tagged("Harnblase leer"), "d").empty());  // no stop
  CHECK(detect_findings(tagged("leer Harnblase."), "d").empty());  // order
  // Findings survive when both tokens are unknown but shaped right.
  auto unknown = detect_findings(tagged("Zwerchfell unauffaellig."), "d");
  REQUIRE(unknown.size() == 1);
  CHECK(unknown[0].noun == "Zwerchfell");
  CHECK(unknown[0].adjective == "unauffaellig");
}

TEST_CASE("findings keep noun and adjective adjacent in their sentence") {
  AnnotatedDocument doc = tagged(kQuotation);
  auto findings = detect_findings(doc, "doc1");
  std::string text = text_content(doc.root);
  for (const auto& finding : findings) {
    auto position = text.find(finding.noun + " " + finding.adjective);
    CHECK(position != std::string::npos);
  }
}

TEST_CASE("lexicon induction aggregates distinct surfaces with frequencies") {
  auto findings = detect_findings(tagged(kQuotation), "doc1");
  auto entries = induce_lexicon(findings);
  REQUIRE(entries.size() == 8);
  std::vector<std::string> nouns, adjectives;
  for (const auto& entry : entries) {
    CHECK(entry.frequency == 1);
    (entry.pos == "N" ? nouns : adjectives).push_back(entry.surface);
  }
  CHECK(nouns == std::vector<std::string>{"Harnblase", "Harnleiter",
                                          "Nierenoberflaeche",
                                          "Vorsteherdruese"});
  CHECK(adjectives == std::vector<std::string>{
                          "altersentsprechend", "frei", "glatt", "leer"});

  // Duplicates increment the frequency instead of adding entries.
  auto doubled = findings;
  doubled.push_back(findings[0]);
  auto merged = induce_lexicon(doubled);
  CHECK(merged.size() == 8);
  for (const auto& entry : merged)
    if (entry.surface == "Harnblase") CHECK(entry.frequency == 2);

  CHECK(induce_lexicon({}).empty());
}

TEST_CASE("candidate files carry the bootstrap marker") {
  auto entries = induce_lexicon(detect_findings(tagged(kQuotation), "d"));
  std::string file = candidate_lexicon_file(entries);
  CHECK(file.find("Harnblase\tN\t-\t_\tsrc=bootstrap freq=1") !=
        std::string::npos);
  // The candidate file itself loads as a lexicon.
  CHECK(Lexicon::from_string(file).entries().size() == 8);
}

TEST_CASE("container-like and surface-like entities separate at 0.5") {
  std::vector<ConceptCandidate> candidates = {
      {"Harnblase", {"leer", "gefuellt"}, 2},
      {"Magen", {"leer", "gefuellt"}, 2},
      {"Nierenoberflaeche", {"glatt"}, 1},
  };
  InducedOntology ontology = cluster_concepts(candidates, 0.5);
  REQUIRE(ontology.clusters.size() == 2);
  CHECK(ontology.clusters[0].members ==
        std::vector<std::string>{"Harnblase", "Magen"});
  CHECK(ontology.clusters[0].shared_values ==
        std::vector<std::string>{"gefuellt", "leer"});
  CHECK(ontology.clusters[1].members ==
        std::vector<std::string>{"Nierenoberflaeche"});

  std::string file = ontology_file(ontology);
  CHECK(file == "c1\tHarnblase,Magen\tgefuellt,leer\n"
                "c2\tNierenoberflaeche\tglatt\n");
}

TEST_CASE("a single candidate forms a singleton cluster") {
  InducedOntology ontology =
      cluster_concepts({{"Leber", {"dunkelrot"}, 1}}, 0.5);
  REQUIRE(ontology.clusters.size() == 1);
  CHECK(ontology.clusters[0].members == std::vector<std::string>{"Leber"});
}

TEST_CASE("thresholds clamp to [0,1]; at 1.0 only identical sets merge") {
  std::vector<ConceptCandidate> candidates = {
      {"A", {"x", "y"}, 1}, {"B", {"x", "y"}, 1}, {"C", {"x"}, 1}};
  InducedOntology exact = cluster_concepts(candidates, 1.5);  // clamped to 1
  REQUIRE(exact.clusters.size() == 2);
  CHECK(exact.clusters[0].members == std::vector<std::string>{"A", "B"});

  InducedOntology everything = cluster_concepts(candidates, -0.5);  // -> 0
  CHECK(everything.clusters.size() == 1);
}

TEST_CASE("clusters partition the candidates and ignore input order") {
  std::vector<ConceptCandidate> candidates = {
      {"Harnblase", {"leer", "gefuellt"}, 2},
      {"Magen", {"leer", "gefuellt"}, 2},
      {"Niere", {"glatt", "leer"}, 2},
      {"Leber", {"dunkelrot"}, 1},
      {"Milz", {"glatt"}, 1},
  };
  InducedOntology base = cluster_concepts(candidates, 0.4);

  std::set<std::string> seen;
  std::size_t total = 0;
  for (const auto& cluster : base.clusters) {
    for (const auto& member : cluster.members) {
      CHECK(seen.insert(member).second);  // disjoint
      ++total;
    }
  }
  CHECK(total == candidates.size());  // total

  xdoc_test::Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    InducedOntology shuffled = cluster_concepts(candidates, 0.4);
    REQUIRE(shuffled.clusters.size() == base.clusters.size());
    for (std::size_t c = 0; c < base.clusters.size(); ++c)
      CHECK(shuffled.clusters[c].members == base.clusters[c].members);
  }
}
