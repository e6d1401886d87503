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

#include "xdoc/bootstrap.hpp"

#include <algorithm>

#include "xdoc/morph.hpp"

namespace xdoc {

namespace {

bool whitespace_only(const Node& node) {
  if (!node.is_text()) return false;
  return std::all_of(node.text().begin(), node.text().end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

std::vector<const Element*> sentence_token_elements(const Element& sentence) {
  std::vector<const Element*> tokens;
  for (const auto& child : sentence.children()) {
    if (whitespace_only(child)) continue;
    if (!child.is_element()) return {};  // untagged content: not usable
    tokens.push_back(&child.element());
  }
  return tokens;
}

bool noun_slot(const Element& token) {
  if (token.name() == "N") return true;
  return token.name() == "XXX" && starts_uppercase(text_content(token));
}

bool adjective_slot(const Element& token) {
  if (token.name() == "ADJ") return true;
  return token.name() == "XXX" && starts_lowercase(text_content(token));
}

bool fullstop(const Element& token) {
  return token.name() == "IP" && text_content(token) == ".";
}

}  // namespace

std::vector<Finding> detect_findings(const AnnotatedDocument& doc,
                                     const std::string& doc_id) {
  std::vector<Finding> findings;
  std::size_t sentence_index = 0;
  for (const auto& child : doc.root.children()) {
    if (!child.is_element() || child.element().name() != "S") continue;
    ++sentence_index;
    auto tokens = sentence_token_elements(child.element());
    if (tokens.size() != 3) continue;
    if (!noun_slot(*tokens[0]) || !adjective_slot(*tokens[1]) ||
        !fullstop(*tokens[2]))
      continue;
    findings.push_back({text_content(*tokens[0]), text_content(*tokens[1]),
                        doc_id + ":s" + std::to_string(sentence_index)});
  }
  return findings;
}

std::vector<Finding> detect_findings(
    const std::vector<AnnotatedDocument>& corpus) {
  std::vector<Finding> findings;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto part = detect_findings(corpus[i], "doc" + std::to_string(i + 1));
    findings.insert(findings.end(), part.begin(), part.end());
  }
  return findings;
}

std::vector<InducedEntry> induce_lexicon(
    const std::vector<Finding>& findings) {
  std::map<std::string, std::size_t> nouns, adjectives;
  for (const auto& finding : findings) {
    ++nouns[finding.noun];
    ++adjectives[finding.adjective];
  }
  std::vector<InducedEntry> entries;
  for (const auto& [surface, count] : adjectives)
    entries.push_back({surface, "ADJ", count});
  for (const auto& [surface, count] : nouns)
    entries.push_back({surface, "N", count});
  std::sort(entries.begin(), entries.end(),
            [](const InducedEntry& a, const InducedEntry& b) {
              if (a.pos != b.pos) return a.pos < b.pos;
              return a.surface < b.surface;
            });
  return entries;
}

std::string candidate_lexicon_file(const std::vector<InducedEntry>& entries) {
  std::string out =
      "# lexicon candidates induced from telegraphic findings;\n"
      "# review and import explicitly (xdoc lexicon import).\n";
  for (const auto& entry : entries) {
    out += entry.surface + "\t" + entry.pos + "\t-\t_\tsrc=bootstrap freq=" +
           std::to_string(entry.frequency) + "\n";
  }
  return out;
}

std::vector<ConceptCandidate> concept_candidates(
    const std::vector<Finding>& findings) {
  std::map<std::string, ConceptCandidate> by_noun;
  for (const auto& finding : findings) {
    ConceptCandidate& candidate = by_noun[finding.noun];
    candidate.name = finding.noun;
    candidate.values.insert(finding.adjective);
    ++candidate.frequency;
  }
  std::vector<ConceptCandidate> out;
  for (auto& [name, candidate] : by_noun) out.push_back(std::move(candidate));
  return out;
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;  // identical
  std::size_t intersection = 0;
  for (const auto& value : a) intersection += b.count(value);
  std::size_t unification = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) /
         static_cast<double>(unification);
}

struct WorkCluster {
  std::vector<std::string> members;  // sorted; members[0] is the tie-break key
  std::set<std::string> values;      // union over members
};

}  // namespace

InducedOntology cluster_concepts(
    const std::vector<ConceptCandidate>& candidates, double threshold) {
  threshold = std::clamp(threshold, 0.0, 1.0);
  std::vector<WorkCluster> clusters;
  for (const auto& candidate : candidates)
    clusters.push_back({{candidate.name}, candidate.values});
  std::sort(clusters.begin(), clusters.end(),
            [](const WorkCluster& a, const WorkCluster& b) {
              return a.members[0] < b.members[0];
            });

  for (;;) {
    double best = -1.0;
    std::size_t best_a = 0, best_b = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double similarity = jaccard(clusters[i].values, clusters[j].values);
        if (similarity > best) {
          best = similarity;
          best_a = i;
          best_b = j;
        }
        // Equal similarity: the pair ordering is already lexicographic
        // because clusters stay sorted by their smallest member.
      }
    }
    if (best < threshold || clusters.size() < 2) break;
    WorkCluster merged;
    std::merge(clusters[best_a].members.begin(), clusters[best_a].members.end(),
               clusters[best_b].members.begin(), clusters[best_b].members.end(),
               std::back_inserter(merged.members));
    merged.values = clusters[best_a].values;
    merged.values.insert(clusters[best_b].values.begin(),
                         clusters[best_b].values.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_b));
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_a));
    auto position = std::lower_bound(
        clusters.begin(), clusters.end(), merged,
        [](const WorkCluster& a, const WorkCluster& b) {
          return a.members[0] < b.members[0];
        });
    clusters.insert(position, std::move(merged));
  }

  // Shared values = intersection over the original candidates of a cluster.
  std::map<std::string, const ConceptCandidate*> by_name;
  for (const auto& candidate : candidates) by_name[candidate.name] = &candidate;
  InducedOntology ontology;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    Cluster cluster;
    cluster.id = "c" + std::to_string(i + 1);
    cluster.members = clusters[i].members;
    std::set<std::string> shared = by_name.at(cluster.members[0])->values;
    for (const auto& member : cluster.members) {
      const auto& values = by_name.at(member)->values;
      std::set<std::string> next;
      for (const auto& value : shared)
        if (values.count(value)) next.insert(value);
      shared = std::move(next);
    }
    cluster.shared_values.assign(shared.begin(), shared.end());
    ontology.clusters.push_back(std::move(cluster));
  }
  return ontology;
}

std::string ontology_file(const InducedOntology& ontology) {
  std::string out;
  for (const auto& cluster : ontology.clusters) {
    out += cluster.id;
    out += '\t';
    for (std::size_t i = 0; i < cluster.members.size(); ++i) {
      if (i) out += ',';
      out += cluster.members[i];
    }
    out += '\t';
    for (std::size_t i = 0; i < cluster.shared_values.size(); ++i) {
      if (i) out += ',';
      out += cluster.shared_values[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace xdoc
