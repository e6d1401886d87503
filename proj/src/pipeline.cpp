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

#include "xdoc/pipeline.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "xdoc/errors.hpp"
#include "xdoc/grammar.hpp"
#include "xdoc/morph.hpp"
#include "xdoc/parser.hpp"
#include "xdoc/postag.hpp"
#include "xdoc/report.hpp"
#include "xdoc/sem.hpp"
#include "xdoc/structure.hpp"

namespace xdoc {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      if (i > start) parts.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace

int stage_rank(const std::string& name) {
  if (name == "structure") return 0;
  if (name == "tag") return 1;
  if (name == "parse") return 2;
  if (name == "sem") return 3;
  if (name == "bootstrap") return 4;
  if (name == "report") return 5;
  return -1;
}

void validate_pipeline(const PipelineSpec& spec) {
  if (spec.stages.empty()) throw ConfigError("pipeline has no stages");
  int previous = -1;
  bool tagged = false;
  for (const auto& stage : spec.stages) {
    int rank = stage_rank(stage.name);
    if (rank < 0) throw ConfigError("unknown stage '" + stage.name + "'");
    if (rank <= previous)
      throw DependencyOrderError(
          "stage '" + stage.name + "' cannot follow a later stage "
          "(required order: structure < tag < parse < sem < bootstrap < "
          "report)");
    if (stage.name == "bootstrap" && !tagged)
      throw DependencyOrderError("bootstrap requires the tag stage");
    if (stage.name == "tag") tagged = true;
    previous = rank;
  }
}

namespace {

PipelineSpec parse_spec_stream(std::istream& in, const std::string& name) {
  PipelineSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream parts(line);
    std::string stage_name;
    if (!(parts >> stage_name) || stage_name[0] == '#') continue;
    StageSpec stage;
    stage.name = stage_name;
    std::string pair;
    while (parts >> pair) {
      auto eq = pair.find('=');
      if (eq == std::string::npos)
        throw ConfigError(name + ":" + std::to_string(lineno) +
                          ": stage option must be key=value, got '" + pair +
                          "'");
      stage.options[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    spec.stages.push_back(std::move(stage));
  }
  return spec;
}

}  // namespace

PipelineSpec load_pipeline_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open pipeline spec: " + path);
  return parse_spec_stream(in, path);
}

PipelineSpec pipeline_spec_from_string(const std::string& text,
                                       const std::string& name) {
  std::istringstream in(text);
  return parse_spec_stream(in, name);
}

struct Pipeline::Impl {
  struct LoadedStage {
    StageSpec spec;
    // structure
    StructureConfig structure;
    CharMap charmap;
    // tag
    Lexicon lexicon;
    std::vector<Heuristic> heuristics;
    // parse
    Grammar grammar;
    ParseOptions parse_options;
    bool all_parses = false;
    // sem
    SemLexicon semlex;
    std::vector<StructuralRule> structural;
    enum class SemMode { kTag, kFrames, kStructural } sem_mode = SemMode::kTag;
    bool ex7 = false;
    // report
    Audience audience = Audience::kExpert;
    // bootstrap
    double threshold = 0.5;
  };

  std::vector<LoadedStage> stages;
  std::vector<Finding> findings;
  std::mutex findings_mutex;
  int bootstrap_index = -1;

  void load(LoadedStage& loaded) {
    const StageSpec& spec = loaded.spec;
    if (spec.name == "structure") {
      if (auto path = spec.option("patterns"); !path.empty())
        loaded.structure.patterns = load_patterns(path);
      if (auto path = spec.option("abbrev"); !path.empty())
        loaded.structure.abbreviations = load_abbreviations(path);
      if (auto path = spec.option("charmap"); !path.empty())
        loaded.charmap = load_charmap(path);
      if (spec.option("colon-terminal") == "no")
        loaded.structure.sentence_terminals.erase(":");
    } else if (spec.name == "tag") {
      auto lexicon = spec.option("lexicon");
      if (lexicon.empty()) throw ConfigError("tag stage needs lexicon=");
      loaded.lexicon = Lexicon::load(lexicon);
      if (auto path = spec.option("heuristics"); !path.empty())
        loaded.heuristics = load_heuristics(path);
    } else if (spec.name == "parse") {
      auto grammars = split_list(spec.option("grammar"));
      if (grammars.empty()) throw ConfigError("parse stage needs grammar=");
      loaded.grammar = load_grammar(grammars);
      loaded.parse_options.roots = split_list(spec.option("root"));
      loaded.all_parses = spec.flag("all-parses");
      if (auto covers = spec.option("max-covers"); !covers.empty())
        loaded.parse_options.max_covers = std::stoul(covers);
      else
        loaded.parse_options.max_covers = 1000;
    } else if (spec.name == "sem") {
      auto semlex = spec.option("semlex");
      if (semlex.empty()) throw ConfigError("sem stage needs semlex=");
      loaded.semlex = SemLexicon::load(semlex);
      loaded.ex7 = spec.flag("ex7");
      if (spec.flag("frames")) {
        loaded.sem_mode = LoadedStage::SemMode::kFrames;
      } else if (auto rules = spec.option("structural"); !rules.empty()) {
        loaded.sem_mode = LoadedStage::SemMode::kStructural;
        loaded.structural = load_structural_rules(rules);
      }
    } else if (spec.name == "report") {
      auto audience = spec.option("audience", "expert");
      if (audience == "developer") loaded.audience = Audience::kDeveloper;
      else if (audience != "expert")
        throw ConfigError("report audience must be expert or developer");
    } else if (spec.name == "bootstrap") {
      loaded.threshold = std::stod(spec.option("threshold", "0.5"));
    }
  }

  AnnotatedDocument apply_parse(const LoadedStage& stage,
                                AnnotatedDocument doc) const {
    ChartParser parser(stage.grammar, stage.parse_options);
    for (auto& child : doc.root.children()) {
      if (!child.is_element() || child.element().name() != "S") continue;
      Element& sentence = child.element();
      std::vector<ParseToken> tokens = sentence_tokens(sentence);
      if (tokens.empty()) continue;
      ParseResult result = parser.parse(tokens);
      annotate_sentence(sentence, result, tokens, stage.all_parses);
    }
    return doc;
  }
};

Pipeline::Pipeline(PipelineSpec spec) : impl_(std::make_unique<Impl>()) {
  validate_pipeline(spec);
  for (auto& stage_spec : spec.stages) {
    Impl::LoadedStage loaded;
    loaded.spec = stage_spec;
    impl_->load(loaded);
    if (stage_spec.name == "bootstrap")
      impl_->bootstrap_index = static_cast<int>(impl_->stages.size());
    impl_->stages.push_back(std::move(loaded));
  }
}

Pipeline::~Pipeline() = default;
Pipeline::Pipeline(Pipeline&&) noexcept = default;
Pipeline& Pipeline::operator=(Pipeline&&) noexcept = default;

std::string Pipeline::process(const std::string& input,
                              const std::string& doc_id,
                              const IntermediateSink& sink) {
  AnnotatedDocument doc{Element("DOC")};
  bool have_doc = false;
  std::string final_output;
  for (std::size_t i = 0; i < impl_->stages.size(); ++i) {
    auto& stage = impl_->stages[i];
    const std::string& name = stage.spec.name;
    if (name == "structure") {
      std::string text = normalize_input(input, stage.charmap);
      doc = detect_sentences(tokenize(text, stage.structure), stage.structure);
      have_doc = true;
    } else {
      if (!have_doc) {
        doc = parse_xml(input);
        have_doc = true;
      }
      if (name == "tag") {
        doc = tag_document(std::move(doc), stage.lexicon, stage.heuristics);
      } else if (name == "parse") {
        doc = impl_->apply_parse(stage, std::move(doc));
      } else if (name == "sem") {
        switch (stage.sem_mode) {
          case Impl::LoadedStage::SemMode::kTag:
            doc = sem_tag(std::move(doc), stage.semlex);
            break;
          case Impl::LoadedStage::SemMode::kFrames:
            doc = fill_frames(std::move(doc), stage.semlex, stage.ex7);
            break;
          case Impl::LoadedStage::SemMode::kStructural: {
            doc = sem_tag(std::move(doc), stage.semlex);
            interpret_structure(&doc, stage.structural);
            break;
          }
        }
      } else if (name == "bootstrap") {
        auto found = detect_findings(doc, doc_id);
        std::lock_guard<std::mutex> lock(impl_->findings_mutex);
        impl_->findings.insert(impl_->findings.end(), found.begin(),
                               found.end());
      } else if (name == "report") {
        final_output = render_report(doc, stage.audience);
        if (sink) sink(i, name, final_output);
        return final_output;
      }
    }
    if (sink) sink(i, name, write_document(doc));
  }
  return write_document(doc);
}

bool Pipeline::has_bootstrap() const { return impl_->bootstrap_index >= 0; }

double Pipeline::bootstrap_threshold() const {
  if (!has_bootstrap()) return 0.5;
  return impl_->stages[static_cast<std::size_t>(impl_->bootstrap_index)]
      .threshold;
}

const std::vector<Finding>& Pipeline::findings() const {
  return impl_->findings;
}

std::string Pipeline::bootstrap_candidates() const {
  return candidate_lexicon_file(induce_lexicon(impl_->findings));
}

std::string Pipeline::bootstrap_ontology() const {
  return ontology_file(
      cluster_concepts(concept_candidates(impl_->findings),
                       bootstrap_threshold()));
}

}  // namespace xdoc
