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

// Declarative multi-stage pipelines.
//
// A pipeline spec is line-oriented: one stage per line, `stage key=value
// key=value ...`. Stage order must respect processing dependencies
// (structure < tag < parse < sem < bootstrap < report, skipping allowed;
// bootstrap additionally requires the tag stage). All resources load up
// front; per-document processing is pure, so documents of a corpus can run
// in parallel.

#ifndef XDOC_PIPELINE_HPP_
#define XDOC_PIPELINE_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "xdoc/bootstrap.hpp"
#include "xdoc/xml.hpp"

namespace xdoc {

struct StageSpec {
  std::string name;
  std::map<std::string, std::string> options;

  std::string option(const std::string& key,
                     const std::string& fallback = "") const {
    auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
  }
  bool flag(const std::string& key) const {
    auto value = option(key);
    return value == "yes" || value == "true" || value == "1";
  }
};

struct PipelineSpec {
  std::vector<StageSpec> stages;
};

// -1 for unknown stage names.
int stage_rank(const std::string& name);

// Throws DependencyOrderError / ConfigError on bad specs.
void validate_pipeline(const PipelineSpec& spec);

PipelineSpec load_pipeline_spec(const std::string& path);
PipelineSpec pipeline_spec_from_string(const std::string& text,
                                       const std::string& name = "<string>");

// Called after every stage with (stage index, stage name, serialized output).
using IntermediateSink =
    std::function<void(std::size_t, const std::string&, const std::string&)>;

class Pipeline {
 public:
  // Validates the spec and loads every resource file.
  explicit Pipeline(PipelineSpec spec);
  ~Pipeline();
  Pipeline(Pipeline&&) noexcept;
  Pipeline& operator=(Pipeline&&) noexcept;

  // Applies the per-document stages to one input and returns the final
  // serialized output (an XML document, or HTML when the last stage is
  // report). The first stage decides whether `input` is raw text
  // (structure) or stage XML. Thread-safe across documents except for the
  // bootstrap stage's finding collection, which is serialized internally.
  std::string process(const std::string& input, const std::string& doc_id,
                      const IntermediateSink& sink = {});

  bool has_bootstrap() const;
  double bootstrap_threshold() const;
  // Available once every document has been processed.
  const std::vector<Finding>& findings() const;
  std::string bootstrap_candidates() const;
  std::string bootstrap_ontology() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace xdoc

#endif  // XDOC_PIPELINE_HPP_
