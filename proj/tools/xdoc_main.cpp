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

// xdoc - pipeline-oriented processing of German documents.
//
// Every stage reads and writes the same XML annotation format, so stages
// chain through files or pipes exactly as they compose in `xdoc pipeline`.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "xdoc/bootstrap.hpp"
#include "xdoc/errors.hpp"
#include "xdoc/morph.hpp"
#include "xdoc/pipeline.hpp"
#include "xdoc/postag.hpp"
#include "xdoc/xml.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw xdoc::ConfigError("cannot open input: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw xdoc::ConfigError("cannot open output: " + path);
  out << content;
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

// Shared state for the single-stage subcommands: each builds a one-stage
// pipeline spec, which keeps the CLI and `xdoc pipeline` byte-identical.
struct StageCommand {
  xdoc::StageSpec spec;
  std::string input;
  std::string output;

  int run() const {
    xdoc::Pipeline pipeline(xdoc::PipelineSpec{{spec}});
    std::string result = pipeline.process(read_input(input),
                                          input.empty() ? "stdin" : input);
    write_output(output, result);
    return 0;
  }
};

void add_io_options(CLI::App* cmd, StageCommand* command) {
  cmd->add_option("input", command->input, "input file ('-' = stdin)");
  cmd->add_option("-o,--output", command->output,
                  "output file (default: stdout)");
}

struct PipelineCommand {
  std::string spec_path;
  std::vector<std::string> stage_lines;
  std::vector<std::string> inputs;
  std::string output;
  std::string out_dir;
  bool keep_intermediate = false;
  unsigned jobs = 1;

  int run() {
    xdoc::PipelineSpec spec;
    if (!spec_path.empty()) {
      spec = xdoc::load_pipeline_spec(spec_path);
    } else if (!stage_lines.empty()) {
      std::string text;
      for (const auto& line : stage_lines) text += line + "\n";
      spec = xdoc::pipeline_spec_from_string(text, "--stage");
    } else {
      throw xdoc::ConfigError("pipeline needs --spec or --stage");
    }
    xdoc::Pipeline pipeline(std::move(spec));

    if (inputs.empty()) inputs.push_back("-");
    if (inputs.size() > 1 && out_dir.empty())
      throw xdoc::ConfigError("multiple inputs need --out-dir");
    if (!out_dir.empty()) fs::create_directories(out_dir);

    std::vector<std::string> written;
    std::mutex written_mutex;
    auto process_one = [&](const std::string& input_path) {
      std::string id = input_path == "-" ? "stdin" : stem_of(input_path);
      xdoc::IntermediateSink sink;
      if (keep_intermediate && !out_dir.empty()) {
        sink = [&, id](std::size_t index, const std::string& stage,
                       const std::string& content) {
          fs::path path = fs::path(out_dir) /
                          (id + "." + std::to_string(index + 1) + "." + stage +
                           ".xml");
          write_output(path.string(), content);
          std::lock_guard<std::mutex> lock(written_mutex);
          written.push_back(path.string());
        };
      }
      std::string result = pipeline.process(read_input(input_path), id, sink);
      if (!out_dir.empty()) {
        fs::path path = fs::path(out_dir) / (id + ".xml");
        write_output(path.string(), result);
        std::lock_guard<std::mutex> lock(written_mutex);
        written.push_back(path.string());
      } else {
        write_output(output, result);
      }
    };

    try {
      if (jobs <= 1 || inputs.size() <= 1) {
        for (const auto& input_path : inputs) process_one(input_path);
      } else {
        std::vector<std::thread> workers;
        std::mutex queue_mutex;
        std::size_t next = 0;
        std::exception_ptr error;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, inputs.size());
             ++t) {
          workers.emplace_back([&] {
            for (;;) {
              std::size_t index;
              {
                std::lock_guard<std::mutex> lock(queue_mutex);
                if (next >= inputs.size() || error) return;
                index = next++;
              }
              try {
                process_one(inputs[index]);
              } catch (...) {
                std::lock_guard<std::mutex> lock(queue_mutex);
                if (!error) error = std::current_exception();
                return;
              }
            }
          });
        }
        for (auto& worker : workers) worker.join();
        if (error) std::rethrow_exception(error);
      }
    } catch (...) {
      if (!keep_intermediate)
        for (const auto& path : written) fs::remove(path);
      throw;
    }

    if (pipeline.has_bootstrap()) {
      fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
      write_output((dir / "candidates.lex").string(),
                   pipeline.bootstrap_candidates());
      write_output((dir / "ontology.tsv").string(),
                   pipeline.bootstrap_ontology());
    }
    return 0;
  }
};

struct BootstrapCommand {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  double threshold = 0.5;

  int run() const {
    std::vector<std::string> files;
    for (const auto& input : inputs) {
      if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input))
          if (entry.path().extension() == ".xml")
            files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
      } else {
        files.push_back(input);
      }
    }
    std::vector<xdoc::Finding> findings;
    for (const auto& file : files) {
      xdoc::AnnotatedDocument doc = xdoc::parse_xml(read_input(file));
      auto found = xdoc::detect_findings(doc, stem_of(file));
      findings.insert(findings.end(), found.begin(), found.end());
    }
    fs::create_directories(out_dir);
    write_output((fs::path(out_dir) / "candidates.lex").string(),
                 xdoc::candidate_lexicon_file(xdoc::induce_lexicon(findings)));
    write_output(
        (fs::path(out_dir) / "ontology.tsv").string(),
        xdoc::ontology_file(xdoc::cluster_concepts(
            xdoc::concept_candidates(findings), threshold)));
    std::cerr << files.size() << " documents, " << findings.size()
              << " findings\n";
    return 0;
  }
};

struct LexiconImportCommand {
  std::string candidates;
  std::string into;
  std::string output;

  int run() const {
    // Validate both inputs before merging.
    xdoc::Lexicon::load(into);
    std::string candidate_text = read_input(candidates);
    xdoc::Lexicon::from_string(candidate_text, candidates);

    std::set<std::string> known;
    std::string merged;
    std::istringstream base(read_input(into));
    std::string line;
    auto entry_key = [](const std::string& text) -> std::string {
      auto first_tab = text.find('\t');
      if (first_tab == std::string::npos) return "";
      auto second_tab = text.find('\t', first_tab + 1);
      return text.substr(0, second_tab == std::string::npos
                                ? std::string::npos
                                : second_tab);
    };
    while (std::getline(base, line)) {
      merged += line + "\n";
      if (!line.empty() && line[0] != '#' && line[0] != '!')
        known.insert(entry_key(line));
    }
    std::istringstream extra(candidate_text);
    std::size_t imported = 0;
    while (std::getline(extra, line)) {
      if (line.empty() || line[0] == '#' || line[0] == '!') continue;
      if (known.insert(entry_key(line)).second) {
        merged += line + "\n";
        ++imported;
      }
    }
    write_output(output.empty() ? into : output, merged);
    std::cerr << "imported " << imported << " entries\n";
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xdoc - robust processing of German documents"};
  app.require_subcommand(1);

  // structure
  StageCommand structure_command;
  structure_command.spec.name = "structure";
  auto* structure = app.add_subcommand(
      "structure", "tokenize raw text and detect sentences");
  std::string patterns, abbrev, charmap;
  bool no_colon = false;
  structure->add_option("--patterns", patterns, "token pattern file");
  structure->add_option("--abbrev", abbrev, "abbreviation lexicon");
  structure->add_option("--charmap", charmap, "character replacement map");
  structure->add_flag("--no-colon-terminal", no_colon,
                      "':' does not end sentences");
  add_io_options(structure, &structure_command);
  structure->callback([&] {
    if (!patterns.empty()) structure_command.spec.options["patterns"] = patterns;
    if (!abbrev.empty()) structure_command.spec.options["abbrev"] = abbrev;
    if (!charmap.empty()) structure_command.spec.options["charmap"] = charmap;
    if (no_colon) structure_command.spec.options["colon-terminal"] = "no";
  });

  // tag
  StageCommand tag_command;
  tag_command.spec.name = "tag";
  auto* tag = app.add_subcommand("tag", "POS-tag a tokenized document");
  std::string lexicon, heuristics;
  tag->add_option("--lexicon", lexicon, "morphological lexicon")->required();
  tag->add_option("--heuristics", heuristics, "heuristics file");
  bool coverage = false;
  tag->add_flag("--coverage", coverage,
                "print coverage statistics to stderr");
  add_io_options(tag, &tag_command);
  tag->callback([&] {
    tag_command.spec.options["lexicon"] = lexicon;
    if (!heuristics.empty()) tag_command.spec.options["heuristics"] = heuristics;
  });

  // parse
  StageCommand parse_command;
  parse_command.spec.name = "parse";
  auto* parse = app.add_subcommand("parse", "chart-parse a tagged document");
  std::vector<std::string> grammars;
  std::vector<std::string> roots;
  bool all_parses = false;
  parse->add_option("--grammar", grammars, "grammar module file (repeatable)")
      ->required()
      ->allow_extra_args(false)
      ->delimiter(',');
  parse->add_option("--root", roots, "accepted root category (repeatable)")
      ->allow_extra_args(false)
      ->delimiter(',');
  parse->add_flag("--all-parses", all_parses, "emit every complete analysis");
  add_io_options(parse, &parse_command);
  parse->callback([&] {
    std::string joined;
    for (const auto& g : grammars) joined += (joined.empty() ? "" : ",") + g;
    parse_command.spec.options["grammar"] = joined;
    std::string root_list;
    for (const auto& r : roots) root_list += (root_list.empty() ? "" : ",") + r;
    if (!root_list.empty()) parse_command.spec.options["root"] = root_list;
    if (all_parses) parse_command.spec.options["all-parses"] = "yes";
  });

  // sem
  StageCommand sem_command;
  sem_command.spec.name = "sem";
  auto* sem = app.add_subcommand("sem", "semantic tagging and case frames");
  std::string semlex, structural;
  bool frames = false, ex7 = false;
  sem->add_option("--semlex", semlex, "semantic lexicon")->required();
  sem->add_flag("--frames", frames, "case-frame analysis of a parsed document");
  sem->add_option("--structural", structural, "structural interpretation rules");
  sem->add_flag("--ex7-style", ex7, "slot-named relation elements");
  add_io_options(sem, &sem_command);
  sem->callback([&] {
    sem_command.spec.options["semlex"] = semlex;
    if (frames && !structural.empty())
      throw CLI::ValidationError("sem", "--frames and --structural exclude "
                                        "each other");
    if (frames) sem_command.spec.options["frames"] = "yes";
    if (!structural.empty()) sem_command.spec.options["structural"] = structural;
    if (ex7) sem_command.spec.options["ex7"] = "yes";
  });

  // report
  StageCommand report_command;
  report_command.spec.name = "report";
  auto* report = app.add_subcommand("report", "render a document as HTML");
  std::string audience = "expert";
  report->add_option("--audience", audience, "expert or developer")
      ->check(CLI::IsMember({"expert", "developer"}));
  add_io_options(report, &report_command);
  report->callback(
      [&] { report_command.spec.options["audience"] = audience; });

  // bootstrap
  BootstrapCommand bootstrap_command;
  auto* bootstrap = app.add_subcommand(
      "bootstrap", "induce lexicon and ontology candidates from a corpus");
  bootstrap->add_option("inputs", bootstrap_command.inputs,
                        "tagged XML files or a corpus directory")
      ->required();
  bootstrap->add_option("-o,--out", bootstrap_command.out_dir,
                        "output directory");
  bootstrap->add_option("--threshold", bootstrap_command.threshold,
                        "clustering similarity threshold [0,1]");

  // pipeline
  PipelineCommand pipeline_command;
  auto* pipeline = app.add_subcommand("pipeline", "run a multi-stage pipeline");
  pipeline->add_option("--spec", pipeline_command.spec_path,
                       "pipeline spec file");
  pipeline->add_option("--stage", pipeline_command.stage_lines,
                       "inline stage line, e.g. 'tag lexicon=seed.lex' "
                       "(repeatable)")
      ->allow_extra_args(false);
  pipeline->add_option("inputs", pipeline_command.inputs, "input files");
  pipeline->add_option("-o,--output", pipeline_command.output,
                       "output file for a single input");
  pipeline->add_option("--out-dir", pipeline_command.out_dir,
                       "output directory (required for multiple inputs)");
  pipeline->add_flag("--keep-intermediate",
                     pipeline_command.keep_intermediate,
                     "write and keep per-stage intermediate files");
  pipeline->add_option("--jobs", pipeline_command.jobs,
                       "documents processed in parallel");

  // lexicon
  auto* lexicon_cmd = app.add_subcommand("lexicon", "lexicon maintenance");
  lexicon_cmd->require_subcommand(1);
  LexiconImportCommand import_command;
  auto* import =
      lexicon_cmd->add_subcommand("import", "merge candidate entries");
  import->add_option("candidates", import_command.candidates,
                     "candidate lexicon file")
      ->required();
  import->add_option("--into", import_command.into, "target lexicon")
      ->required();
  import->add_option("-o,--output", import_command.output,
                     "write merged lexicon here instead of --into");

  CLI11_PARSE(app, argc, argv);

  try {
    if (structure->parsed()) return structure_command.run();
    if (tag->parsed()) {
      int status = tag_command.run();
      if (coverage) {
        xdoc::AnnotatedDocument doc = xdoc::parse_xml(
            read_input(tag_command.input));
        doc = xdoc::tag_document(std::move(doc),
                                 xdoc::Lexicon::load(lexicon),
                                 heuristics.empty()
                                     ? std::vector<xdoc::Heuristic>{}
                                     : xdoc::load_heuristics(heuristics));
        xdoc::CoverageStats stats = xdoc::coverage_report(doc);
        std::cerr << "tokens=" << stats.total
                  << " lexicon=" << stats.lexicon_covered
                  << " heuristic=" << stats.heuristic_covered
                  << " unknown=" << stats.unknown
                  << " unknown-ratio=" << stats.unknown_ratio() << "\n";
      }
      return status;
    }
    if (parse->parsed()) return parse_command.run();
    if (sem->parsed()) return sem_command.run();
    if (report->parsed()) return report_command.run();
    if (bootstrap->parsed()) return bootstrap_command.run();
    if (pipeline->parsed()) return pipeline_command.run();
    if (import->parsed()) return import_command.run();
  } catch (const xdoc::Error& e) {
    std::cerr << "xdoc: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "xdoc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
