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

#ifndef XDOC_ERRORS_HPP_
#define XDOC_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xdoc {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Ill-formed XML input. `position` is a byte offset into the input.
class MalformedXml : public Error {
 public:
  MalformedXml(std::size_t position, const std::string& reason)
      : Error("malformed XML at offset " + std::to_string(position) + ": " +
              reason),
        position(position),
        reason(reason) {}
  std::size_t position;
  std::string reason;
};

class InvalidEncoding : public Error {
 public:
  explicit InvalidEncoding(std::size_t position)
      : Error("invalid UTF-8 byte sequence at offset " +
              std::to_string(position)),
        position(position) {}
  std::size_t position;
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

// Line-oriented resource files report the offending line (1-based).
class FormatError : public Error {
 public:
  FormatError(const std::string& file, std::size_t line,
              const std::string& reason)
      : Error(file + ":" + std::to_string(line) + ": " + reason),
        file(file),
        line(line),
        reason(reason) {}
  std::string file;
  std::size_t line;
  std::string reason;
};

class LexiconFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

class GrammarFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

class DuplicateRuleId : public Error {
 public:
  explicit DuplicateRuleId(const std::string& id)
      : Error("duplicate grammar rule id: " + id), id(id) {}
  std::string id;
};

class UnknownParadigm : public Error {
 public:
  explicit UnknownParadigm(const std::string& id)
      : Error("unknown paradigm: " + id), id(id) {}
  std::string id;
};

class FormSyntaxError : public Error {
 public:
  explicit FormSyntaxError(const std::string& text)
      : Error("cannot parse form constraint: " + text), text(text) {}
  std::string text;
};

class PatternError : public Error {
 public:
  explicit PatternError(const std::string& what) : Error(what) {}
};

class DependencyOrderError : public Error {
 public:
  explicit DependencyOrderError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace xdoc

#endif  // XDOC_ERRORS_HPP_
