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

#ifndef XDOC_REPORT_HPP_
#define XDOC_REPORT_HPP_

#include <string>

#include "xdoc/xml.hpp"

namespace xdoc {

enum class Audience { kExpert, kDeveloper };

// Static HTML rendering of an annotated document. The expert view shows
// color-coded categories, semantic types and extracted relations and hides
// processing internals (SRC, AS, RULE); the developer view shows every
// attribute plus the raw tree.
std::string render_report(const AnnotatedDocument& doc, Audience audience);

}  // namespace xdoc

#endif  // XDOC_REPORT_HPP_
