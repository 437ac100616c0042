// Copyright 2026 The Conditor Authors
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

// XTM-DITA serialization. The layout is documented in docs/format-xtm-dita.md.

#ifndef CONDITOR_EMIT_H_
#define CONDITOR_EMIT_H_

#include <string>
#include <string_view>
#include <vector>

#include "conditor/topicmap.h"

namespace conditor {

inline constexpr std::string_view kDitaArchNamespace =
    "http://dita.oasis-open.org/architecture/2005/";
inline constexpr std::string_view kXlinkNamespace = "http://www.w3.org/1999/xlink";

// Byte-deterministic. Strings must hold only characters allowed in XML 1.0.
std::string emit_xtm_dita(const TopicMap &map);

// Inverse of emit_xtm_dita. Throws xml::ParseError for malformed XML or a
// missing mandatory element; unknown elements are skipped and linted.
TopicMap parse_xtm_dita(std::string_view document, std::vector<Lint> *lints = nullptr);

}  // namespace conditor

#endif  // CONDITOR_EMIT_H_
