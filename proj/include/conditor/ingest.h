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

// Reading of the source corpus: a <voces> document of <voz> entries whose
// descriptions carry escaped paragraph tags and inline $$$term%%id$$$
// cross-reference markers.

#ifndef CONDITOR_INGEST_H_
#define CONDITOR_INGEST_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conditor/text.h"

namespace conditor {

struct SourceEntry {
  TopicId voz_id = 0;
  TopicId subcategory_id = 0;
  std::string name;
  // <descripcion> payload after XML entity decoding (tags still present).
  std::string raw_description;

  bool operator==(const SourceEntry &) const = default;
};

struct MarkerRef {
  std::string surface_term;
  std::optional<TopicId> target_id;
  // Position of surface_term in the marker-free output text.
  Span char_span;

  bool operator==(const MarkerRef &) const = default;
};

// A <voz> that could not be turned into a SourceEntry.
struct EntryError {
  // 1-based position of the <voz> element in the document.
  std::size_t ordinal = 0;
  long line = 0;
  std::string message;
};

struct Corpus {
  std::vector<SourceEntry> entries;
  std::vector<EntryError> errors;
  std::vector<Lint> lints;
};

// Throws xml::ParseError for malformed XML or a wrong root element.
// Per-entry problems are collected in Corpus::errors and the entry skipped.
Corpus parse_corpus(std::string_view xml_document);

struct MarkerExtraction {
  std::string plain_text;
  std::vector<MarkerRef> refs;
  std::vector<Lint> lints;
};

// Replaces every `$$$term%%digits$$$` by `term`. Unterminated markers are
// kept as literal text and reported as lints. Never throws on valid UTF-8.
MarkerExtraction extract_markers(std::string_view raw_text);

// A description reduced to plain prose: tags removed, whitespace collapsed,
// markers stripped. Paragraphs are separated by a single '\n'.
struct CleanSource {
  std::string text;
  std::vector<Span> paragraphs;
  std::vector<MarkerRef> refs;
  std::vector<Lint> lints;
};

CleanSource clean_description(std::string_view raw_description);

}  // namespace conditor

#endif  // CONDITOR_INGEST_H_
