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

#ifndef CONDITOR_NORMALIZE_H_
#define CONDITOR_NORMALIZE_H_

#include <string>
#include <string_view>
#include <vector>

#include "conditor/ingest.h"
#include "conditor/resources.h"
#include "conditor/text.h"

namespace conditor {

struct CleanText {
  std::string text;
  std::vector<Span> sentences;
  std::vector<Span> paragraphs;
  std::vector<MarkerRef> refs;

  bool operator==(const CleanText &) const = default;
};

struct Token {
  std::string surface;
  std::string normalized;
  Span char_span;
  std::size_t ordinal = 0;

  bool operator==(const Token &) const = default;
};

struct TitleName {
  std::string canonical;
  std::vector<std::string> particles;
  std::vector<std::string> aliases;

  bool operator==(const TitleName &) const = default;
};

// Splits paragraphs into sentences on '.', '!' or '?' followed by
// whitespace and an uppercase letter, or by the end of the paragraph.
// A period after a single letter or a listed abbreviation never splits.
// Empty `paragraphs` means the whole text is one paragraph.
CleanText segment(std::string text, std::vector<Span> paragraphs,
                  std::vector<MarkerRef> refs,
                  const TextResources &resources = TextResources::defaults());

// Convenience for the ingest output.
CleanText segment(CleanSource source,
                  const TextResources &resources = TextResources::defaults());

std::vector<Token> tokenize(std::string_view text);
inline std::vector<Token> tokenize(const CleanText &clean) { return tokenize(clean.text); }

// Folded token forms only.
std::vector<std::string> normalized_tokens(std::string_view text);

TitleName merge_title_name(std::string_view title);

// Folded token sequences under which a title can be recognized in prose:
// the full form, and the form without connective particles when that still
// has at least two tokens.
std::vector<std::vector<std::string>> match_forms(
    const TitleName &title,
    const TextResources &resources = TextResources::defaults());

}  // namespace conditor

#endif  // CONDITOR_NORMALIZE_H_
