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

#include "conditor/normalize.h"

#include <algorithm>

namespace conditor {

namespace {

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool is_closer(char32_t c) {
  switch (c) {
    case U')': case U']': case U'"': case U'\'':
    case U'»': case U'”': case U'’':
      return true;
    default:
      return false;
  }
}

bool is_abbreviation(const std::u32string &cps, std::size_t period,
                     std::size_t paragraph_begin, const Lexicon &abbreviations) {
  std::size_t b = period;
  while (b > paragraph_begin && is_letter(cps[b - 1])) --b;
  if (b == period) return false;
  if (period - b == 1) return true;
  return abbreviations.contains(encode_utf8(std::u32string_view(cps).substr(b, period - b)));
}

void segment_paragraph(const std::u32string &cps, Span paragraph,
                       const Lexicon &abbreviations, std::vector<Span> &out) {
  std::size_t start = paragraph.begin;
  auto skip_space = [&](std::size_t i) {
    while (i < paragraph.end && is_space(cps[i])) ++i;
    return i;
  };
  start = skip_space(start);

  for (std::size_t i = start; i < paragraph.end; ++i) {
    if (!is_terminator(cps[i])) continue;
    std::size_t end = i + 1;
    while (end < paragraph.end && is_closer(cps[end])) ++end;
    const std::size_t next = skip_space(end);
    if (next == paragraph.end) break;  // the tail handles it
    if (next == end || !is_upper(cps[next])) continue;
    if (cps[i] == U'.' && is_abbreviation(cps, i, paragraph.begin, abbreviations)) continue;
    if (end > start) out.push_back({start, end});
    start = next;
    i = next - 1;
  }

  std::size_t tail_end = paragraph.end;
  while (tail_end > start && is_space(cps[tail_end - 1])) --tail_end;
  if (tail_end > start) out.push_back({start, tail_end});
}

}  // namespace

CleanText segment(std::string text, std::vector<Span> paragraphs,
                  std::vector<MarkerRef> refs, const TextResources &resources) {
  const std::u32string cps = decode_utf8(text);
  if (paragraphs.empty() && !cps.empty()) paragraphs.push_back({0, cps.size()});

  CleanText clean;
  for (const Span &p : paragraphs) {
    segment_paragraph(cps, p, resources.abbreviations, clean.sentences);
  }
  clean.text = std::move(text);
  clean.paragraphs = std::move(paragraphs);
  clean.refs = std::move(refs);
  return clean;
}

CleanText segment(CleanSource source, const TextResources &resources) {
  return segment(std::move(source.text), std::move(source.paragraphs),
                 std::move(source.refs), resources);
}

std::vector<Token> tokenize(std::string_view text) {
  const std::u32string cps = decode_utf8(text);
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_word_char(cps[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && is_word_char(cps[j])) ++j;
    Token token;
    token.surface = encode_utf8(std::u32string_view(cps).substr(i, j - i));
    token.normalized = fold(token.surface);
    token.char_span = {i, j};
    if (!token.normalized.empty()) {
      token.ordinal = tokens.size();
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

std::vector<std::string> normalized_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : tokenize(text)) out.push_back(std::move(t.normalized));
  return out;
}

TitleName merge_title_name(std::string_view title) {
  TitleName name;
  const std::string collapsed = collapse_whitespace(title);
  std::size_t pos = 0;
  while (pos < collapsed.size()) {
    std::size_t space = collapsed.find(' ', pos);
    if (space == std::string::npos) space = collapsed.size();
    name.particles.push_back(collapsed.substr(pos, space - pos));
    pos = space + 1;
  }
  name.canonical = collapsed;
  name.aliases.push_back(collapsed);
  return name;
}

std::vector<std::vector<std::string>> match_forms(const TitleName &title,
                                                  const TextResources &resources) {
  std::vector<std::vector<std::string>> forms;
  for (const std::string &alias : title.aliases) {
    std::vector<std::string> full = normalized_tokens(alias);
    if (full.empty()) continue;
    std::vector<std::string> bare;
    std::copy_if(full.begin(), full.end(), std::back_inserter(bare),
                 [&](const std::string &t) { return !resources.connectives.contains(t); });
    if (std::find(forms.begin(), forms.end(), full) == forms.end()) forms.push_back(full);
    if (bare.size() >= 2 && bare != full &&
        std::find(forms.begin(), forms.end(), bare) == forms.end()) {
      forms.push_back(std::move(bare));
    }
  }
  return forms;
}

}  // namespace conditor
