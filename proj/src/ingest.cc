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

#include "conditor/ingest.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "conditor/xml.h"

namespace conditor {

namespace {

constexpr std::string_view kOpen = "$$$";
constexpr std::string_view kSeparator = "%%";
// Longest id that always fits in 64 bits.
constexpr std::size_t kMaxIdDigits = 18;

std::optional<TopicId> parse_id(std::string_view digits) {
  if (digits.empty() || digits.size() > kMaxIdDigits) return std::nullopt;
  TopicId value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value == 0) {
    return std::nullopt;
  }
  return value;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

void collect_text(const xml::Element &e, std::string &out) {
  out += e.text;
  for (const auto &c : e.children) collect_text(*c, out);
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_block_tag(std::string_view name) {
  return name == "p" || name == "br" || name == "div";
}

}  // namespace

Corpus parse_corpus(std::string_view xml_document) {
  auto root = xml::parse(xml_document);
  if (root->name != "voces") {
    throw xml::ParseError("expected root element <voces>, found <" + root->name + ">",
                          root->line, root->column);
  }

  Corpus corpus;
  std::set<TopicId> seen;
  std::size_t ordinal = 0;
  for (const auto &node : root->children) {
    if (node->name != "voz") {
      corpus.lints.push_back({"ingest.unknown_element",
                              "ignored <" + node->name + "> at line " +
                                  std::to_string(node->line),
                              std::nullopt});
      continue;
    }
    ++ordinal;
    auto fail = [&](std::string message) {
      corpus.errors.push_back({ordinal, node->line, std::move(message)});
    };

    const xml::Element *id_node = node->child("vozId");
    if (id_node == nullptr) {
      fail("missing <vozId>");
      continue;
    }
    const std::string id_text = trim(id_node->text);
    const auto voz_id = all_digits(id_text) ? parse_id(id_text) : std::nullopt;
    if (!voz_id) {
      fail("non-numeric <vozId> '" + id_text + "'");
      continue;
    }

    const std::string *sub = node->attribute("subcategoriaId");
    // Some exports misspell the attribute.
    if (sub == nullptr) sub = node->attribute("subcategorialId");
    if (sub == nullptr) {
      fail("entry " + id_text + ": missing subcategoriaId");
      continue;
    }
    const std::string sub_text = trim(*sub);
    const auto sub_id = all_digits(sub_text) ? parse_id(sub_text) : std::nullopt;
    if (!sub_id) {
      fail("entry " + id_text + ": non-numeric subcategoriaId '" + sub_text + "'");
      continue;
    }

    const xml::Element *name_node = node->child("nombre");
    std::string name;
    if (name_node != nullptr) {
      collect_text(*name_node, name);
      name = collapse_whitespace(name);
    }
    if (name.empty()) {
      fail("entry " + id_text + ": empty <nombre>");
      continue;
    }

    if (!seen.insert(*voz_id).second) {
      fail("duplicate vozId " + id_text);
      continue;
    }

    SourceEntry entry;
    entry.voz_id = *voz_id;
    entry.subcategory_id = *sub_id;
    entry.name = std::move(name);
    if (const xml::Element *desc = node->child("descripcion")) {
      collect_text(*desc, entry.raw_description);
    }
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

MarkerExtraction extract_markers(std::string_view raw) {
  MarkerExtraction result;
  std::string &out = result.plain_text;
  out.reserve(raw.size());
  std::size_t out_cps = 0;
  std::size_t i = 0;

  while (i < raw.size()) {
    if (raw.compare(i, kOpen.size(), kOpen) != 0) {
      const unsigned char c = static_cast<unsigned char>(raw[i]);
      if ((c & 0xC0) != 0x80) ++out_cps;
      out.push_back(raw[i]);
      ++i;
      continue;
    }

    const std::size_t term_begin = i + kOpen.size();
    const std::size_t separator = raw.find(kSeparator, term_begin);
    const std::size_t next_open = raw.find(kOpen, term_begin);
    bool ok = separator != std::string_view::npos &&
              (next_open == std::string_view::npos || separator < next_open) &&
              separator > term_begin;
    std::size_t digits_end = 0;
    if (ok) {
      digits_end = separator + kSeparator.size();
      while (digits_end < raw.size() &&
             std::isdigit(static_cast<unsigned char>(raw[digits_end]))) {
        ++digits_end;
      }
      ok = raw.compare(digits_end, kOpen.size(), kOpen) == 0;
    }
    if (!ok) {
      result.lints.push_back({"marker.unterminated",
                              "unterminated marker at byte " + std::to_string(i),
                              std::nullopt});
      out.append(kOpen);
      out_cps += kOpen.size();
      i += kOpen.size();
      continue;
    }

    const std::string_view term = raw.substr(term_begin, separator - term_begin);
    const std::string_view digits = raw.substr(
        separator + kSeparator.size(), digits_end - separator - kSeparator.size());
    MarkerRef ref;
    ref.surface_term = std::string(term);
    if (!digits.empty()) {
      ref.target_id = parse_id(digits);
      if (!ref.target_id) {
        result.lints.push_back({"marker.bad_id",
                                "marker id '" + std::string(digits) + "' out of range",
                                std::nullopt});
      }
    }
    const std::size_t term_cps = utf8_length(term);
    ref.char_span = {out_cps, out_cps + term_cps};
    out.append(term);
    out_cps += term_cps;
    result.refs.push_back(std::move(ref));
    i = digits_end + kOpen.size();
  }
  return result;
}

CleanSource clean_description(std::string_view raw) {
  // Split on tags; block tags delimit paragraphs, other tags vanish.
  std::vector<std::string> chunks(1);
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == '<') {
      const std::size_t close = raw.find('>', i + 1);
      std::size_t name_begin = i + 1;
      if (name_begin < raw.size() && raw[name_begin] == '/') ++name_begin;
      const bool looks_like_tag =
          close != std::string_view::npos && name_begin < close &&
          std::isalpha(static_cast<unsigned char>(raw[name_begin]));
      if (looks_like_tag) {
        std::size_t name_end = name_begin;
        while (name_end < close &&
               std::isalnum(static_cast<unsigned char>(raw[name_end]))) {
          ++name_end;
        }
        const std::string name = lower_ascii(raw.substr(name_begin, name_end - name_begin));
        if (is_block_tag(name)) chunks.emplace_back();
        i = close + 1;
        continue;
      }
    }
    chunks.back().push_back(raw[i]);
    ++i;
  }

  CleanSource clean;
  std::size_t offset = 0;
  for (const std::string &chunk : chunks) {
    std::string collapsed = collapse_whitespace(chunk);
    if (collapsed.empty()) continue;
    MarkerExtraction markers = extract_markers(collapsed);
    if (!clean.text.empty()) {
      clean.text.push_back('\n');
      ++offset;
    }
    const std::size_t length = utf8_length(markers.plain_text);
    clean.paragraphs.push_back({offset, offset + length});
    for (MarkerRef &ref : markers.refs) {
      ref.char_span.begin += offset;
      ref.char_span.end += offset;
      clean.refs.push_back(std::move(ref));
    }
    for (Lint &lint : markers.lints) clean.lints.push_back(std::move(lint));
    clean.text += markers.plain_text;
    offset += length;
  }
  return clean;
}

}  // namespace conditor
