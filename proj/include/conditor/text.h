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

#ifndef CONDITOR_TEXT_H_
#define CONDITOR_TEXT_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace conditor {

// Entry identifiers double as topic identifiers.
using TopicId = std::uint64_t;

// Half-open interval [begin, end) counted in Unicode scalar values.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(const Span &other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool overlaps(const Span &other) const {
    return begin < other.end && other.begin < end;
  }
  auto operator<=>(const Span &) const = default;
};

// A non-fatal diagnostic collected while processing a corpus.
struct Lint {
  std::string code;
  std::string message;
  std::optional<TopicId> entry;

  bool operator==(const Lint &) const = default;
};

class EncodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Strict UTF-8 decoding; throws EncodingError on malformed input.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string &out, char32_t cp);
bool is_valid_utf8(std::string_view text);

// Number of code points in a valid UTF-8 string.
std::size_t utf8_length(std::string_view text);

// Maps between code point positions and byte offsets of one UTF-8 string.
class Utf8Index {
 public:
  explicit Utf8Index(std::string_view text);

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t byte_of(std::size_t cp) const { return offsets_.at(cp); }
  // Code point containing (or starting at) the given byte offset.
  std::size_t cp_of(std::size_t byte) const;
  std::string_view slice(Span span) const;
  char32_t at(std::size_t cp) const;

 private:
  std::string_view text_;
  std::vector<std::size_t> offsets_;
};

// Character classes used throughout the text pipeline (ICU-backed).
bool is_word_char(char32_t cp);
bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_space(char32_t cp);

// Lowercase, strip diacritics (keeping n-tilde), recompose.
std::string fold(std::string_view text);
std::string to_lower(std::string_view text);

std::string trim(std::string_view text);
// Collapses every whitespace run to one ASCII space and trims the ends.
std::string collapse_whitespace(std::string_view text);

}  // namespace conditor

#endif  // CONDITOR_TEXT_H_
