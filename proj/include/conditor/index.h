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

// Positional inverted index with TF-IDF ranking.
//
// A document is the concatenated token stream of a topic's base name, its
// variants and its body; positions are ordinals in that stream. For a query
// with distinct terms T the score of document d is
//
//   sum over t in T (ascending) of tf(t,d) * ln(1 + N/df(t)) * sw(t)
//   divided by sqrt(length(d))
//
// with sw(t) the stopword weight for stopwords and 1 otherwise.

#ifndef CONDITOR_INDEX_H_
#define CONDITOR_INDEX_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conditor/resources.h"
#include "conditor/topicmap.h"

namespace conditor {

struct Posting {
  TopicId topic = 0;
  std::uint32_t tf = 0;
  std::vector<std::uint32_t> positions;

  bool operator==(const Posting &) const = default;
};

struct IndexSnapshot {
  std::uint64_t doc_count = 0;
  // term -> postings sorted by topic id.
  std::map<std::string, std::vector<Posting>> postings;
  std::map<TopicId, std::uint32_t> doc_lengths;
  // Surface form of every token, for snippets.
  std::map<TopicId, std::vector<std::string>> surfaces;

  const std::vector<Posting> *find(std::string_view term) const;
  bool operator==(const IndexSnapshot &) const = default;
};

// Tokens of a topic in indexing order: base name, variants, body.
std::vector<Token> document_tokens(const Topic &topic);

IndexSnapshot build_index(const std::vector<Topic> &topics);
IndexSnapshot build_index(const TopicMap &map);

class IndexFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Byte-reproducible; deserialize(serialize(s)) == s. Layout in
// docs/format-index.md.
std::string serialize_index(const IndexSnapshot &snapshot);
IndexSnapshot deserialize_index(std::string_view bytes);

enum class QueryMode { And, Or };

struct Query {
  std::vector<std::string> clauses;  // folded terms
  QueryMode mode = QueryMode::And;
  std::optional<std::vector<std::string>> phrase;

  bool operator==(const Query &) const = default;
};

class QueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Whitespace-separated terms, at most one "quoted phrase", and the keyword
// OR (upper case) to switch to disjunction. Terms are tokenized and folded,
// so "al-Malik" contributes "al" and "malik". Throws QueryError when no
// term remains or a quote is unbalanced.
Query parse_query(std::string_view text);

struct SearchParams {
  std::set<std::string> stopwords;  // folded
  double stopword_weight = 0.1;

  static const SearchParams &defaults();
};

struct ScoredHit {
  TopicId topic = 0;
  double score = 0.0;
  std::string snippet;

  bool operator==(const ScoredHit &) const = default;
};

inline constexpr std::size_t kSnippetRadius = 8;
inline constexpr std::size_t kDefaultK = 10;

// At most k hits ordered by (score desc, topic asc). Throws QueryError for
// k == 0 or a query without terms.
std::vector<ScoredHit> search(const IndexSnapshot &snapshot, const Query &query, std::size_t k,
                              const SearchParams &params = SearchParams::defaults());

}  // namespace conditor

#endif  // CONDITOR_INDEX_H_
