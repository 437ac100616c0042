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

#include "conditor/index.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace conditor {

namespace {

constexpr std::string_view kMagic = "CNDRINX1";

void put_u32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string &out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_str(std::string &out, std::string_view s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out += s;
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  std::uint64_t u64() { return uint(8); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    std::string_view v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }
  bool done() const { return pos_ == data_.size(); }
  // Guards allocations driven by counts read from the file.
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw IndexFormatError("truncated index");
  }

 private:
  std::uint64_t uint(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

void append_terms(std::vector<std::string> &out, std::string_view text) {
  for (std::string &t : normalized_tokens(text)) out.push_back(std::move(t));
}

bool has_phrase_at(const IndexSnapshot &snapshot, TopicId doc,
                   const std::vector<std::string> &phrase) {
  std::vector<const Posting *> lists;
  for (const std::string &term : phrase) {
    const std::vector<Posting> *postings = snapshot.find(term);
    if (postings == nullptr) return false;
    auto it = std::lower_bound(postings->begin(), postings->end(), doc,
                               [](const Posting &p, TopicId id) { return p.topic < id; });
    if (it == postings->end() || it->topic != doc) return false;
    lists.push_back(&*it);
  }
  for (std::uint32_t start : lists.front()->positions) {
    bool all = true;
    for (std::size_t i = 1; i < lists.size() && all; ++i) {
      all = std::binary_search(lists[i]->positions.begin(), lists[i]->positions.end(),
                               start + static_cast<std::uint32_t>(i));
    }
    if (all) return true;
  }
  return false;
}

std::set<TopicId> docs_with(const IndexSnapshot &snapshot, const std::string &term) {
  std::set<TopicId> out;
  if (const std::vector<Posting> *postings = snapshot.find(term)) {
    for (const Posting &p : *postings) out.insert(p.topic);
  }
  return out;
}

}  // namespace

const std::vector<Posting> *IndexSnapshot::find(std::string_view term) const {
  auto it = postings.find(std::string(term));
  return it == postings.end() ? nullptr : &it->second;
}

std::vector<Token> document_tokens(const Topic &topic) {
  std::vector<Token> out;
  auto add = [&](std::string_view text) {
    for (Token &t : tokenize(text)) {
      t.ordinal = out.size();
      out.push_back(std::move(t));
    }
  };
  add(topic.base_name);
  for (const std::string &v : topic.variants) add(v);
  add(topic.body);
  return out;
}

IndexSnapshot build_index(const std::vector<Topic> &topics) {
  IndexSnapshot s;
  std::vector<const Topic *> ordered;
  for (const Topic &t : topics) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](const Topic *a, const Topic *b) { return a->id < b->id; });
  for (const Topic *topic : ordered) {
    const std::vector<Token> tokens = document_tokens(*topic);
    ++s.doc_count;
    s.doc_lengths[topic->id] = static_cast<std::uint32_t>(tokens.size());
    std::vector<std::string> &surfaces = s.surfaces[topic->id];
    std::map<std::string, std::vector<std::uint32_t>> positions;
    for (const Token &t : tokens) {
      surfaces.push_back(t.surface);
      positions[t.normalized].push_back(static_cast<std::uint32_t>(t.ordinal));
    }
    // Topics are visited in id order, so appending keeps postings sorted.
    for (auto &[term, pos] : positions) {
      s.postings[term].push_back(
          {topic->id, static_cast<std::uint32_t>(pos.size()), std::move(pos)});
    }
  }
  return s;
}

IndexSnapshot build_index(const TopicMap &map) {
  std::vector<Topic> topics;
  for (const auto &[id, t] : map.topics) topics.push_back(t);
  return build_index(topics);
}

std::string serialize_index(const IndexSnapshot &s) {
  std::string out(kMagic);
  put_u64(out, s.doc_count);
  put_u32(out, static_cast<std::uint32_t>(s.doc_lengths.size()));
  for (const auto &[id, length] : s.doc_lengths) {
    put_u64(out, id);
    put_u32(out, length);
    auto it = s.surfaces.find(id);
    const std::size_t n = it == s.surfaces.end() ? 0 : it->second.size();
    put_u32(out, static_cast<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i) put_str(out, it->second[i]);
  }
  put_u32(out, static_cast<std::uint32_t>(s.postings.size()));
  for (const auto &[term, postings] : s.postings) {
    put_str(out, term);
    put_u32(out, static_cast<std::uint32_t>(postings.size()));
    for (const Posting &p : postings) {
      put_u64(out, p.topic);
      put_u32(out, p.tf);
      for (std::uint32_t pos : p.positions) put_u32(out, pos);
    }
  }
  return out;
}

IndexSnapshot deserialize_index(std::string_view bytes) {
  Reader r(bytes);
  if (r.bytes(kMagic.size()) != kMagic) throw IndexFormatError("not an index file");
  IndexSnapshot s;
  s.doc_count = r.u64();
  const std::uint32_t docs = r.u32();
  for (std::uint32_t d = 0; d < docs; ++d) {
    const TopicId id = r.u64();
    s.doc_lengths[id] = r.u32();
    const std::uint32_t n = r.u32();
    r.need(static_cast<std::size_t>(n) * 4);
    std::vector<std::string> surfaces(n);
    for (std::string &surface : surfaces) surface = r.str();
    if (n > 0) s.surfaces[id] = std::move(surfaces);
  }
  const std::uint32_t terms = r.u32();
  for (std::uint32_t t = 0; t < terms; ++t) {
    std::string term = r.str();
    const std::uint32_t n = r.u32();
    r.need(static_cast<std::size_t>(n) * 12);
    std::vector<Posting> postings(n);
    for (Posting &p : postings) {
      p.topic = r.u64();
      p.tf = r.u32();
      r.need(static_cast<std::size_t>(p.tf) * 4);
      p.positions.resize(p.tf);
      for (std::uint32_t &pos : p.positions) pos = r.u32();
    }
    s.postings.emplace(std::move(term), std::move(postings));
  }
  if (!r.done()) throw IndexFormatError("trailing bytes after index");
  return s;
}

Query parse_query(std::string_view text) {
  Query q;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '"') {
      const std::size_t close = text.find('"', i + 1);
      if (close == std::string_view::npos) throw QueryError("unbalanced quote in query");
      if (q.phrase) throw QueryError("only one quoted phrase is supported");
      std::vector<std::string> terms;
      append_terms(terms, text.substr(i + 1, close - i - 1));
      if (!terms.empty()) q.phrase = std::move(terms);
      i = close + 1;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '\n' &&
           text[end] != '\r' && text[end] != '"') {
      ++end;
    }
    const std::string_view word = text.substr(i, end - i);
    if (word == "OR") {
      q.mode = QueryMode::Or;
    } else {
      append_terms(q.clauses, word);
    }
    i = end;
  }
  if (q.clauses.empty() && !q.phrase) throw QueryError("empty query");
  return q;
}

const SearchParams &SearchParams::defaults() {
  static const SearchParams params = [] {
    SearchParams p;
    p.stopwords = TextResources::defaults().stopwords.words();
    return p;
  }();
  return params;
}

std::vector<ScoredHit> search(const IndexSnapshot &snapshot, const Query &query, std::size_t k,
                              const SearchParams &params) {
  if (k == 0) throw QueryError("k must be positive");
  if (query.clauses.empty() && (!query.phrase || query.phrase->empty())) {
    throw QueryError("empty query");
  }

  std::set<TopicId> candidates;
  if (!query.clauses.empty()) {
    bool first = true;
    for (const std::string &term : query.clauses) {
      std::set<TopicId> docs = docs_with(snapshot, term);
      if (query.mode == QueryMode::Or) {
        candidates.insert(docs.begin(), docs.end());
      } else if (first) {
        candidates = std::move(docs);
      } else {
        std::erase_if(candidates, [&](TopicId id) { return docs.count(id) == 0; });
      }
      first = false;
    }
  }
  if (query.phrase && !query.phrase->empty()) {
    std::set<TopicId> matches;
    for (TopicId id : docs_with(snapshot, query.phrase->front())) {
      if (has_phrase_at(snapshot, id, *query.phrase)) matches.insert(id);
    }
    if (query.clauses.empty()) {
      candidates = std::move(matches);
    } else {
      std::erase_if(candidates, [&](TopicId id) { return matches.count(id) == 0; });
    }
  }

  std::set<std::string> terms(query.clauses.begin(), query.clauses.end());
  if (query.phrase) terms.insert(query.phrase->begin(), query.phrase->end());

  const double n = static_cast<double>(snapshot.doc_count);
  std::vector<ScoredHit> hits;
  for (TopicId id : candidates) {
    double sum = 0.0;
    double best = -1.0;
    std::optional<std::uint32_t> anchor;
    for (const std::string &term : terms) {
      const std::vector<Posting> *postings = snapshot.find(term);
      if (postings == nullptr) continue;
      auto it = std::lower_bound(postings->begin(), postings->end(), id,
                                 [](const Posting &p, TopicId x) { return p.topic < x; });
      if (it == postings->end() || it->topic != id) continue;
      const double df = static_cast<double>(postings->size());
      const double sw = params.stopwords.count(term) != 0 ? params.stopword_weight : 1.0;
      const double contribution = static_cast<double>(it->tf) * std::log(1.0 + n / df) * sw;
      sum += contribution;
      if (contribution > best) {
        best = contribution;
        anchor = it->positions.front();
      }
    }
    const double length = static_cast<double>(snapshot.doc_lengths.at(id));
    ScoredHit hit;
    hit.topic = id;
    hit.score = sum / std::sqrt(length);
    if (anchor) {
      const std::vector<std::string> &surfaces = snapshot.surfaces.at(id);
      const std::size_t from = *anchor >= kSnippetRadius ? *anchor - kSnippetRadius : 0;
      const std::size_t to = std::min(surfaces.size(), *anchor + kSnippetRadius + 1);
      for (std::size_t i = from; i < to; ++i) {
        if (i > from) hit.snippet += ' ';
        hit.snippet += surfaces[i];
      }
    }
    hits.push_back(std::move(hit));
  }
  std::sort(hits.begin(), hits.end(), [](const ScoredHit &a, const ScoredHit &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.topic < b.topic;
  });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

}  // namespace conditor
