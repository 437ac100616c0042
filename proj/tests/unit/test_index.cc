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

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "conditor/index.h"
#include "conditor/pipeline.h"
#include "conditor/resources.h"
#include "generators.h"
#include "oracles.h"

using namespace conditor;

namespace {

Topic doc(TopicId id, std::string name, std::string body) {
  Topic t;
  t.id = id;
  t.base_name = std::move(name);
  t.body = std::move(body);
  return t;
}

std::set<TopicId> ids_of(const std::vector<ScoredHit> &hits) {
  std::set<TopicId> ids;
  for (const ScoredHit &h : hits) ids.insert(h.topic);
  return ids;
}

}  // namespace

TEST_CASE("postings count every token of name, variants and body") {
  Topic t = doc(4, "Rey Sancho", "el rey murió. El REY");
  t.variants = {"Sancho"};
  const IndexSnapshot s = build_index(std::vector<Topic>{t});
  CHECK(s.doc_count == 1);
  CHECK(s.doc_lengths.at(4) == 8);
  const auto *rey = s.find("rey");
  REQUIRE(rey != nullptr);
  CHECK(rey->at(0).tf == 3);
  CHECK(rey->at(0).positions == std::vector<std::uint32_t>{0, 4, 7});
  CHECK(s.find("Rey") == nullptr);
  CHECK(s.surfaces.at(4).at(7) == "REY");
}

TEST_CASE("golden postings match a token scan") {
  const BuildResult r = compile_corpus(read_file(CONDITOR_TESTDATA_DIR "/golden_corpus.xml"),
                                       RuleSet::defaults());
  auto holders = [&](const std::string &term) {
    std::set<TopicId> ids;
    if (const auto *postings = r.index.find(term)) {
      for (const Posting &p : *postings) ids.insert(p.topic);
    }
    return ids;
  };
  auto scanned = [&](const std::string &term) {
    std::set<TopicId> ids;
    for (const auto &[id, topic] : r.map.topics) {
      for (const Token &t : document_tokens(topic)) {
        if (t.normalized == term) ids.insert(id);
      }
    }
    return ids;
  };
  for (const char *term : {"albarracin", "taifa", "taifas", "razin", "de"}) {
    CHECK(holders(term) == scanned(term));
  }
  CHECK(holders("albarracin").count(98) == 1);
  // No stemming: "taifas" does not post under "taifa".
  CHECK(holders("taifa") == std::set<TopicId>{98});
}

TEST_CASE("serialization round-trips and rejects damage") {
  testing::Gen gen(6);
  for (int round = 0; round < 50; ++round) {
    const IndexSnapshot s = build_index(testing::random_index_corpus(gen, 10, 40));
    const std::string bytes = serialize_index(s);
    REQUIRE(deserialize_index(bytes) == s);
    CHECK(serialize_index(deserialize_index(bytes)) == bytes);
    if (bytes.size() > 12) {
      CHECK_THROWS_AS(deserialize_index(bytes.substr(0, bytes.size() - 1 - gen.index(bytes.size() - 12))),
                      IndexFormatError);
    }
    CHECK_THROWS_AS(deserialize_index(bytes + "x"), IndexFormatError);
  }
  CHECK_THROWS_AS(deserialize_index("NOTANIDX"), IndexFormatError);
}

TEST_CASE("query syntax") {
  CHECK(parse_query("al-Malik") == Query{{"al", "malik"}, QueryMode::And, std::nullopt});
  CHECK(parse_query("rey OR emir").mode == QueryMode::Or);
  CHECK(parse_query("rey or emir").clauses == std::vector<std::string>{"rey", "or", "emir"});
  const Query q = parse_query("taifa \"de Albarracín\"");
  CHECK(q.clauses == std::vector<std::string>{"taifa"});
  CHECK(q.phrase == std::vector<std::string>{"de", "albarracin"});
  CHECK_THROWS_AS(parse_query(""), QueryError);
  CHECK_THROWS_AS(parse_query("  ... "), QueryError);
  CHECK_THROWS_AS(parse_query("\"abierta"), QueryError);
  CHECK_THROWS_AS(parse_query("\"a\" \"b\""), QueryError);
}

TEST_CASE("hand-computed scores") {
  const std::vector<Topic> docs = {doc(1, "A", "rey de rey"), doc(2, "B", "emir de"),
                                   doc(3, "C", "nada")};
  const IndexSnapshot s = build_index(docs);
  const auto hits = search(s, parse_query("rey de"), 10);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].topic == 1);
  // Document 1 has 4 tokens: rey tf 2 df 1, de tf 1 df 2 (stopword).
  const double expected = (2 * std::log(1.0 + 3.0 / 1.0) + 0.1 * std::log(1.0 + 3.0 / 2.0)) / 2.0;
  CHECK(hits[0].score == doctest::Approx(expected).epsilon(1e-12));
  CHECK(hits[0].snippet == "A rey de rey");
  CHECK_THROWS_AS(search(s, parse_query("rey"), 0), QueryError);
}

TEST_CASE("snippets center on the strongest term") {
  std::string body;
  for (int i = 0; i < 30; ++i) body += "w" + std::to_string(i) + " ";
  body += "clave";
  for (int i = 30; i < 40; ++i) body += " w" + std::to_string(i);
  const IndexSnapshot s = build_index(std::vector<Topic>{doc(1, "T", body), doc(2, "U", "w0")});
  const auto hits = search(s, parse_query("clave"), 1);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].snippet == "w22 w23 w24 w25 w26 w27 w28 w29 clave w30 w31 w32 w33 w34 w35 w36 w37");
}

TEST_CASE("search agrees with the linear-scan oracle") {
  testing::Gen gen(1234);
  const SearchParams &params = SearchParams::defaults();
  for (int round = 0; round < 60; ++round) {
    const std::vector<Topic> topics = testing::random_index_corpus(gen, 30, 120);
    const IndexSnapshot s = build_index(topics);
    for (int qi = 0; qi < 15; ++qi) {
      const std::string text = testing::random_query_text(gen, testing::index_vocabulary());
      CAPTURE(text);
      const Query q = parse_query(text);
      const std::size_t k = 1 + gen.index(12);
      const auto got = search(s, q, k);
      const auto want = testing::rank(
          testing::oracle_search(topics, q, params.stopwords, params.stopword_weight), k);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].topic == want[i].topic);
        CHECK(std::abs(got[i].score - want[i].score) <= 1e-9);
        CHECK(got[i].snippet == want[i].snippet);
      }

      if (q.clauses.size() >= 2) {
        Query either = q;
        either.mode = QueryMode::Or;
        Query both = q;
        both.mode = QueryMode::And;
        const auto and_ids = ids_of(search(s, both, 100000));
        const auto or_ids = ids_of(search(s, either, 100000));
        CHECK(std::includes(or_ids.begin(), or_ids.end(), and_ids.begin(), and_ids.end()));
      }
    }
  }
}

TEST_CASE("adding a document never lowers another document's tf") {
  testing::Gen gen(17);
  for (int round = 0; round < 50; ++round) {
    std::vector<Topic> topics = testing::random_index_corpus(gen, 10, 30);
    const IndexSnapshot before = build_index(topics);
    Topic extra = doc(999999, "Extra", "rey de Aragón y de Navarra");
    topics.push_back(extra);
    const IndexSnapshot after = build_index(topics);
    for (const auto &[term, postings] : before.postings) {
      for (const Posting &p : postings) {
        const auto *now = after.find(term);
        REQUIRE(now != nullptr);
        auto it = std::find_if(now->begin(), now->end(), [&](const Posting &x) { return x.topic == p.topic; });
        REQUIRE(it != now->end());
        CHECK(it->tf >= p.tf);
      }
    }
  }
}
