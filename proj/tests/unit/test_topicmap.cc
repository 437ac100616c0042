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

#include "conditor/topicmap.h"
#include "generators.h"
#include "oracles.h"

using namespace conditor;

namespace {

Topic topic(TopicId id, std::string name, std::string body = "") {
  Topic t;
  t.id = id;
  t.base_name = name;
  t.variants = {name};
  t.body = std::move(body);
  return t;
}

AliasTable aliases_of(const std::vector<Topic> &topics) {
  AliasTable a;
  for (const Topic &t : topics) a.add(t.id, merge_title_name(t.base_name));
  return a;
}

bool has_code(const std::vector<Lint> &lints, const std::string &code) {
  return std::any_of(lints.begin(), lints.end(), [&](const Lint &l) { return l.code == code; });
}

}  // namespace

TEST_CASE("assemble rejects duplicate topic ids") {
  CHECK_THROWS_AS(assemble({topic(1, "A"), topic(1, "B")}, {}), TopicMapError);
}

TEST_CASE("assemble repairs associations") {
  std::vector<Lint> lints;
  const TopicMap m = assemble(
      {topic(1, "A"), topic(2, "B"), topic(3, "C")},
      {{1, TopicId{2}, "rey", Direction::OneWay},
       {2, TopicId{1}, "rey", Direction::OneWay},
       {3, TopicId{1}, "x", Direction::TwoWay},
       {1, TopicId{3}, "x", Direction::OneWay},
       {1, TopicId{1}, "self", Direction::OneWay},
       {9, TopicId{1}, "ghost", Direction::OneWay},
       {2, TopicId{77}, "gone", Direction::OneWay},
       {3, std::string("taifa"), "referencia", Direction::OneWay}},
      {{2, "zeta"}, {2, "alfa"}, {2, "alfa"}, {42, "nadie"}}, &lints);

  CHECK(m.associations == std::vector<Association>{{1, TopicId{2}, "rey", Direction::TwoWay},
                                                   {1, TopicId{3}, "x", Direction::TwoWay}});
  CHECK(m.unresolved_refs ==
        std::vector<UnresolvedRef>{{2, "#77"}, {2, "alfa"}, {2, "zeta"}, {3, "taifa"}});
  CHECK(has_code(lints, "association.self_loop"));
  CHECK(has_code(lints, "association.dangling_source"));
  CHECK(has_code(lints, "association.dangling_target"));
}

TEST_CASE("directions have stable names") {
  CHECK(to_string(Direction::OneWay) == "one-way");
  CHECK(to_string(Direction::TwoWay) == "two-way");
  CHECK(parse_direction("two-way") == Direction::TwoWay);
  CHECK_FALSE(parse_direction("both").has_value());
}

TEST_CASE("mutual mentions collapse into one two-way association") {
  std::vector<Topic> topics = {topic(5, "Alfonso I", "Luchó contra Sancho Ramírez."),
                               topic(2, "Sancho Ramírez", "Padre de Alfonso I y rey."),
                               topic(8, "Ramiro", "Sin menciones.")};
  std::map<TopicId, TopicEvidence> evidence;
  EntitySpan role;
  role.kind = EntityKind::Role;
  role.value = "rey";
  role.char_span = {22, 25};
  evidence[2].roles = {role};
  const auto out = crossing_search(topics, aliases_of(topics), evidence);
  CHECK(out == std::vector<Association>{{2, TopicId{5}, "rey", Direction::TwoWay}});
}

TEST_CASE("one-sided mentions and marker references") {
  std::vector<Topic> topics = {topic(1, "Musa ibn Razin", "Vecino de Toledo."),
                               topic(2, "Yusuf", "Aliado de Musa Razin y de la taifa.")};
  std::map<TopicId, TopicEvidence> evidence;
  evidence[2].refs = {{"taifa", std::nullopt, {30, 35}},
                      {"Yusuf", std::nullopt, {0, 0}},
                      {"Musa ibn Razin", TopicId{1}, {0, 0}},
                      {"Otro", TopicId{404}, {0, 0}}};
  const auto out = crossing_search(topics, aliases_of(topics), evidence);
  CHECK(out == std::vector<Association>{
                   {2, TopicId{1}, std::string(kMentionRole), Direction::OneWay},
                   {2, TopicId{1}, std::string(kReferenceRole), Direction::OneWay},
                   {2, std::string("Otro"), std::string(kReferenceRole), Direction::OneWay},
                   {2, std::string("taifa"), std::string(kReferenceRole), Direction::OneWay}});
}

TEST_CASE("crossing search agrees with the brute-force scan") {
  testing::Gen gen(404);
  for (int round = 0; round < 150; ++round) {
    const testing::CrossingCorpus c = testing::random_crossing_corpus(gen, 7);
    const auto got = crossing_search(c.topics, aliases_of(c.topics), c.evidence);
    const auto want = testing::oracle_crossing(c.topics, c.evidence);
    REQUIRE(got == want);
    for (const Association &a : got) {
      if (a.direction == Direction::TwoWay) CHECK(a.source < *a.target_id());
    }
    CHECK(std::is_sorted(got.begin(), got.end()));
  }
}

TEST_CASE("assembled random maps keep their invariants") {
  testing::Gen gen(12);
  for (int round = 0; round < 200; ++round) {
    const TopicMap m = testing::random_topic_map(gen);
    CHECK(std::is_sorted(m.associations.begin(), m.associations.end()));
    CHECK(std::adjacent_find(m.associations.begin(), m.associations.end()) == m.associations.end());
    for (const Association &a : m.associations) {
      REQUIRE(a.target_id().has_value());
      CHECK(m.topics.count(a.source) == 1);
      CHECK(m.topics.count(*a.target_id()) == 1);
      CHECK(a.source != *a.target_id());
      if (a.direction == Direction::TwoWay) CHECK(a.source < *a.target_id());
    }
    CHECK(std::is_sorted(m.unresolved_refs.begin(), m.unresolved_refs.end()));
    // Assembling an assembled map changes nothing.
    std::vector<Topic> topics;
    for (const auto &[id, t] : m.topics) topics.push_back(t);
    CHECK(assemble(topics, m.associations, m.unresolved_refs) == m);
  }
}
