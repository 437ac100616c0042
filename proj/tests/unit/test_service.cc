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

#include <cstdlib>
#include <thread>

#include "httplib.h"

#include "conditor/pipeline.h"
#include "conditor/resources.h"
#include "conditor/service.h"
#include "generators.h"
#include "oracles.h"

using namespace conditor;

namespace {

SearchService golden_service() {
  BuildResult r = compile_corpus(read_file(CONDITOR_TESTDATA_DIR "/golden_corpus.xml"),
                                 RuleSet::defaults());
  return SearchService(std::move(r.map), std::move(r.index));
}

TopicMap chain() {
  std::vector<Topic> topics;
  for (TopicId id = 1; id <= 5; ++id) {
    Topic t;
    t.id = id;
    t.base_name = "T" + std::to_string(id);
    topics.push_back(t);
  }
  return assemble(topics, {{1, TopicId{2}, "a", Direction::OneWay},
                           {2, TopicId{3}, "b", Direction::TwoWay},
                           {4, TopicId{3}, "c", Direction::OneWay},
                           {5, TopicId{1}, "d", Direction::OneWay}});
}

struct RunningServer {
  HttpServer server;
  int port;
  std::thread thread;

  explicit RunningServer(const SearchService &service)
      : server(service), port(server.bind("127.0.0.1", 0)), thread([this] { server.listen(); }) {}
  ~RunningServer() {
    server.stop();
    thread.join();
  }
};

}  // namespace

TEST_CASE("graph neighbourhoods follow directions") {
  const TopicMap m = chain();
  const GraphExport g = graph_neighborhood(m, 1, 2);
  std::vector<TopicId> ids;
  for (const GraphNode &n : g.nodes) ids.push_back(n.id);
  CHECK(ids == std::vector<TopicId>{1, 2, 3});
  CHECK(g.nodes[0].kind == "root");
  CHECK(g.nodes[1].kind == "topic");
  CHECK(g.edges.size() == 2);
  // 3 reaches 2 over the two-way link but not 4, which only points at 3.
  const GraphExport from3 = graph_neighborhood(m, 3, 5);
  CHECK(from3.nodes.size() == 2);
  CHECK(graph_neighborhood(m, 5, 0).nodes.size() == 1);
  CHECK_THROWS_AS(graph_neighborhood(m, 42, 1), NotFound);
}

TEST_CASE("graph neighbourhoods agree with iterated relaxation") {
  testing::Gen gen(65);
  for (int round = 0; round < 200; ++round) {
    const TopicMap m = testing::random_topic_map(gen, 10);
    if (m.topics.empty()) continue;
    auto it = m.topics.begin();
    std::advance(it, static_cast<long>(gen.index(m.topics.size())));
    const std::size_t depth = gen.index(5);
    const GraphExport g = graph_neighborhood(m, it->first, depth);
    std::set<TopicId> ids;
    for (const GraphNode &n : g.nodes) ids.insert(n.id);
    CHECK(ids == testing::oracle_reachable(m, it->first, depth));
    for (const GraphEdge &e : g.edges) {
      CHECK(ids.count(e.source) == 1);
      CHECK(ids.count(e.target) == 1);
    }
  }
}

TEST_CASE("scores print as round-trip decimals") {
  for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, 2.718281828459045, 1e-300, 123456.789}) {
    CHECK(std::strtod(format_score(x).c_str(), nullptr) == x);
  }
  CHECK(format_search_lines({{98, 0.5, "A", "b c"}}) == "98\t0.5\tA\tb c\n");
}

TEST_CASE("topic json carries facts and links") {
  const SearchService s = golden_service();
  const auto j = s.topic_json(98);
  REQUIRE(j.has_value());
  CHECK((*j)["baseName"] == "Abd al-Malik ibn Hudayl ibn Razin");
  CHECK((*j)["instanceOf"] == 38);
  CHECK((*j)["dates"].size() == 3);
  CHECK((*j)["dates"][2]["day"] == 18);
  CHECK((*j)["occurrences"][0]["roleSpec"] == "soberano");
  CHECK((*j)["unresolved"].size() == 4);
  CHECK_FALSE(s.topic_json(7).has_value());
}

TEST_CASE("http endpoints") {
  const SearchService service = golden_service();
  RunningServer running(service);
  httplib::Client client("127.0.0.1", running.port);

  auto get = [&](const std::string &path) {
    auto res = client.Get(path);
    REQUIRE(res);
    return std::make_pair(res->status, Json::parse(res->body));
  };

  auto [status, body] = get("/api/search?q=Albarrac%C3%ADn");
  CHECK(status == 200);
  REQUIRE(body.size() == 1);
  CHECK(body[0]["id"] == 98);
  CHECK(body == service.search_json("Albarracín", 10));

  CHECK(get("/api/search").first == 400);
  CHECK(get("/api/search?q=rey&k=0").first == 400);
  CHECK(get("/api/search?q=rey&k=1001").first == 400);
  CHECK(get("/api/search?q=rey&k=abc").first == 400);
  CHECK(get("/api/search?q=%22abierta").first == 400);

  auto [topic_status, topic] = get("/api/topic/99");
  CHECK(topic_status == 200);
  CHECK(topic["baseName"] == "Abd al-Rahman I");
  CHECK(get("/api/topic/abc").first == 400);
  CHECK(get("/api/topic/12345").first == 404);

  auto [graph_status, graph] = get("/api/graph?root=98&depth=3");
  CHECK(graph_status == 200);
  CHECK(graph["nodes"].size() == 1);
  CHECK(graph["nodes"][0]["kind"] == "root");
  CHECK(get("/api/graph?root=5").first == 404);
  CHECK(get("/api/graph").first == 400);
  CHECK(get("/api/graph?root=98&depth=17").first == 400);
}
