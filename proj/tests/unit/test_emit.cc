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

#include "conditor/emit.h"
#include "conditor/pipeline.h"
#include "conditor/resources.h"
#include "conditor/xml.h"
#include "generators.h"
#include "oracles.h"

using namespace conditor;

namespace {

constexpr std::string_view kTopicRef =
    R"(<topicRef xlink:type="simple" xlink:show="replace" xlink:actuate="onRequest" xlink:href="#38"/>)";

std::string golden_xtm() {
  return compile_corpus(read_file(CONDITOR_TESTDATA_DIR "/golden_corpus.xml"), RuleSet::defaults()).xtm;
}

}  // namespace

TEST_CASE("golden topic 98 matches the reference fragment") {
  const std::string xtm = golden_xtm();
  const std::string fragment = read_file(CONDITOR_TESTDATA_DIR "/golden_topic98.xtm.xml");
  CHECK(xtm.find(fragment) != std::string::npos);
  CHECK(xtm.find(kTopicRef) != std::string::npos);
  CHECK(xtm.rfind("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<voces ", 0) == 0);
  CHECK(testing::xml_well_formed(xtm));
}

TEST_CASE("an empty map is a self-closing root") {
  const std::string xtm = emit_xtm_dita(TopicMap{});
  CHECK(xtm.find("/>\n") == xtm.size() - 3);
  CHECK(parse_xtm_dita(xtm) == TopicMap{});
}

TEST_CASE("random maps round-trip and emit deterministically") {
  testing::Gen gen(500);
  for (int round = 0; round < 300; ++round) {
    const TopicMap m = testing::random_topic_map(gen);
    const std::string a = emit_xtm_dita(m);
    const std::string b = emit_xtm_dita(m);
    REQUIRE(a == b);
    std::string error;
    CHECK_MESSAGE(testing::xml_well_formed(a, &error), error);
    std::vector<Lint> lints;
    REQUIRE(parse_xtm_dita(a, &lints) == m);
    CHECK(lints.empty());
  }
}

TEST_CASE("missing mandatory elements name the topic") {
  const std::string doc =
      "<voces><topic id=\"7\"><baseName><baseNameString>A</baseNameString></baseName>"
      "<contents><shortdesc/><body/></contents></topic></voces>";
  try {
    parse_xtm_dita(doc);
    FAIL("expected a parse error");
  } catch (const xml::ParseError &e) {
    const std::string what = e.what();
    CHECK(what.find("7") != std::string::npos);
    CHECK(what.find("instanceOf") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_xtm_dita("<voces><topic>"), xml::ParseError);
  CHECK_THROWS_AS(parse_xtm_dita("<other/>"), xml::ParseError);
}

TEST_CASE("unknown elements are skipped with a lint") {
  TopicMap m;
  Topic t;
  t.id = 3;
  t.base_name = "B";
  t.instance_of = 1;
  m.topics.emplace(3, t);
  std::string doc = emit_xtm_dita(m);
  const std::string anchor = "</contents>";
  doc.insert(doc.find(anchor) + anchor.size(), "\n  <extra>ignored</extra>");
  std::vector<Lint> lints;
  CHECK(parse_xtm_dita(doc, &lints) == m);
  REQUIRE(lints.size() == 1);
  CHECK(lints[0].code == "xtm.unknown_element");
}

TEST_CASE("duplicate topic ids in a document are errors") {
  TopicMap m;
  Topic t;
  t.id = 3;
  t.base_name = "B";
  m.topics.emplace(3, t);
  std::string doc = emit_xtm_dita(m);
  const std::size_t begin = doc.find("<topic ");
  const std::size_t end = doc.find("</topic>") + 8;
  doc.insert(end, "\n" + doc.substr(begin, end - begin));
  CHECK_THROWS_AS(parse_xtm_dita(doc), xml::ParseError);
}
