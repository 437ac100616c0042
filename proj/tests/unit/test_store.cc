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

#include <filesystem>
#include <fstream>

#include "conditor/resources.h"
#include "conditor/store.h"
#include "generators.h"
#include "oracles.h"

using namespace conditor;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("conditor-store-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int &counter() {
    static int n = 0;
    return n;
  }
};

TopicMap sample_map() {
  Topic a;
  a.id = 98;
  a.base_name = "Abd al-Malik";
  a.variants = {"Abd al-Malik"};
  a.instance_of = 38;
  a.shortdesc = "Segundo soberano.";
  a.body = "Segundo soberano. Murió.";
  a.date_facts = {{"soberano", "Albarracín", std::nullopt, std::nullopt, 1045},
                  {"murió", std::nullopt, 18, 5, 1103}};
  a.occurrences = {{"soberano", "Albarracín"}};
  Topic b;
  b.id = 99;
  b.base_name = "Abd al-Rahman I";
  b.instance_of = 38;
  return assemble({a, b}, {{98, TopicId{99}, "rey", Direction::TwoWay}}, {{98, "taifa"}});
}

void overwrite_byte(const fs::path &file, std::size_t from_end) {
  std::string bytes = read_file(file);
  bytes[bytes.size() - from_end] ^= 0x20;
  std::ofstream(file, std::ios::binary | std::ios::trunc) << bytes;
}

}  // namespace

TEST_CASE("full descriptor round-trip") {
  TempDir dir;
  const TopicMap m = sample_map();
  const Store s = persist(m, PersistenceDescriptor::full(), dir.path);
  CHECK(s.load_map() == m);
  CHECK(s.topic_ids() == std::vector<TopicId>{98, 99});
  CHECK(s.get_topic(98) == m.topics.at(98));
  CHECK_FALSE(s.get_topic(5).has_value());
  CHECK(Store::open(dir.path).load_map() == m);
}

TEST_CASE("the shipped descriptor persists everything") {
  CHECK(PersistenceDescriptor::defaults() == PersistenceDescriptor::full());
  CHECK(PersistenceDescriptor::parse(embedded::k_default_descriptor) == PersistenceDescriptor::full());
}

TEST_CASE("descriptor text round-trips") {
  const PersistenceDescriptor d = PersistenceDescriptor::full().without("Topic", "body");
  CHECK(PersistenceDescriptor::parse(d.to_text()) == d);
  CHECK_FALSE(d.persists("Topic", "body"));
  CHECK(d.persists("Topic", "id"));
}

TEST_CASE("descriptor errors list every problem") {
  try {
    PersistenceDescriptor::parse("type Topic\nfield id key yes\nfield colour\n\ntype Widget\nfield id key yes\n");
    FAIL("expected a StoreError");
  } catch (const StoreError &e) {
    const std::string what = e.what();
    CHECK(what.find("Widget") != std::string::npos);
    CHECK(what.find("Topic.colour") != std::string::npos);
  }
  CHECK_THROWS_AS(PersistenceDescriptor::parse("type Topic\nfield id key yes\n"), StoreError);
  CHECK_THROWS_AS(PersistenceDescriptor::parse("type Topic\nfield id\nfield body key yes\n"), StoreError);
  CHECK_THROWS_AS(PersistenceDescriptor::full().without("Topic", "id"), StoreError);
}

TEST_CASE("omitting a field projects exactly that field") {
  testing::Gen gen(21);
  for (const auto &[type, fields] : PersistenceDescriptor::schema()) {
    for (std::size_t f = 1; f < fields.size(); ++f) {
      CAPTURE(type);
      CAPTURE(fields[f]);
      const PersistenceDescriptor d = PersistenceDescriptor::full().without(type, fields[f]);
      for (int round = 0; round < 5; ++round) {
        TempDir dir;
        const TopicMap m = testing::random_topic_map(gen);
        CHECK(persist(m, d, dir.path).load_map() == testing::project(m, d));
      }
    }
  }
}

TEST_CASE("random maps round-trip through the store") {
  testing::Gen gen(200);
  TempDir dir;
  for (int round = 0; round < 60; ++round) {
    const TopicMap m = testing::random_topic_map(gen);
    // Rewriting the same directory replaces the previous store.
    REQUIRE(persist(m, PersistenceDescriptor::full(), dir.path).load_map() == m);
  }
}

TEST_CASE("store layout is deterministic") {
  TempDir a;
  TempDir b;
  persist(sample_map(), PersistenceDescriptor::full(), a.path);
  persist(sample_map(), PersistenceDescriptor::full(), b.path);
  for (const auto &entry : fs::directory_iterator(a.path)) {
    const fs::path other = b.path / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(read_file(entry.path()) == read_file(other));
  }
  CHECK_FALSE(fs::exists(a.path / ".staging"));
}

TEST_CASE("blobs are stored next to the records") {
  TempDir dir;
  StoreWriter w(dir.path, PersistenceDescriptor::full());
  w.put_map(sample_map());
  w.put_blob("index.dat", std::string("\0\1\2", 3));
  CHECK_THROWS_AS(w.put_blob("MANIFEST", "x"), StoreError);
  CHECK_THROWS_AS(w.put_blob("../x", "x"), StoreError);
  w.commit();
  const Store s = Store::open(dir.path);
  CHECK(s.has_blob("index.dat"));
  CHECK(s.read_blob("index.dat") == std::string("\0\1\2", 3));
  CHECK_THROWS_AS(s.read_blob("other"), StoreError);
}

TEST_CASE("a corrupted record is reported with its type and id") {
  TempDir dir;
  persist(sample_map(), PersistenceDescriptor::full(), dir.path);
  // The last topic record (id 99) ends the file.
  overwrite_byte(dir.path / "topics.dat", 2);
  const Store s = Store::open(dir.path);
  CHECK(s.get_topic(98).has_value());
  try {
    s.get_topic(99);
    FAIL("expected an IntegrityError");
  } catch (const IntegrityError &e) {
    CHECK(e.type() == "Topic");
    CHECK(e.id() == 99);
  }
}

TEST_CASE("missing or truncated stores are errors") {
  TempDir dir;
  CHECK_THROWS_AS(Store::open(dir.path), StoreError);
  persist(sample_map(), PersistenceDescriptor::full(), dir.path);
  fs::resize_file(dir.path / "datefacts.dat", 4);
  CHECK_THROWS_AS(Store::open(dir.path), StoreError);
}

TEST_CASE("unresolved association targets cannot be persisted") {
  TempDir dir;
  TopicMap m = sample_map();
  m.associations.push_back({98, std::string("nombre"), "referencia", Direction::OneWay});
  StoreWriter w(dir.path, PersistenceDescriptor::full());
  CHECK_THROWS_AS(w.put_map(m), StoreError);
}
