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

// Query side of a built store: search, topic lookup and graph export, shared
// by the CLI and the HTTP API so both answer identically.

#ifndef CONDITOR_SERVICE_H_
#define CONDITOR_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "conditor/index.h"
#include "conditor/store.h"
#include "conditor/topicmap.h"

namespace conditor {

using Json = nlohmann::ordered_json;

struct SearchLine {
  TopicId id = 0;
  double score = 0.0;
  std::string name;
  std::string snippet;

  bool operator==(const SearchLine &) const = default;
};

struct GraphNode {
  TopicId id = 0;
  std::string label;
  std::string kind;  // "root" or "topic"

  bool operator==(const GraphNode &) const = default;
};

struct GraphEdge {
  TopicId source = 0;
  TopicId target = 0;
  std::string role;
  Direction direction = Direction::OneWay;

  bool operator==(const GraphEdge &) const = default;
};

struct GraphExport {
  std::vector<GraphNode> nodes;  // ascending id
  std::vector<GraphEdge> edges;  // association order

  bool operator==(const GraphExport &) const = default;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Breadth-first neighbourhood of `root` up to `depth` hops. TwoWay edges are
// followed both ways, OneWay only from source to target. Edges are all
// associations between visited nodes. Throws NotFound for an unknown root.
GraphExport graph_neighborhood(const TopicMap &map, TopicId root, std::size_t depth);

class SearchService {
 public:
  SearchService(TopicMap map, IndexSnapshot index);

  // Throws StoreError / IndexFormatError when the store is unusable.
  static SearchService open(const std::filesystem::path &store_dir);

  // Throws QueryError for an empty query or k == 0.
  std::vector<SearchLine> search(std::string_view query, std::size_t k) const;
  const Topic *topic(TopicId id) const;
  GraphExport graph(TopicId root, std::size_t depth) const;

  Json search_json(std::string_view query, std::size_t k) const;
  std::optional<Json> topic_json(TopicId id) const;
  Json graph_json(TopicId root, std::size_t depth) const;

  const TopicMap &map() const { return map_; }
  const IndexSnapshot &index() const { return index_; }

 private:
  TopicMap map_;
  IndexSnapshot index_;
};

// Shortest text that reads back as the same double.
std::string format_score(double score);

// One `id TAB score TAB name TAB snippet` line per hit.
std::string format_search_lines(const std::vector<SearchLine> &lines);

Json to_json(const GraphExport &graph);

// HTTP front end over a SearchService.
class HttpServer {
 public:
  explicit HttpServer(const SearchService &service,
                      std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  // Binds to host:port (port 0 picks a free port) and returns the port.
  int bind(const std::string &host, int port);
  // Blocks serving requests until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace conditor

#endif  // CONDITOR_SERVICE_H_
