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

#include "conditor/service.h"

#include <charconv>
#include <deque>
#include <set>

#include "httplib.h"

#include "conditor/log.h"
#include "conditor/pipeline.h"

namespace conditor {

namespace {

constexpr std::size_t kMaxK = 1000;
constexpr std::size_t kMaxDepth = 16;

Json association_json(const Association &a) {
  Json j;
  j["source"] = a.source;
  j["target"] = a.target_id().value_or(0);
  j["role"] = a.role;
  j["direction"] = std::string(to_string(a.direction));
  return j;
}

std::optional<std::uint64_t> parse_uint(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

void send_json(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response &res, int status, const std::string &message) {
  Json body;
  body["error"] = message;
  send_json(res, status, body);
}

}  // namespace

GraphExport graph_neighborhood(const TopicMap &map, TopicId root, std::size_t depth) {
  if (map.topics.count(root) == 0) throw NotFound("unknown topic " + std::to_string(root));
  std::map<TopicId, std::vector<TopicId>> next;
  for (const Association &a : map.associations) {
    const auto target = a.target_id();
    if (!target) continue;
    next[a.source].push_back(*target);
    if (a.direction == Direction::TwoWay) next[*target].push_back(a.source);
  }

  std::map<TopicId, std::size_t> distance{{root, 0}};
  std::deque<TopicId> queue{root};
  while (!queue.empty()) {
    const TopicId id = queue.front();
    queue.pop_front();
    const std::size_t d = distance[id];
    if (d == depth) continue;
    for (TopicId n : next[id]) {
      if (distance.emplace(n, d + 1).second) queue.push_back(n);
    }
  }

  GraphExport graph;
  for (const auto &[id, d] : distance) {
    auto it = map.topics.find(id);
    graph.nodes.push_back(
        {id, it == map.topics.end() ? std::string() : it->second.base_name, id == root ? "root" : "topic"});
  }
  for (const Association &a : map.associations) {
    const auto target = a.target_id();
    if (!target || distance.count(a.source) == 0 || distance.count(*target) == 0) continue;
    graph.edges.push_back({a.source, *target, a.role, a.direction});
  }
  return graph;
}

Json to_json(const GraphExport &graph) {
  Json j;
  j["nodes"] = Json::array();
  for (const GraphNode &n : graph.nodes) {
    Json node;
    node["id"] = n.id;
    node["label"] = n.label;
    node["kind"] = n.kind;
    j["nodes"].push_back(std::move(node));
  }
  j["edges"] = Json::array();
  for (const GraphEdge &e : graph.edges) {
    Json edge;
    edge["source"] = e.source;
    edge["target"] = e.target;
    edge["role"] = e.role;
    edge["direction"] = std::string(to_string(e.direction));
    j["edges"].push_back(std::move(edge));
  }
  return j;
}

std::string format_score(double score) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, score);
  return ec == std::errc() ? std::string(buffer, ptr) : std::to_string(score);
}

std::string format_search_lines(const std::vector<SearchLine> &lines) {
  std::string out;
  for (const SearchLine &l : lines) {
    out += std::to_string(l.id) + "\t" + format_score(l.score) + "\t" + l.name + "\t" + l.snippet +
           "\n";
  }
  return out;
}

SearchService::SearchService(TopicMap map, IndexSnapshot index)
    : map_(std::move(map)), index_(std::move(index)) {}

SearchService SearchService::open(const std::filesystem::path &store_dir) {
  const Store store = Store::open(store_dir);
  IndexSnapshot index = deserialize_index(store.read_blob(std::string(kIndexFileName)));
  return SearchService(store.load_map(), std::move(index));
}

std::vector<SearchLine> SearchService::search(std::string_view query, std::size_t k) const {
  std::vector<SearchLine> lines;
  for (ScoredHit &hit : conditor::search(index_, parse_query(query), k)) {
    const Topic *t = topic(hit.topic);
    lines.push_back({hit.topic, hit.score, t ? t->base_name : std::string(), std::move(hit.snippet)});
  }
  return lines;
}

const Topic *SearchService::topic(TopicId id) const {
  auto it = map_.topics.find(id);
  return it == map_.topics.end() ? nullptr : &it->second;
}

GraphExport SearchService::graph(TopicId root, std::size_t depth) const {
  return graph_neighborhood(map_, root, depth);
}

Json SearchService::search_json(std::string_view query, std::size_t k) const {
  Json hits = Json::array();
  for (const SearchLine &l : search(query, k)) {
    Json hit;
    hit["id"] = l.id;
    hit["score"] = l.score;
    hit["name"] = l.name;
    hit["snippet"] = l.snippet;
    hits.push_back(std::move(hit));
  }
  return hits;
}

std::optional<Json> SearchService::topic_json(TopicId id) const {
  const Topic *t = topic(id);
  if (t == nullptr) return std::nullopt;
  Json j;
  j["id"] = t->id;
  j["baseName"] = t->base_name;
  j["variants"] = t->variants;
  j["instanceOf"] = t->instance_of;
  j["shortdesc"] = t->shortdesc;
  j["body"] = t->body;
  j["dates"] = Json::array();
  for (const DateFact &d : t->date_facts) {
    Json date;
    date["role"] = d.role;
    if (d.location) date["location"] = *d.location;
    if (d.day) date["day"] = *d.day;
    if (d.month) date["month"] = *d.month;
    date["year"] = d.year;
    j["dates"].push_back(std::move(date));
  }
  j["occurrences"] = Json::array();
  for (const Occurrence &o : t->occurrences) {
    Json occurrence;
    occurrence["roleSpec"] = o.role_spec;
    occurrence["resourceData"] = o.resource_data;
    j["occurrences"].push_back(std::move(occurrence));
  }
  j["associations"] = Json::array();
  for (const Association &a : map_.associations) {
    if (a.source == id || a.target_id() == id) j["associations"].push_back(association_json(a));
  }
  j["unresolved"] = Json::array();
  for (const UnresolvedRef &r : map_.unresolved_refs) {
    if (r.source == id) j["unresolved"].push_back(r.term);
  }
  return j;
}

Json SearchService::graph_json(TopicId root, std::size_t depth) const {
  return to_json(graph(root, depth));
}

struct HttpServer::Impl {
  const SearchService &service;
  httplib::Server server;

  explicit Impl(const SearchService &s) : service(s) {}
};

HttpServer::HttpServer(const SearchService &service,
                       std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  httplib::Server &server = impl_->server;
  const SearchService &svc = impl_->service;

  server.Get("/api/search", [&svc](const httplib::Request &req, httplib::Response &res) {
    const std::string q = req.get_param_value("q");
    if (q.empty()) return send_error(res, 400, "missing query parameter q");
    std::size_t k = kDefaultK;
    if (req.has_param("k")) {
      const auto parsed = parse_uint(req.get_param_value("k"));
      if (!parsed || *parsed == 0 || *parsed > kMaxK) {
        return send_error(res, 400, "k must be an integer between 1 and " + std::to_string(kMaxK));
      }
      k = *parsed;
    }
    try {
      send_json(res, 200, svc.search_json(q, k));
    } catch (const QueryError &e) {
      send_error(res, 400, e.what());
    }
  });

  server.Get(R"(/api/topic/([^/]+))", [&svc](const httplib::Request &req, httplib::Response &res) {
    const auto id = parse_uint(req.matches[1].str());
    if (!id) return send_error(res, 400, "topic id must be a positive integer");
    const auto topic = svc.topic_json(*id);
    if (!topic) return send_error(res, 404, "unknown topic " + std::to_string(*id));
    send_json(res, 200, *topic);
  });

  server.Get("/api/graph", [&svc](const httplib::Request &req, httplib::Response &res) {
    const auto root = parse_uint(req.get_param_value("root"));
    if (!root) return send_error(res, 400, "root must be a topic id");
    std::size_t depth = 2;
    if (req.has_param("depth")) {
      const auto parsed = parse_uint(req.get_param_value("depth"));
      if (!parsed || *parsed > kMaxDepth) {
        return send_error(res, 400,
                          "depth must be an integer between 0 and " + std::to_string(kMaxDepth));
      }
      depth = *parsed;
    }
    try {
      send_json(res, 200, svc.graph_json(*root, depth));
    } catch (const NotFound &e) {
      send_error(res, 404, e.what());
    }
  });

  server.set_exception_handler(
      [](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          if (ep) std::rethrow_exception(ep);
        } catch (const std::exception &e) {
          message = e.what();
        } catch (...) {
        }
        log(LogLevel::Error, message);
        send_error(res, 500, message);
      });

  if (static_dir && !server.set_mount_point("/", static_dir->string())) {
    throw std::runtime_error("static directory " + static_dir->string() + " does not exist");
  }
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string &host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace conditor
