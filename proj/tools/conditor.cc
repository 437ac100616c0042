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

// Command-line front end. Exit status: 0 success, 1 per-entry errors during
// build, 2 fatal errors.

#include <csignal>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "conditor/emit.h"
#include "conditor/log.h"
#include "conditor/pipeline.h"
#include "conditor/service.h"
#include "conditor/xml.h"

namespace {

using namespace conditor;

constexpr int kOk = 0;
constexpr int kEntryErrors = 1;
constexpr int kFatal = 2;

struct BuildArgs {
  std::string corpus;
  std::string rules;
  std::string out;
  std::string abbreviations;
  std::string stopwords;
  unsigned threads = 1;
};

int run_build(const BuildArgs &args) {
  TextResources resources = TextResources::defaults();
  if (!args.abbreviations.empty()) resources.abbreviations = Lexicon::from_file(args.abbreviations);
  if (!args.stopwords.empty()) {
    Lexicon folded;
    for (const std::string &w : Lexicon::from_file(args.stopwords).words()) folded.insert(fold(w));
    resources.stopwords = std::move(folded);
  }
  const RuleSet rules =
      args.rules.empty() ? RuleSet::load(embedded::k_default_rules) : RuleSet::load(read_file(args.rules));

  BuildOptions options;
  options.threads = args.threads;
  options.resources = &resources;
  const BuildResult result = compile_corpus(read_file(args.corpus), rules, options);

  {
    const BuildLock lock(args.out);
    write_build(result, args.out);
  }
  const BuildReport &report = result.report;
  std::cout << report.summary() << '\n';
  for (const EntryError &e : report.errors) {
    std::cerr << "error: entry #" << e.ordinal << " (line " << e.line << "): " << e.message << '\n';
  }
  for (const Lint &l : report.lints) {
    std::string where = l.entry ? " [" + std::to_string(*l.entry) + "]" : "";
    log(LogLevel::Info, l.code + where + ": " + l.message);
  }
  return report.errors.empty() ? kOk : kEntryErrors;
}

int run_search(const std::string &store, const std::string &query, std::size_t k) {
  const SearchService service = SearchService::open(store);
  std::cout << format_search_lines(service.search(query, k));
  return kOk;
}

int run_emit(const std::string &store, const std::string &out) {
  const Store s = Store::open(store);
  const std::string xml = emit_xtm_dita(s.load_map());
  if (out.empty() || out == "-") {
    std::cout << xml;
    return kOk;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  file << xml;
  if (!file) throw StoreError("cannot write " + out);
  return kOk;
}

int run_graph(const std::string &store, TopicId root, std::size_t depth) {
  const SearchService service = SearchService::open(store);
  std::cout << service.graph_json(root, depth).dump(2) << '\n';
  return kOk;
}

HttpServer *g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int run_serve(const std::string &store, const std::string &host, int port,
              const std::string &static_dir) {
  const SearchService service = SearchService::open(store);
  HttpServer server(service, static_dir.empty() ? std::nullopt
                                                : std::optional<std::filesystem::path>(static_dir));
  const int bound = server.bind(host, port);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"conditor: corpus to topic map compiler and search engine"};
  app.require_subcommand(1);

  BuildArgs build;
  CLI::App *build_cmd = app.add_subcommand("build", "Compile a corpus into a store directory");
  build_cmd->add_option("--corpus", build.corpus, "Corpus XML file")->required();
  build_cmd->add_option("--rules", build.rules, "Rules file (default: built-in rules)");
  build_cmd->add_option("--out", build.out, "Output store directory")->required();
  build_cmd->add_option("--threads", build.threads, "Worker threads (0 = all cores)");
  build_cmd->add_option("--abbreviations", build.abbreviations, "Abbreviation list");
  build_cmd->add_option("--stopwords", build.stopwords, "Stopword list");

  std::string store;
  std::string query;
  std::size_t k = kDefaultK;
  CLI::App *search_cmd = app.add_subcommand("search", "Ranked full-text search");
  search_cmd->add_option("--store", store, "Store directory")->required();
  search_cmd->add_option("--k", k, "Maximum number of hits")->check(CLI::PositiveNumber);
  search_cmd->add_option("query", query, "Query text")->required();

  std::string out;
  CLI::App *emit_cmd = app.add_subcommand("emit", "Write the XTM-DITA document of a store");
  emit_cmd->add_option("--store", store, "Store directory")->required();
  emit_cmd->add_option("--out", out, "Output file (default: stdout)");

  TopicId root = 0;
  std::size_t depth = 2;
  CLI::App *graph_cmd = app.add_subcommand("graph", "Association neighbourhood as JSON");
  graph_cmd->add_option("--store", store, "Store directory")->required();
  graph_cmd->add_option("--root", root, "Root topic id")->required();
  graph_cmd->add_option("--depth", depth, "Traversal depth");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  CLI::App *serve_cmd = app.add_subcommand("serve", "HTTP API over a store");
  serve_cmd->add_option("--store", store, "Store directory")->required();
  serve_cmd->add_option("--port", port, "TCP port (0 = any free port)");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--static", static_dir, "Directory of UI files served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFatal;
  }

  try {
    if (build_cmd->parsed()) return run_build(build);
    if (search_cmd->parsed()) return run_search(store, query, k);
    if (emit_cmd->parsed()) return run_emit(store, out);
    if (graph_cmd->parsed()) return run_graph(store, root, depth);
    if (serve_cmd->parsed()) return run_serve(store, host, port, static_dir);
  } catch (const xml::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const RuleError &e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kFatal;
}
