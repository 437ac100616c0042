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

#include "conditor/pipeline.h"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include "conditor/emit.h"
#include "conditor/log.h"

namespace conditor {

namespace {

struct EntryResult {
  Topic topic;
  TopicEvidence evidence;
  std::vector<Lint> lints;
};

EntryResult process_entry(const SourceEntry &entry, const RuleSet &rules,
                          const CorpusContext &context, const TextResources &resources) {
  EntryResult result;
  CleanSource source = clean_description(entry.raw_description);
  for (Lint &l : source.lints) {
    l.entry = entry.voz_id;
    result.lints.push_back(std::move(l));
  }
  const CleanText clean = segment(std::move(source), resources);
  const EnrichedEntry enriched = interpret_entry(entry, clean, rules, context);
  result.lints.insert(result.lints.end(), enriched.lints.begin(), enriched.lints.end());
  result.topic = build_topic(entry, clean, enriched);
  result.evidence = evidence_of(clean, enriched);
  return result;
}

// Runs fn(i) for i in [0, n) on `threads` workers; rethrows the first error.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread &t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string BuildReport::summary() const {
  return "topics=" + std::to_string(topics) + " associations=" + std::to_string(associations) +
         " facts=" + std::to_string(facts) + " occurrences=" + std::to_string(occurrences) +
         " unresolved=" + std::to_string(unresolved) + " errors=" + std::to_string(errors.size()) +
         " lints=" + std::to_string(lints.size());
}

BuildResult compile_corpus(std::string_view corpus_xml, const RuleSet &rules,
                           const BuildOptions &options) {
  if (!is_valid_utf8(corpus_xml)) throw EncodingError("corpus is not valid UTF-8");
  const TextResources &resources = *options.resources;
  Corpus corpus = parse_corpus(corpus_xml);
  log(LogLevel::Info, "read " + std::to_string(corpus.entries.size()) + " entries");

  BuildResult result;
  BuildReport &report = result.report;
  report.errors = corpus.errors;
  report.lints = corpus.lints;
  for (const EntryError &e : corpus.errors) {
    report.lints.push_back({"entry.skipped",
                            "entry #" + std::to_string(e.ordinal) + " (line " +
                                std::to_string(e.line) + "): " + e.message,
                            std::nullopt});
  }

  CorpusContext context;
  for (const SourceEntry &e : corpus.entries) {
    context.aliases.add(e.voz_id, merge_title_name(e.name), resources);
    context.subcategory_of[e.voz_id] = e.subcategory_id;
  }

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<EntryResult> entries(corpus.entries.size());
  parallel_for(corpus.entries.size(), threads, [&](std::size_t i) {
    entries[i] = process_entry(corpus.entries[i], rules, context, resources);
  });

  // Merge in document order, then work on id order.
  std::vector<Topic> topics;
  std::map<TopicId, TopicEvidence> evidence;
  for (EntryResult &r : entries) {
    report.lints.insert(report.lints.end(), r.lints.begin(), r.lints.end());
    evidence.emplace(r.topic.id, std::move(r.evidence));
    topics.push_back(std::move(r.topic));
  }
  std::sort(topics.begin(), topics.end(),
            [](const Topic &a, const Topic &b) { return a.id < b.id; });

  std::vector<Association> associations = crossing_search(topics, context.aliases, evidence);
  result.map = assemble(std::move(topics), std::move(associations), {}, &report.lints);
  result.index = build_index(result.map);
  result.xtm = emit_xtm_dita(result.map);

  report.topics = result.map.topics.size();
  report.associations = result.map.associations.size();
  report.unresolved = result.map.unresolved_refs.size();
  for (const auto &[id, t] : result.map.topics) {
    report.facts += t.date_facts.size();
    report.occurrences += t.occurrences.size();
  }
  log(LogLevel::Info, report.summary());
  return result;
}

void write_build(const BuildResult &result, const std::filesystem::path &dir,
                 const PersistenceDescriptor &descriptor) {
  StoreWriter writer(dir, descriptor);
  writer.put_map(result.map);
  writer.put_blob(std::string(kIndexFileName), serialize_index(result.index));
  writer.put_blob(std::string(kXtmFileName), result.xtm);
  writer.commit();
}

BuildLock::BuildLock(const std::filesystem::path &dir) : path_(dir / ".lock") {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw StoreError("cannot create " + dir.string() + ": " + ec.message());
  fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd_ < 0) {
    if (errno == EEXIST) throw StoreError("another build holds " + path_.string());
    throw StoreError("cannot create " + path_.string() + ": " + std::strerror(errno));
  }
}

BuildLock::~BuildLock() {
  if (fd_ >= 0) {
    ::close(fd_);
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
}

}  // namespace conditor
