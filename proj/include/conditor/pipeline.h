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

// The whole build: corpus XML in, topic map, XTM-DITA text and index out.

#ifndef CONDITOR_PIPELINE_H_
#define CONDITOR_PIPELINE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "conditor/extract.h"
#include "conditor/index.h"
#include "conditor/ingest.h"
#include "conditor/resources.h"
#include "conditor/store.h"
#include "conditor/topicmap.h"

namespace conditor {

struct BuildOptions {
  // 0 picks the hardware concurrency.
  unsigned threads = 1;
  const TextResources *resources = &TextResources::defaults();
};

struct BuildReport {
  std::size_t topics = 0;
  std::size_t associations = 0;
  std::size_t facts = 0;
  std::size_t occurrences = 0;
  std::size_t unresolved = 0;
  std::vector<EntryError> errors;
  // Includes one "entry.skipped" lint per entry error.
  std::vector<Lint> lints;

  std::string summary() const;
};

struct BuildResult {
  TopicMap map;
  IndexSnapshot index;
  std::string xtm;
  BuildReport report;
};

// Throws xml::ParseError for a malformed corpus and EncodingError for bad
// UTF-8. Output is independent of options.threads.
BuildResult compile_corpus(std::string_view corpus_xml, const RuleSet &rules,
                           const BuildOptions &options = {});

inline constexpr std::string_view kXtmFileName = "topicmap.xtm.xml";
inline constexpr std::string_view kIndexFileName = "index.dat";

// Writes the store, the index and the XTM-DITA file into `dir`.
void write_build(const BuildResult &result, const std::filesystem::path &dir,
                 const PersistenceDescriptor &descriptor = PersistenceDescriptor::defaults());

// Exclusive build lock on a directory (a `.lock` file created with O_EXCL).
class BuildLock {
 public:
  // Throws StoreError when another build holds the lock.
  explicit BuildLock(const std::filesystem::path &dir);
  ~BuildLock();
  BuildLock(const BuildLock &) = delete;
  BuildLock &operator=(const BuildLock &) = delete;

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace conditor

#endif  // CONDITOR_PIPELINE_H_
