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

#ifndef CONDITOR_ALIAS_H_
#define CONDITOR_ALIAS_H_

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "conditor/normalize.h"

namespace conditor {

// Folded title forms of every entry in a corpus, keyed by token sequence.
class AliasTable {
 public:
  struct Match {
    std::size_t first_token = 0;
    std::size_t end_token = 0;  // exclusive
    TopicId topic = 0;

    bool operator==(const Match &) const = default;
  };

  void add(TopicId topic, const TitleName &title,
           const TextResources &resources = TextResources::defaults());

  // Topics registered under exactly this folded token sequence, ascending.
  std::vector<TopicId> lookup(std::span<const std::string> form) const;

  // Every occurrence of every form, minus occurrences strictly contained in
  // a longer occurrence. Sorted by (first_token, end_token, topic).
  std::vector<Match> find_all(std::span<const std::string> tokens) const;

  // Leftmost-longest, non-overlapping scan; ambiguous forms resolve to the
  // smallest topic id.
  std::vector<Match> find_longest(std::span<const std::string> tokens) const;

  std::size_t size() const { return forms_.size(); }
  bool empty() const { return forms_.empty(); }

 private:
  std::unordered_map<std::string, std::vector<TopicId>> forms_;
  std::size_t max_tokens_ = 0;
};

}  // namespace conditor

#endif  // CONDITOR_ALIAS_H_
