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

#include "conditor/alias.h"

#include <algorithm>

namespace conditor {

namespace {

std::string join(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) key.push_back(' ');
    key += tokens[i];
  }
  return key;
}

}  // namespace

void AliasTable::add(TopicId topic, const TitleName &title,
                     const TextResources &resources) {
  for (const auto &form : match_forms(title, resources)) {
    auto &ids = forms_[join(form)];
    if (std::find(ids.begin(), ids.end(), topic) == ids.end()) {
      ids.insert(std::upper_bound(ids.begin(), ids.end(), topic), topic);
    }
    max_tokens_ = std::max(max_tokens_, form.size());
  }
}

std::vector<TopicId> AliasTable::lookup(std::span<const std::string> form) const {
  auto it = forms_.find(join(form));
  return it == forms_.end() ? std::vector<TopicId>{} : it->second;
}

std::vector<AliasTable::Match> AliasTable::find_all(
    std::span<const std::string> tokens) const {
  std::vector<Match> raw;
  for (std::size_t begin = 0; begin < tokens.size(); ++begin) {
    std::string key;
    const std::size_t limit = std::min(max_tokens_, tokens.size() - begin);
    for (std::size_t len = 1; len <= limit; ++len) {
      if (len > 1) key.push_back(' ');
      key += tokens[begin + len - 1];
      auto it = forms_.find(key);
      if (it == forms_.end()) continue;
      for (TopicId id : it->second) raw.push_back({begin, begin + len, id});
    }
  }

  // Sweep ranges by (begin asc, end desc); a range is strictly inside an
  // earlier distinct range exactly when that range reaches at least as far.
  std::sort(raw.begin(), raw.end(), [](const Match &a, const Match &b) {
    if (a.first_token != b.first_token) return a.first_token < b.first_token;
    if (a.end_token != b.end_token) return a.end_token > b.end_token;
    return a.topic < b.topic;
  });
  std::vector<Match> kept;
  std::size_t reach = 0;
  bool any = false;
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    while (j < raw.size() && raw[j].first_token == raw[i].first_token &&
           raw[j].end_token == raw[i].end_token) {
      ++j;
    }
    const bool contained = any && reach >= raw[i].end_token;
    if (!contained) kept.insert(kept.end(), raw.begin() + i, raw.begin() + j);
    reach = any ? std::max(reach, raw[i].end_token) : raw[i].end_token;
    any = true;
    i = j;
  }
  std::sort(kept.begin(), kept.end(), [](const Match &a, const Match &b) {
    if (a.first_token != b.first_token) return a.first_token < b.first_token;
    if (a.end_token != b.end_token) return a.end_token < b.end_token;
    return a.topic < b.topic;
  });
  return kept;
}

std::vector<AliasTable::Match> AliasTable::find_longest(
    std::span<const std::string> tokens) const {
  std::vector<Match> out;
  std::size_t begin = 0;
  while (begin < tokens.size()) {
    std::string key;
    std::size_t best_len = 0;
    TopicId best_topic = 0;
    const std::size_t limit = std::min(max_tokens_, tokens.size() - begin);
    for (std::size_t len = 1; len <= limit; ++len) {
      if (len > 1) key.push_back(' ');
      key += tokens[begin + len - 1];
      auto it = forms_.find(key);
      if (it != forms_.end()) {
        best_len = len;
        best_topic = it->second.front();
      }
    }
    if (best_len == 0) {
      ++begin;
      continue;
    }
    out.push_back({begin, begin + best_len, best_topic});
    begin += best_len;
  }
  return out;
}

}  // namespace conditor
