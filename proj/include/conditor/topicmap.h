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

// The topic-map object model and the operations that populate it.

#ifndef CONDITOR_TOPICMAP_H_
#define CONDITOR_TOPICMAP_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conditor/alias.h"
#include "conditor/extract.h"
#include "conditor/ingest.h"
#include "conditor/normalize.h"

namespace conditor {

struct Occurrence {
  std::string role_spec;
  std::string resource_data;

  bool operator==(const Occurrence &) const = default;
  auto operator<=>(const Occurrence &) const = default;
};

struct Topic {
  TopicId id = 0;
  std::string base_name;
  std::vector<std::string> variants;
  TopicId instance_of = 0;
  std::string shortdesc;
  std::string body;
  std::vector<DateFact> date_facts;
  std::vector<Occurrence> occurrences;

  bool operator==(const Topic &) const = default;
};

enum class Direction { OneWay, TwoWay };

std::string_view to_string(Direction direction);  // "one-way" / "two-way"
std::optional<Direction> parse_direction(std::string_view text);

// Either a topic id or, before assembly, the surface term of a reference
// that matched no topic.
using AssociationTarget = std::variant<TopicId, std::string>;

struct Association {
  TopicId source = 0;
  AssociationTarget target = TopicId{0};
  std::string role;
  Direction direction = Direction::OneWay;

  std::optional<TopicId> target_id() const;
  bool operator==(const Association &) const = default;
  auto operator<=>(const Association &) const = default;
};

struct UnresolvedRef {
  TopicId source = 0;
  std::string term;

  bool operator==(const UnresolvedRef &) const = default;
  auto operator<=>(const UnresolvedRef &) const = default;
};

// Association targets are always ids present in `topics`; associations are
// sorted and unique, TwoWay ones with source < target.
struct TopicMap {
  std::map<TopicId, Topic> topics;
  std::vector<Association> associations;
  std::vector<UnresolvedRef> unresolved_refs;  // sorted, unique

  bool operator==(const TopicMap &) const = default;
};

class TopicMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kMentionRole = "mención";
inline constexpr std::string_view kReferenceRole = "referencia";

Topic build_topic(const SourceEntry &entry, const CleanText &clean,
                  const EnrichedEntry &enriched);

// What crossing_search needs to know about one topic beyond its text:
// role spans (positions into Topic::body) and the marker references.
struct TopicEvidence {
  std::vector<EntitySpan> roles;
  std::vector<MarkerRef> refs;
};

TopicEvidence evidence_of(const CleanText &clean, const EnrichedEntry &enriched);

// Mentions of one topic's aliases inside another's body become associations;
// mutual mentions collapse into one TwoWay. Marker references become
// "referencia" associations, or name targets when they resolve to nothing.
std::vector<Association> crossing_search(const std::vector<Topic> &topics,
                                         const AliasTable &aliases,
                                         const std::map<TopicId, TopicEvidence> &evidence);

// Throws TopicMapError on a duplicate topic id. Problems with associations
// are repaired and reported through `lints`.
TopicMap assemble(std::vector<Topic> topics, std::vector<Association> associations,
                  std::vector<UnresolvedRef> unresolved = {},
                  std::vector<Lint> *lints = nullptr);

}  // namespace conditor

#endif  // CONDITOR_TOPICMAP_H_
