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

#include "conditor/topicmap.h"

#include <algorithm>
#include <set>
#include <tuple>

namespace conditor {

std::string_view to_string(Direction direction) {
  return direction == Direction::TwoWay ? "two-way" : "one-way";
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "one-way") return Direction::OneWay;
  if (text == "two-way") return Direction::TwoWay;
  return std::nullopt;
}

std::optional<TopicId> Association::target_id() const {
  if (const TopicId *id = std::get_if<TopicId>(&target)) return *id;
  return std::nullopt;
}

Topic build_topic(const SourceEntry &entry, const CleanText &clean,
                  const EnrichedEntry &enriched) {
  Topic topic;
  topic.id = entry.voz_id;
  topic.base_name = entry.name;
  topic.variants = merge_title_name(entry.name).aliases;
  topic.instance_of = entry.subcategory_id;
  topic.body = clean.text;
  if (!clean.sentences.empty()) {
    const Utf8Index index(clean.text);
    topic.shortdesc = std::string(index.slice(clean.sentences.front()));
  }
  for (const BoundFact &f : enriched.facts) {
    topic.date_facts.push_back(f.fact);
    // Only office nouns describe a standing relation to a place; event verbs
    // ("murió") pin a single moment.
    if (!f.place_span || !f.fact.location) continue;
    if (enriched.spans[f.role_span].field != "role_spec") continue;
    Occurrence occurrence{f.fact.role, *f.fact.location};
    if (std::find(topic.occurrences.begin(), topic.occurrences.end(), occurrence) ==
        topic.occurrences.end()) {
      topic.occurrences.push_back(std::move(occurrence));
    }
  }
  return topic;
}

TopicEvidence evidence_of(const CleanText &clean, const EnrichedEntry &enriched) {
  TopicEvidence evidence;
  for (const EntitySpan &s : enriched.spans) {
    if (s.kind == EntityKind::Role) evidence.roles.push_back(s);
  }
  evidence.refs = clean.refs;
  return evidence;
}

namespace {

std::string mention_role(const Span &mention, const TopicEvidence *evidence) {
  if (evidence == nullptr) return std::string(kMentionRole);
  const EntitySpan *best = nullptr;
  std::size_t best_distance = 0;
  for (const EntitySpan &role : evidence->roles) {
    const Span s = role.char_span;
    const std::size_t distance = s.end <= mention.begin ? mention.begin - s.end
                                 : s.begin >= mention.end ? s.begin - mention.end
                                                          : 0;
    // Strict comparison keeps the earlier span on ties.
    if (best == nullptr || distance < best_distance) {
      best = &role;
      best_distance = distance;
    }
  }
  return best == nullptr ? std::string(kMentionRole) : to_lower(best->value);
}

}  // namespace

std::vector<Association> crossing_search(const std::vector<Topic> &topics,
                                         const AliasTable &aliases,
                                         const std::map<TopicId, TopicEvidence> &evidence) {
  std::set<TopicId> ids;
  for (const Topic &t : topics) ids.insert(t.id);

  // (source, target) -> role of the earliest mention.
  std::map<std::pair<TopicId, TopicId>, std::string> mentions;
  std::vector<Association> out;

  for (const Topic &topic : topics) {
    auto ev = evidence.find(topic.id);
    const TopicEvidence *topic_evidence = ev == evidence.end() ? nullptr : &ev->second;

    const std::vector<Token> tokens = tokenize(topic.body);
    std::vector<std::string> folded;
    folded.reserve(tokens.size());
    for (const Token &t : tokens) folded.push_back(t.normalized);
    // find_all is ordered by position, so the first hit per target wins.
    for (const AliasTable::Match &m : aliases.find_all(folded)) {
      if (m.topic == topic.id || ids.count(m.topic) == 0) continue;
      const auto key = std::make_pair(topic.id, m.topic);
      if (mentions.count(key) != 0) continue;
      const Span span{tokens[m.first_token].char_span.begin,
                      tokens[m.end_token - 1].char_span.end};
      mentions.emplace(key, mention_role(span, topic_evidence));
    }

    if (topic_evidence == nullptr) continue;
    for (const MarkerRef &ref : topic_evidence->refs) {
      std::optional<TopicId> target;
      if (ref.target_id) {
        if (ids.count(*ref.target_id) != 0) target = ref.target_id;
      } else {
        bool names_self = false;
        for (TopicId candidate : aliases.lookup(normalized_tokens(ref.surface_term))) {
          if (candidate == topic.id) {
            names_self = true;
          } else if (ids.count(candidate) != 0) {
            target = candidate;
            break;
          }
        }
        if (!target && names_self) continue;
      }
      if (target && *target == topic.id) continue;
      Association a;
      a.source = topic.id;
      a.role = std::string(kReferenceRole);
      if (target) {
        a.target = *target;
      } else {
        a.target = ref.surface_term;
      }
      out.push_back(std::move(a));
    }
  }

  for (const auto &[key, role] : mentions) {
    const auto [a, b] = key;
    auto reverse = mentions.find({b, a});
    if (reverse == mentions.end()) {
      out.push_back({a, b, role, Direction::OneWay});
    } else if (a < b) {
      out.push_back({a, b, role, Direction::TwoWay});
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TopicMap assemble(std::vector<Topic> topics, std::vector<Association> associations,
                  std::vector<UnresolvedRef> unresolved, std::vector<Lint> *lints) {
  auto lint = [&](std::string code, std::string message, TopicId entry) {
    if (lints) lints->push_back({std::move(code), std::move(message), entry});
  };

  TopicMap map;
  for (Topic &t : topics) {
    const TopicId id = t.id;
    if (!map.topics.emplace(id, std::move(t)).second) {
      throw TopicMapError("duplicate topic id " + std::to_string(id));
    }
  }

  std::set<std::tuple<TopicId, TopicId, std::string>> one_way;
  std::set<std::tuple<TopicId, TopicId, std::string>> two_way;
  for (Association &a : associations) {
    if (map.topics.count(a.source) == 0) {
      lint("association.dangling_source",
           "dropped association from unknown topic " + std::to_string(a.source), a.source);
      continue;
    }
    if (const std::string *term = std::get_if<std::string>(&a.target)) {
      unresolved.push_back({a.source, *term});
      continue;
    }
    const TopicId target = std::get<TopicId>(a.target);
    if (map.topics.count(target) == 0) {
      lint("association.dangling_target",
           "association " + std::to_string(a.source) + " -> " + std::to_string(target) +
               " moved to unresolved references",
           a.source);
      unresolved.push_back({a.source, "#" + std::to_string(target)});
      continue;
    }
    if (target == a.source) {
      lint("association.self_loop", "dropped self association on " + std::to_string(target),
           a.source);
      continue;
    }
    if (a.direction == Direction::TwoWay) {
      two_way.emplace(std::min(a.source, target), std::max(a.source, target), a.role);
    } else {
      one_way.emplace(a.source, target, a.role);
    }
  }

  // Opposite one-way links with one role are a two-way link.
  for (const auto &[s, t, role] : one_way) {
    if (one_way.count({t, s, role}) != 0) two_way.emplace(std::min(s, t), std::max(s, t), role);
  }
  for (const auto &[s, t, role] : one_way) {
    if (two_way.count({std::min(s, t), std::max(s, t), role}) != 0) continue;
    map.associations.push_back({s, t, role, Direction::OneWay});
  }
  for (const auto &[s, t, role] : two_way) {
    map.associations.push_back({s, t, role, Direction::TwoWay});
  }
  std::sort(map.associations.begin(), map.associations.end());

  std::erase_if(unresolved, [&](const UnresolvedRef &r) {
    if (map.topics.count(r.source) != 0) return false;
    lint("unresolved.dangling_source",
         "dropped unresolved reference from unknown topic " + std::to_string(r.source), r.source);
    return true;
  });
  std::sort(unresolved.begin(), unresolved.end());
  unresolved.erase(std::unique(unresolved.begin(), unresolved.end()), unresolved.end());
  map.unresolved_refs = std::move(unresolved);
  return map;
}

}  // namespace conditor
