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

// Rule-driven entity extraction over entry bodies.
//
// A RuleSet is loaded from a text file of stanzas (see docs/format-rules.md).
// Each rule is a regular expression whose named captures map onto fact
// fields; two special patterns, `@alias-table` and `@marker-places`, enable
// the corpus-aware person and place detectors. Detectors run per sentence,
// overlapping candidates are resolved by (priority desc, length desc,
// rule_id asc), and surviving dates are bound to the nearest role and place.

#ifndef CONDITOR_EXTRACT_H_
#define CONDITOR_EXTRACT_H_

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conditor/alias.h"
#include "conditor/ingest.h"
#include "conditor/normalize.h"
#include "conditor/resources.h"

namespace conditor {

enum class EntityKind { Date, Role, Place, Person, Event, Instrument };

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view name);

struct Capture {
  std::string name;
  std::string field;

  bool operator==(const Capture &) const = default;
};

struct RuleSpec {
  std::string rule_id;
  EntityKind kind = EntityKind::Date;
  std::string pattern;
  std::vector<Capture> captures;
  int priority = 0;

  bool operator==(const RuleSpec &) const = default;
};

class RuleError : public std::runtime_error {
 public:
  RuleError(std::string rule_id, std::size_t position, const std::string &message)
      : std::runtime_error(message),
        rule_id_(std::move(rule_id)),
        position_(position) {}

  const std::string &rule_id() const { return rule_id_; }
  // Offset into the pattern (or line number for syntax errors).
  std::size_t position() const { return position_; }

 private:
  std::string rule_id_;
  std::size_t position_;
};

struct CompiledRule;

// Immutable after loading; safe to share across threads.
class RuleSet {
 public:
  RuleSet();
  ~RuleSet();
  RuleSet(RuleSet &&) noexcept;
  RuleSet &operator=(RuleSet &&) noexcept;
  RuleSet(const RuleSet &) = delete;
  RuleSet &operator=(const RuleSet &) = delete;

  // Throws RuleError on bad syntax, bad patterns or duplicate ids.
  static RuleSet load(std::string_view rules_file);
  static const RuleSet &defaults();

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const RuleSpec &spec(std::size_t i) const;
  std::vector<RuleSpec> specs() const;
  const std::map<std::string, std::vector<std::string>> &lexicons() const;

  // A new set holding only the rules whose index is selected (lexicons kept).
  RuleSet subset(const std::vector<bool> &keep) const;

  // Month number for a month name (1-12), using the `months` lexicon.
  std::optional<int> month_number(std::string_view name) const;
  bool is_place_subcategory(TopicId subcategory) const;

  const CompiledRule &compiled(std::size_t i) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct EntitySpan {
  EntityKind kind = EntityKind::Date;
  Span char_span;
  std::string value;
  std::string rule_id;
  // Fact field the value was captured as ("role_spec", "place", ...).
  std::string field;
  int priority = 0;
  std::optional<TopicId> resolved;

  bool operator==(const EntitySpan &) const = default;
};

struct DateFact {
  std::string role;
  std::optional<std::string> location;
  std::optional<int> day;
  std::optional<int> month;
  int year = 0;

  bool operator==(const DateFact &) const = default;
  auto operator<=>(const DateFact &) const = default;
};

// A date fact plus the spans it was bound to (indices into spans).
struct BoundFact {
  DateFact fact;
  std::size_t date_span = 0;
  std::size_t role_span = 0;
  std::optional<std::size_t> place_span;

  bool operator==(const BoundFact &) const = default;
};

struct EnrichedEntry {
  TopicId id = 0;
  // Surviving spans in absolute CleanText positions, sorted by position.
  std::vector<EntitySpan> spans;
  std::vector<BoundFact> facts;
  std::vector<Lint> lints;

  std::vector<DateFact> date_facts() const;
  bool operator==(const EnrichedEntry &) const = default;
};

// What the detectors may know about the rest of the corpus.
struct CorpusContext {
  AliasTable aliases;
  std::map<TopicId, TopicId> subcategory_of;
};

// Candidate spans of one kind in one sentence, positions relative to the
// sentence. Dates carry their parsed fields in `dates` (parallel vector).
struct DateCandidate {
  EntitySpan span;
  std::vector<int> years;
  std::optional<int> day;
  std::optional<int> month;
};

std::vector<EntitySpan> detect_roles(std::string_view sentence, const RuleSet &rules);
std::vector<EntitySpan> detect_places(std::string_view sentence,
                                      const std::vector<MarkerRef> &refs,
                                      const RuleSet &rules,
                                      const CorpusContext &context);
std::vector<EntitySpan> detect_persons(std::string_view sentence,
                                       const AliasTable &known_titles,
                                       const RuleSet &rules);
std::vector<DateCandidate> detect_date_candidates(std::string_view sentence,
                                                  const RuleSet &rules,
                                                  std::vector<Lint> *lints = nullptr);

// Binds dates found in `sentence` to the role and place spans in `context`
// (all positions relative to the sentence).
std::vector<DateFact> detect_dates(std::string_view sentence,
                                   const std::vector<EntitySpan> &context,
                                   const RuleSet &rules);

EnrichedEntry interpret_entry(const SourceEntry &entry, const CleanText &clean,
                              const RuleSet &rules, const CorpusContext &context);

}  // namespace conditor

#endif  // CONDITOR_EXTRACT_H_
