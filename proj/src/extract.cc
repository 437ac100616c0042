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

#include "conditor/extract.h"

#include <algorithm>
#include <charconv>

#include "rules_internal.h"

namespace conditor {

namespace {

constexpr int kMinYear = 1;
constexpr int kMaxYear = 2999;

// A candidate before conflict resolution. `date` indexes into the date
// payloads when kind == Date.
struct Candidate {
  EntitySpan span;
  std::optional<std::size_t> date;
};

struct DatePayload {
  std::vector<int> years;
  std::optional<int> day;
  std::optional<int> month;
};

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Narrows a byte range of `text` to its non-space core and converts it to
// code point positions.
std::optional<Span> trimmed_span(const Utf8Index &index, std::size_t byte_begin,
                                 std::size_t byte_end) {
  std::size_t b = index.cp_of(byte_begin);
  std::size_t e = index.cp_of(byte_end);
  while (b < e && is_space(index.at(b))) ++b;
  while (e > b && is_space(index.at(e - 1))) --e;
  if (b == e) return std::nullopt;
  return Span{b, e};
}

bool is_value_field(EntityKind kind, std::string_view field) {
  switch (kind) {
    case EntityKind::Role: return field == "role" || field == "role_spec";
    case EntityKind::Place: return field == "place";
    case EntityKind::Person: return field == "person";
    case EntityKind::Event:
    case EntityKind::Instrument: return field == "value";
    case EntityKind::Date: return false;
  }
  return false;
}

struct SentenceInput {
  std::string_view text;
  const Utf8Index &index;
  const std::vector<MarkerRef> &refs;  // relative to the sentence
  const CorpusContext *context;
};

void run_regex_rule(const CompiledRule &rule, const SentenceInput &in,
                    const RuleSet &rules, std::vector<Candidate> &out,
                    std::vector<DatePayload> &dates, std::vector<Lint> *lints) {
  const RuleSpec &spec = rule.spec;
  const char *base = in.text.data();
  boost::u32regex_iterator<const char *> it(base, base + in.text.size(), rule.regex);
  const boost::u32regex_iterator<const char *> end;
  auto byte_pos = [&](const auto &iter) {
    return static_cast<std::size_t>(iter - base);
  };
  for (; it != end; ++it) {
    const auto &m = *it;
    if (m[0].first == m[0].second) continue;
    const std::size_t whole_begin = byte_pos(m[0].first);
    const std::size_t whole_end = whole_begin + static_cast<std::size_t>(
        std::distance(m[0].first, m[0].second));

    Candidate c;
    c.span.kind = spec.kind;
    c.span.rule_id = spec.rule_id;
    c.span.priority = spec.priority;

    if (spec.kind == EntityKind::Date) {
      DatePayload payload;
      bool valid = true;
      for (const Capture &cap : spec.captures) {
        const auto &sub = m[cap.name.c_str()];
        if (!sub.matched) continue;
        const std::string value(sub.first, sub.second);
        if (cap.field == "year") {
          auto y = parse_int(value);
          if (!y || *y < kMinYear || *y > kMaxYear) {
            valid = false;
            break;
          }
          payload.years.push_back(*y);
        } else if (cap.field == "day") {
          auto d = parse_int(value);
          if (!d || *d < 1 || *d > 31) {
            valid = false;
            break;
          }
          payload.day = d;
        } else if (cap.field == "month") {
          auto mo = parse_int(value);
          if (!mo) mo = rules.month_number(value);
          if (!mo || *mo < 1 || *mo > 12) {
            valid = false;
            break;
          }
          payload.month = mo;
        }
      }
      if (payload.day && !payload.month) valid = false;
      if (!valid || payload.years.empty()) {
        if (lints) {
          lints->push_back({"date.unparseable",
                            "rule " + spec.rule_id + " matched '" +
                                std::string(in.text.substr(whole_begin, whole_end - whole_begin)) +
                                "' without a valid date",
                            std::nullopt});
        }
        continue;
      }
      auto span = trimmed_span(in.index, whole_begin, whole_end);
      if (!span) continue;
      c.span.char_span = *span;
      c.span.value = std::string(in.index.slice(*span));
      c.span.field = "date";
      c.date = dates.size();
      dates.push_back(std::move(payload));
      out.push_back(std::move(c));
      continue;
    }

    std::size_t vb = whole_begin;
    std::size_t ve = whole_end;
    std::string field;
    bool found = spec.captures.empty();
    for (const Capture &cap : spec.captures) {
      if (!is_value_field(spec.kind, cap.field)) continue;
      const auto &sub = m[cap.name.c_str()];
      if (!sub.matched) continue;
      vb = byte_pos(sub.first);
      ve = vb + static_cast<std::size_t>(std::distance(sub.first, sub.second));
      field = cap.field;
      found = true;
      break;
    }
    if (!found) continue;
    if (field.empty()) {
      switch (spec.kind) {
        case EntityKind::Role: field = "role"; break;
        case EntityKind::Place: field = "place"; break;
        case EntityKind::Person: field = "person"; break;
        default: field = "value"; break;
      }
    }
    auto span = trimmed_span(in.index, vb, ve);
    if (!span) continue;
    // A capital that is only capital because it opens the sentence is not
    // evidence of a place name.
    if (spec.kind == EntityKind::Place && span->begin == 0) continue;
    c.span.char_span = *span;
    c.span.value = std::string(in.index.slice(*span));
    c.span.field = std::move(field);
    out.push_back(std::move(c));
  }
}

void run_alias_rule(const CompiledRule &rule, const SentenceInput &in,
                    std::vector<Candidate> &out) {
  if (in.context == nullptr || in.context->aliases.empty()) return;
  const std::vector<Token> tokens = tokenize(in.text);
  std::vector<std::string> folded;
  folded.reserve(tokens.size());
  for (const Token &t : tokens) folded.push_back(t.normalized);
  for (const auto &match : in.context->aliases.find_longest(folded)) {
    Candidate c;
    c.span.kind = EntityKind::Person;
    c.span.rule_id = rule.spec.rule_id;
    c.span.priority = rule.spec.priority;
    c.span.field = "person";
    c.span.char_span = {tokens[match.first_token].char_span.begin,
                        tokens[match.end_token - 1].char_span.end};
    c.span.value = std::string(in.index.slice(c.span.char_span));
    c.span.resolved = match.topic;
    out.push_back(std::move(c));
  }
}

void run_marker_place_rule(const CompiledRule &rule, const RuleSet &rules,
                           const SentenceInput &in, std::vector<Candidate> &out) {
  if (in.context == nullptr) return;
  for (const MarkerRef &ref : in.refs) {
    if (!ref.target_id || ref.char_span.empty()) continue;
    auto it = in.context->subcategory_of.find(*ref.target_id);
    if (it == in.context->subcategory_of.end()) continue;
    if (!rules.is_place_subcategory(it->second)) continue;
    Candidate c;
    c.span.kind = EntityKind::Place;
    c.span.rule_id = rule.spec.rule_id;
    c.span.priority = rule.spec.priority;
    c.span.field = "place";
    c.span.char_span = ref.char_span;
    c.span.value = std::string(in.index.slice(ref.char_span));
    c.span.resolved = ref.target_id;
    out.push_back(std::move(c));
  }
}

void collect(const RuleSet &rules, const SentenceInput &in,
             const std::vector<EntityKind> &kinds, std::vector<Candidate> &out,
             std::vector<DatePayload> &dates, std::vector<Lint> *lints) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const CompiledRule &rule = rules.compiled(i);
    if (std::find(kinds.begin(), kinds.end(), rule.spec.kind) == kinds.end()) continue;
    switch (rule.matcher) {
      case Matcher::Regex:
        run_regex_rule(rule, in, rules, out, dates, lints);
        break;
      case Matcher::AliasTable:
        run_alias_rule(rule, in, out);
        break;
      case Matcher::MarkerPlaces:
        run_marker_place_rule(rule, rules, in, out);
        break;
    }
  }
}

// Keeps a maximal set of pairwise non-overlapping candidates, preferring
// higher priority, then longer spans, then the smaller rule_id, then the
// earlier position. Result is sorted by position.
std::vector<Candidate> resolve(std::vector<Candidate> candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate &a, const Candidate &b) {
                     if (a.span.priority != b.span.priority) return a.span.priority > b.span.priority;
                     if (a.span.char_span.length() != b.span.char_span.length()) {
                       return a.span.char_span.length() > b.span.char_span.length();
                     }
                     if (a.span.rule_id != b.span.rule_id) return a.span.rule_id < b.span.rule_id;
                     return a.span.char_span < b.span.char_span;
                   });
  std::vector<Candidate> kept;
  for (Candidate &c : candidates) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](const Candidate &k) {
      return k.span.char_span.overlaps(c.span.char_span);
    });
    if (!clash) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end(), [](const Candidate &a, const Candidate &b) {
    if (a.span.char_span != b.span.char_span) return a.span.char_span < b.span.char_span;
    return a.span.rule_id < b.span.rule_id;
  });
  return kept;
}

bool crosses_clause(const Utf8Index &index, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    const char32_t c = index.at(i);
    if (c == U';' || c == U':') return true;
  }
  return false;
}

struct Binding {
  DateFact fact;
  std::size_t date_span;
  std::size_t role_span;
  std::optional<std::size_t> place_span;
};

// Role: nearest Role span ending before the date within the same clause.
// Place: nearest Place span in the sentence, ties going to the earlier one.
std::vector<Binding> bind_dates(const std::vector<EntitySpan> &spans,
                                const std::vector<std::optional<DatePayload>> &payloads,
                                const Utf8Index &index, std::vector<Lint> *lints) {
  std::vector<Binding> out;
  for (std::size_t d = 0; d < spans.size(); ++d) {
    if (spans[d].kind != EntityKind::Date || !payloads[d]) continue;
    const Span date = spans[d].char_span;

    std::optional<std::size_t> role;
    for (std::size_t r = 0; r < spans.size(); ++r) {
      if (spans[r].kind != EntityKind::Role || spans[r].char_span.end > date.begin) continue;
      if (!role || spans[r].char_span.end > spans[*role].char_span.end) role = r;
    }
    if (role && crosses_clause(index, spans[*role].char_span.end, date.begin)) role.reset();
    if (!role) {
      if (lints) {
        lints->push_back({"date.unbound", "no role for date '" + spans[d].value + "'",
                          std::nullopt});
      }
      continue;
    }

    std::optional<std::size_t> place;
    std::size_t best = 0;
    for (std::size_t p = 0; p < spans.size(); ++p) {
      if (spans[p].kind != EntityKind::Place) continue;
      const Span s = spans[p].char_span;
      const std::size_t distance = s.end <= date.begin ? date.begin - s.end
                                   : s.begin >= date.end ? s.begin - date.end
                                                         : 0;
      if (!place || distance < best) {
        place = p;
        best = distance;
      }
    }

    for (int year : payloads[d]->years) {
      Binding b;
      b.fact.role = to_lower(spans[*role].value);
      if (place) b.fact.location = spans[*place].value;
      b.fact.day = payloads[d]->day;
      b.fact.month = payloads[d]->month;
      b.fact.year = year;
      b.date_span = d;
      b.role_span = *role;
      b.place_span = place;
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<EntitySpan> spans_of(std::vector<Candidate> candidates) {
  std::vector<EntitySpan> out;
  out.reserve(candidates.size());
  for (Candidate &c : candidates) out.push_back(std::move(c.span));
  return out;
}

}  // namespace

std::vector<DateFact> EnrichedEntry::date_facts() const {
  std::vector<DateFact> out;
  out.reserve(facts.size());
  for (const BoundFact &f : facts) out.push_back(f.fact);
  return out;
}

std::vector<EntitySpan> detect_roles(std::string_view sentence, const RuleSet &rules) {
  const Utf8Index index(sentence);
  const std::vector<MarkerRef> no_refs;
  std::vector<Candidate> candidates;
  std::vector<DatePayload> dates;
  collect(rules, {sentence, index, no_refs, nullptr}, {EntityKind::Role}, candidates, dates,
          nullptr);
  return spans_of(resolve(std::move(candidates)));
}

std::vector<EntitySpan> detect_places(std::string_view sentence,
                                      const std::vector<MarkerRef> &refs,
                                      const RuleSet &rules, const CorpusContext &context) {
  const Utf8Index index(sentence);
  std::vector<Candidate> candidates;
  std::vector<DatePayload> dates;
  collect(rules, {sentence, index, refs, &context}, {EntityKind::Place}, candidates, dates,
          nullptr);
  return spans_of(resolve(std::move(candidates)));
}

std::vector<EntitySpan> detect_persons(std::string_view sentence,
                                       const AliasTable &known_titles,
                                       const RuleSet &rules) {
  const Utf8Index index(sentence);
  const std::vector<MarkerRef> no_refs;
  CorpusContext context;
  context.aliases = known_titles;
  std::vector<Candidate> candidates;
  std::vector<DatePayload> dates;
  collect(rules, {sentence, index, no_refs, &context}, {EntityKind::Person}, candidates,
          dates, nullptr);
  return spans_of(resolve(std::move(candidates)));
}

std::vector<DateCandidate> detect_date_candidates(std::string_view sentence,
                                                  const RuleSet &rules,
                                                  std::vector<Lint> *lints) {
  const Utf8Index index(sentence);
  const std::vector<MarkerRef> no_refs;
  std::vector<Candidate> candidates;
  std::vector<DatePayload> dates;
  collect(rules, {sentence, index, no_refs, nullptr}, {EntityKind::Date}, candidates, dates,
          lints);
  std::vector<DateCandidate> out;
  for (Candidate &c : candidates) {
    DatePayload &p = dates[*c.date];
    out.push_back({std::move(c.span), std::move(p.years), p.day, p.month});
  }
  return out;
}

std::vector<DateFact> detect_dates(std::string_view sentence,
                                   const std::vector<EntitySpan> &context,
                                   const RuleSet &rules) {
  const Utf8Index index(sentence);
  const std::vector<MarkerRef> no_refs;
  std::vector<Candidate> candidates;
  std::vector<DatePayload> payloads;
  collect(rules, {sentence, index, no_refs, nullptr}, {EntityKind::Date}, candidates,
          payloads, nullptr);
  std::vector<Candidate> dates = resolve(std::move(candidates));
  // Context spans already survived their own resolution; dates that collide
  // with them lose.
  std::vector<EntitySpan> spans;
  std::vector<std::optional<DatePayload>> aligned;
  for (const EntitySpan &s : context) {
    spans.push_back(s);
    aligned.emplace_back();
  }
  for (Candidate &c : dates) {
    const bool clash = std::any_of(context.begin(), context.end(), [&](const EntitySpan &s) {
      return s.char_span.overlaps(c.span.char_span);
    });
    if (clash) continue;
    aligned.emplace_back(payloads[*c.date]);
    spans.push_back(std::move(c.span));
  }
  std::vector<DateFact> facts;
  for (Binding &b : bind_dates(spans, aligned, index, nullptr)) {
    facts.push_back(std::move(b.fact));
  }
  return facts;
}

EnrichedEntry interpret_entry(const SourceEntry &entry, const CleanText &clean,
                              const RuleSet &rules, const CorpusContext &context) {
  EnrichedEntry enriched;
  enriched.id = entry.voz_id;
  const Utf8Index text_index(clean.text);
  static const std::vector<EntityKind> kAllKinds = {
      EntityKind::Date,   EntityKind::Role,  EntityKind::Place,
      EntityKind::Person, EntityKind::Event, EntityKind::Instrument};

  for (const Span &sentence : clean.sentences) {
    const std::string_view text = text_index.slice(sentence);
    const Utf8Index index(text);
    std::vector<MarkerRef> refs;
    for (const MarkerRef &ref : clean.refs) {
      if (!sentence.contains(ref.char_span)) continue;
      MarkerRef local = ref;
      local.char_span = {ref.char_span.begin - sentence.begin,
                         ref.char_span.end - sentence.begin};
      refs.push_back(std::move(local));
    }

    std::vector<Candidate> candidates;
    std::vector<DatePayload> payloads;
    std::vector<Lint> lints;
    collect(rules, {text, index, refs, &context}, kAllKinds, candidates, payloads, &lints);
    std::vector<Candidate> kept = resolve(std::move(candidates));

    std::vector<EntitySpan> spans;
    std::vector<std::optional<DatePayload>> aligned;
    for (Candidate &c : kept) {
      aligned.push_back(c.date ? std::optional<DatePayload>(payloads[*c.date]) : std::nullopt);
      spans.push_back(std::move(c.span));
    }
    std::vector<Binding> bindings = bind_dates(spans, aligned, index, &lints);

    const std::size_t offset = enriched.spans.size();
    for (Binding &b : bindings) {
      BoundFact f;
      f.fact = std::move(b.fact);
      f.date_span = offset + b.date_span;
      f.role_span = offset + b.role_span;
      if (b.place_span) f.place_span = offset + *b.place_span;
      enriched.facts.push_back(std::move(f));
    }
    for (EntitySpan &s : spans) {
      s.char_span.begin += sentence.begin;
      s.char_span.end += sentence.begin;
      enriched.spans.push_back(std::move(s));
    }
    for (Lint &l : lints) {
      l.entry = entry.voz_id;
      enriched.lints.push_back(std::move(l));
    }
  }
  return enriched;
}

}  // namespace conditor
