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

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

#include "conditor/extract.h"
#include "conditor/resources.h"
#include "rules_internal.h"

namespace conditor {

namespace {

constexpr std::array<std::pair<EntityKind, std::string_view>, 6> kKindNames = {{
    {EntityKind::Date, "Date"},
    {EntityKind::Role, "Role"},
    {EntityKind::Place, "Place"},
    {EntityKind::Person, "Person"},
    {EntityKind::Event, "Event"},
    {EntityKind::Instrument, "Instrument"},
}};

bool field_allowed(EntityKind kind, std::string_view field) {
  switch (kind) {
    case EntityKind::Date:
      return field == "year" || field == "day" || field == "month";
    case EntityKind::Role:
      return field == "role" || field == "role_spec";
    case EntityKind::Place:
      return field == "place";
    case EntityKind::Person:
      return field == "person";
    case EntityKind::Event:
    case EntityKind::Instrument:
      return field == "value";
  }
  return false;
}

std::string_view strip_comment_line(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  if (line[first] == '#') return {};
  auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

bool starts_with_word(std::string_view line, std::string_view word) {
  return line.size() > word.size() && line.compare(0, word.size(), word) == 0 &&
         (line[word.size()] == ' ' || line[word.size()] == '\t');
}

std::string_view rest_after(std::string_view line, std::string_view word) {
  std::string_view rest = line.substr(word.size());
  const auto b = rest.find_first_not_of(" \t");
  return b == std::string_view::npos ? std::string_view{} : rest.substr(b);
}

std::string regex_escape(std::string_view s) {
  static const std::string_view special = "\\^$.|?*+()[]{}";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

struct Translated {
  std::string pattern;
  // Source offset for each output byte.
  std::vector<std::size_t> origin;
};

// Expands {lexicon:name} references and rewrites Python-style named groups
// and Unicode property escapes into the syntax the regex engine accepts.
Translated translate(const RuleSpec &spec,
                     const std::map<std::string, std::vector<std::string>> &lexicons) {
  Translated t;
  const std::string &p = spec.pattern;
  auto emit = [&](std::string_view s, std::size_t origin) {
    t.pattern += s;
    t.origin.insert(t.origin.end(), s.size(), origin);
  };
  std::size_t i = 0;
  bool in_class = false;
  std::size_t class_start = 0;  // first position inside the current class
  while (i < p.size()) {
    if (p[i] == '\\' && i + 1 < p.size() && (p[i + 1] == 'p' || p[i + 1] == 'P')) {
      std::size_t end = i + 3;
      std::string name;
      if (i + 2 < p.size() && p[i + 2] == '{') {
        const auto close = p.find('}', i + 3);
        if (close == std::string::npos) {
          throw RuleError(spec.rule_id, i, "rule '" + spec.rule_id + "': unterminated property at " + std::to_string(i));
        }
        name = p.substr(i + 3, close - i - 3);
        end = close + 1;
      } else if (i + 2 < p.size()) {
        name = p.substr(i + 2, 1);
      }
      // One-letter general categories are spelled "X*" by the engine.
      if (name.size() == 1) name += '*';
      if (in_class) {
        if (p[i + 1] == 'P') {
          throw RuleError(spec.rule_id, i, "rule '" + spec.rule_id + "': negated property inside a character class at " + std::to_string(i));
        }
        // The engine ignores \p{..} inside brackets but honours [:name:].
        emit("[:" + name + ":]", i);
      } else {
        emit(std::string("\\") + p[i + 1] + "{" + name + "}", i);
      }
      i = end;
    } else if (p[i] == '\\' && i + 1 < p.size()) {
      emit(p.substr(i, 2), i);
      i += 2;
    } else if (in_class) {
      if (p.compare(i, 2, "[:") == 0) {
        const auto close = p.find(":]", i + 2);
        const std::size_t end = close == std::string::npos ? i + 1 : close + 2;
        emit(p.substr(i, end - i), i);
        i = end;
        continue;
      }
      if (p[i] == ']' && i > class_start) in_class = false;
      emit(p.substr(i, 1), i);
      ++i;
    } else if (p[i] == '[') {
      in_class = true;
      class_start = i + 1;
      if (class_start < p.size() && p[class_start] == '^') ++class_start;
      emit(p.substr(i, 1), i);
      ++i;
    } else if (p.compare(i, 4, "(?P<") == 0) {
      emit("(?<", i);
      i += 4;
    } else if (p.compare(i, 4, "(?P=") == 0) {
      const auto close = p.find(')', i);
      if (close == std::string::npos) {
        throw RuleError(spec.rule_id, i, "rule '" + spec.rule_id + "': unterminated (?P= at " + std::to_string(i));
      }
      emit("\\k<" + p.substr(i + 4, close - i - 4) + ">", i);
      i = close + 1;
    } else if (p.compare(i, 9, "{lexicon:") == 0) {
      const auto close = p.find('}', i);
      if (close == std::string::npos) {
        throw RuleError(spec.rule_id, i, "rule '" + spec.rule_id + "': unterminated lexicon reference at " + std::to_string(i));
      }
      const std::string name = p.substr(i + 9, close - i - 9);
      auto it = lexicons.find(name);
      if (it == lexicons.end()) {
        throw RuleError(spec.rule_id, i, "rule '" + spec.rule_id + "': unknown lexicon '" + name + "' at " + std::to_string(i));
      }
      std::vector<std::string> terms = it->second;
      std::sort(terms.begin(), terms.end(), [](const std::string &a, const std::string &b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
      });
      std::string alternation = "(?:";
      if (terms.empty()) alternation += "(?!)";
      for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k > 0) alternation += "|";
        alternation += regex_escape(terms[k]);
      }
      alternation += ")";
      emit(alternation, i);
      i = close + 1;
    } else {
      emit(p.substr(i, 1), i);
      ++i;
    }
  }
  t.origin.push_back(p.size());
  return t;
}

CompiledRule compile(RuleSpec spec,
                     const std::map<std::string, std::vector<std::string>> &lexicons) {
  CompiledRule rule;
  const std::string &id = spec.rule_id;
  if (spec.pattern == kAliasTablePattern || spec.pattern == kMarkerPlacesPattern) {
    const bool alias = spec.pattern == kAliasTablePattern;
    const EntityKind expected = alias ? EntityKind::Person : EntityKind::Place;
    if (spec.kind != expected) {
      throw RuleError(id, 0, "rule '" + id + "': " + spec.pattern + " requires kind " +
                                 std::string(to_string(expected)));
    }
    if (!spec.captures.empty()) {
      throw RuleError(id, 0, "rule '" + id + "': " + spec.pattern + " takes no captures");
    }
    rule.matcher = alias ? Matcher::AliasTable : Matcher::MarkerPlaces;
    rule.spec = std::move(spec);
    return rule;
  }

  const Translated t = translate(spec, lexicons);
  try {
    rule.regex = boost::make_u32regex(t.pattern, boost::regex_constants::perl);
  } catch (const boost::regex_error &e) {
    const auto pos = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, e.position()));
    const std::size_t origin = t.origin[std::min(pos, t.origin.size() - 1)];
    throw RuleError(id, origin, "rule '" + id + "': bad pattern at position " +
                                    std::to_string(origin) + ": " + e.what());
  }

  bool has_year = false;
  for (const Capture &c : spec.captures) {
    if (t.pattern.find("(?<" + c.name + ">") == std::string::npos) {
      throw RuleError(id, 0, "rule '" + id + "': capture '" + c.name + "' not in pattern");
    }
    if (!field_allowed(spec.kind, c.field)) {
      throw RuleError(id, 0, "rule '" + id + "': field '" + c.field + "' not valid for kind " +
                                 std::string(to_string(spec.kind)));
    }
    has_year = has_year || c.field == "year";
  }
  if (spec.kind == EntityKind::Date && !has_year) {
    throw RuleError(id, 0, "rule '" + id + "': Date rules need a year capture");
  }
  rule.spec = std::move(spec);
  return rule;
}

}  // namespace

std::string_view to_string(EntityKind kind) {
  for (const auto &[k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<EntityKind> parse_entity_kind(std::string_view name) {
  for (const auto &[k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

struct RuleSet::Impl {
  std::vector<CompiledRule> rules;
  std::map<std::string, std::vector<std::string>> lexicons;
  std::vector<std::string> folded_months;
  std::set<TopicId> place_subcategories;

  void finish_lexicons() {
    folded_months.clear();
    place_subcategories.clear();
    if (auto it = lexicons.find("months"); it != lexicons.end()) {
      for (const auto &m : it->second) folded_months.push_back(fold(m));
    }
    if (auto it = lexicons.find("place_subcategories"); it != lexicons.end()) {
      for (const auto &s : it->second) {
        TopicId v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size()) place_subcategories.insert(v);
      }
    }
  }
};

RuleSet::RuleSet() : impl_(std::make_unique<Impl>()) {}
RuleSet::~RuleSet() = default;
RuleSet::RuleSet(RuleSet &&) noexcept = default;
RuleSet &RuleSet::operator=(RuleSet &&) noexcept = default;

RuleSet RuleSet::load(std::string_view text) {
  std::vector<RuleSpec> specs;
  std::map<std::string, std::vector<std::string>> lexicons;

  enum class State { Idle, Rule, Lexicon };
  State state = State::Idle;
  std::string lexicon_name;
  std::set<std::string> seen_pattern;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto current_id = [&]() -> std::string {
    return state == State::Rule ? specs.back().rule_id : lexicon_name;
  };
  auto syntax = [&](const std::string &message) {
    return RuleError(current_id(), line_no,
                     "rules line " + std::to_string(line_no) + ": " + message);
  };

  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string_view line = strip_comment_line(raw);
    if (line.empty()) {
      // Comment lines do not end a stanza; blank lines do.
      if (raw.find_first_not_of(" \t\r") == std::string_view::npos) state = State::Idle;
      continue;
    }

    if (starts_with_word(line, "rule")) {
      RuleSpec spec;
      spec.rule_id = std::string(rest_after(line, "rule"));
      for (const auto &s : specs) {
        if (s.rule_id == spec.rule_id) {
          throw RuleError(spec.rule_id, line_no, "duplicate rule_id '" + spec.rule_id + "'");
        }
      }
      specs.push_back(std::move(spec));
      state = State::Rule;
      continue;
    }
    if (starts_with_word(line, "lexicon")) {
      std::string_view name = rest_after(line, "lexicon");
      if (!name.empty() && name.back() == ':') name.remove_suffix(1);
      lexicon_name = trim(name);
      if (lexicon_name.empty()) throw syntax("lexicon needs a name");
      if (lexicons.count(lexicon_name) != 0) {
        throw RuleError(lexicon_name, line_no, "duplicate lexicon '" + lexicon_name + "'");
      }
      lexicons[lexicon_name];
      state = State::Lexicon;
      continue;
    }

    switch (state) {
      case State::Idle:
        throw syntax("expected 'rule <id>' or 'lexicon <name>:'");
      case State::Lexicon:
        lexicons[lexicon_name].emplace_back(line);
        break;
      case State::Rule: {
        RuleSpec &spec = specs.back();
        if (starts_with_word(line, "kind")) {
          auto kind = parse_entity_kind(rest_after(line, "kind"));
          if (!kind) throw syntax("unknown kind '" + std::string(rest_after(line, "kind")) + "'");
          spec.kind = *kind;
        } else if (starts_with_word(line, "priority")) {
          const std::string_view v = rest_after(line, "priority");
          int value = 0;
          auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
          if (ec != std::errc() || ptr != v.data() + v.size()) {
            throw syntax("bad priority '" + std::string(v) + "'");
          }
          spec.priority = value;
        } else if (starts_with_word(line, "pattern")) {
          spec.pattern = std::string(rest_after(line, "pattern"));
          seen_pattern.insert(spec.rule_id);
        } else if (starts_with_word(line, "capture")) {
          const std::string_view v = rest_after(line, "capture");
          const auto arrow = v.find("->");
          if (arrow == std::string_view::npos) throw syntax("capture needs '<name> -> <field>'");
          Capture c{trim(v.substr(0, arrow)), trim(v.substr(arrow + 2))};
          if (c.name.empty() || c.field.empty()) throw syntax("capture needs '<name> -> <field>'");
          spec.captures.push_back(std::move(c));
        } else {
          throw syntax("unknown key in '" + std::string(line) + "'");
        }
        break;
      }
    }
  }

  RuleSet set;
  set.impl_->lexicons = std::move(lexicons);
  for (RuleSpec &spec : specs) {
    if (seen_pattern.count(spec.rule_id) == 0) {
      throw RuleError(spec.rule_id, 0, "rule '" + spec.rule_id + "' has no pattern");
    }
    set.impl_->rules.push_back(compile(std::move(spec), set.impl_->lexicons));
  }
  set.impl_->finish_lexicons();
  if (!set.impl_->folded_months.empty() && set.impl_->folded_months.size() != 12) {
    throw RuleError("months", 0, "lexicon 'months' must list twelve names");
  }
  return set;
}

const RuleSet &RuleSet::defaults() {
  static const RuleSet rules = load(embedded::k_default_rules);
  return rules;
}

std::size_t RuleSet::size() const { return impl_->rules.size(); }
const RuleSpec &RuleSet::spec(std::size_t i) const { return impl_->rules.at(i).spec; }
const CompiledRule &RuleSet::compiled(std::size_t i) const { return impl_->rules.at(i); }

std::vector<RuleSpec> RuleSet::specs() const {
  std::vector<RuleSpec> out;
  for (const auto &r : impl_->rules) out.push_back(r.spec);
  return out;
}

const std::map<std::string, std::vector<std::string>> &RuleSet::lexicons() const {
  return impl_->lexicons;
}

RuleSet RuleSet::subset(const std::vector<bool> &keep) const {
  RuleSet out;
  out.impl_->lexicons = impl_->lexicons;
  for (std::size_t i = 0; i < impl_->rules.size(); ++i) {
    if (i < keep.size() && keep[i]) out.impl_->rules.push_back(impl_->rules[i]);
  }
  out.impl_->finish_lexicons();
  return out;
}

std::optional<int> RuleSet::month_number(std::string_view name) const {
  const std::string folded = fold(name);
  const auto &months = impl_->folded_months;
  for (std::size_t i = 0; i < months.size(); ++i) {
    if (months[i] == folded) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

bool RuleSet::is_place_subcategory(TopicId subcategory) const {
  return impl_->place_subcategories.count(subcategory) != 0;
}

}  // namespace conditor
