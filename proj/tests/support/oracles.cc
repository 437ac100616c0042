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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "conditor/normalize.h"
#include "conditor/resources.h"
#include "conditor/text.h"

namespace conditor::testing {

std::string reinsert_markers(const std::string &plain, const std::vector<MarkerRef> &refs) {
  const std::u32string cps = decode_utf8(plain);
  std::string out;
  std::size_t at = 0;
  for (const MarkerRef &r : refs) {
    out += encode_utf8(cps.substr(at, r.char_span.begin - at));
    out += "$$$";
    out += encode_utf8(cps.substr(r.char_span.begin, r.char_span.length()));
    out += "%%";
    if (r.target_id) out += std::to_string(*r.target_id);
    out += "$$$";
    at = r.char_span.end;
  }
  out += encode_utf8(cps.substr(at));
  return out;
}

namespace {

struct Doc {
  TopicId id = 0;
  std::vector<std::string> folded;
  std::vector<std::string> surfaces;
};

Doc make_doc(const Topic &t) {
  Doc d;
  d.id = t.id;
  std::vector<std::string> texts{t.base_name};
  texts.insert(texts.end(), t.variants.begin(), t.variants.end());
  texts.push_back(t.body);
  for (const std::string &text : texts) {
    for (const Token &tok : tokenize(text)) {
      d.folded.push_back(tok.normalized);
      d.surfaces.push_back(tok.surface);
    }
  }
  return d;
}

bool contains_term(const Doc &d, const std::string &term) {
  return std::find(d.folded.begin(), d.folded.end(), term) != d.folded.end();
}

bool contains_phrase(const Doc &d, const std::vector<std::string> &phrase) {
  if (phrase.empty() || phrase.size() > d.folded.size()) return false;
  for (std::size_t i = 0; i + phrase.size() <= d.folded.size(); ++i) {
    if (std::equal(phrase.begin(), phrase.end(), d.folded.begin() + static_cast<long>(i))) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<OracleHit> oracle_search(const std::vector<Topic> &topics, const Query &query,
                                     const std::set<std::string> &stopwords,
                                     double stopword_weight) {
  std::vector<Doc> docs;
  for (const Topic &t : topics) docs.push_back(make_doc(t));

  std::vector<OracleHit> hits;
  const bool has_phrase = query.phrase && !query.phrase->empty();
  std::set<std::string> terms(query.clauses.begin(), query.clauses.end());
  if (query.phrase) terms.insert(query.phrase->begin(), query.phrase->end());

  for (const Doc &d : docs) {
    bool match;
    if (query.clauses.empty()) {
      match = has_phrase;
    } else if (query.mode == QueryMode::Or) {
      match = std::any_of(query.clauses.begin(), query.clauses.end(),
                          [&](const std::string &t) { return contains_term(d, t); });
    } else {
      match = std::all_of(query.clauses.begin(), query.clauses.end(),
                          [&](const std::string &t) { return contains_term(d, t); });
    }
    if (match && has_phrase) match = contains_phrase(d, *query.phrase);
    if (!match) continue;

    double sum = 0.0;
    double best = -1.0;
    std::size_t anchor = 0;
    bool anchored = false;
    for (const std::string &term : terms) {
      const auto tf = static_cast<double>(std::count(d.folded.begin(), d.folded.end(), term));
      if (tf == 0) continue;
      double df = 0;
      for (const Doc &other : docs) df += contains_term(other, term) ? 1 : 0;
      const double idf = std::log(1.0 + static_cast<double>(docs.size()) / df);
      const double weight = stopwords.count(term) ? stopword_weight : 1.0;
      const double c = tf * idf * weight;
      sum += c;
      if (c > best) {
        best = c;
        anchor = static_cast<std::size_t>(
            std::find(d.folded.begin(), d.folded.end(), term) - d.folded.begin());
        anchored = true;
      }
    }
    OracleHit hit;
    hit.topic = d.id;
    hit.score = sum / std::sqrt(static_cast<double>(d.folded.size()));
    if (anchored) {
      const std::size_t from = anchor >= kSnippetRadius ? anchor - kSnippetRadius : 0;
      const std::size_t to = std::min(d.surfaces.size(), anchor + kSnippetRadius + 1);
      std::ostringstream snippet;
      for (std::size_t i = from; i < to; ++i) snippet << (i > from ? " " : "") << d.surfaces[i];
      hit.snippet = snippet.str();
    }
    hits.push_back(std::move(hit));
  }
  return hits;
}

std::vector<OracleHit> rank(std::vector<OracleHit> hits, std::size_t k) {
  std::sort(hits.begin(), hits.end(), [](const OracleHit &a, const OracleHit &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.topic < b.topic;
  });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

namespace {

// Folded forms of a title: full, and without connectives when two tokens
// or more remain.
std::vector<std::vector<std::string>> title_forms(const std::string &title) {
  std::vector<std::string> full;
  for (const Token &t : tokenize(title)) full.push_back(t.normalized);
  if (full.empty()) return {};
  std::vector<std::vector<std::string>> forms{full};
  std::vector<std::string> bare;
  for (const std::string &t : full) {
    if (!TextResources::defaults().connectives.contains(t)) bare.push_back(t);
  }
  if (bare.size() >= 2 && bare != full) forms.push_back(bare);
  return forms;
}

struct Hit {
  std::size_t begin;
  std::size_t end;
  TopicId topic;
};

}  // namespace

std::vector<Association> oracle_crossing(const std::vector<Topic> &topics,
                                         const std::map<TopicId, TopicEvidence> &evidence) {
  std::map<TopicId, std::vector<std::vector<std::string>>> forms;
  for (const Topic &t : topics) forms[t.id] = title_forms(t.base_name);

  std::map<std::pair<TopicId, TopicId>, std::string> mentions;
  std::vector<Association> out;
  for (const Topic &a : topics) {
    const std::vector<Token> tokens = tokenize(a.body);
    std::vector<Hit> hits;
    for (const auto &[id, fs] : forms) {
      for (const auto &form : fs) {
        for (std::size_t p = 0; p + form.size() <= tokens.size(); ++p) {
          bool eq = true;
          for (std::size_t i = 0; i < form.size() && eq; ++i) eq = tokens[p + i].normalized == form[i];
          if (eq) hits.push_back({p, p + form.size(), id});
        }
      }
    }
    std::vector<Hit> kept;
    for (const Hit &h : hits) {
      bool inside = false;
      for (const Hit &o : hits) {
        const bool same = o.begin == h.begin && o.end == h.end;
        if (!same && o.begin <= h.begin && h.end <= o.end) inside = true;
      }
      if (!inside) kept.push_back(h);
    }
    const TopicEvidence *ev = evidence.count(a.id) ? &evidence.at(a.id) : nullptr;
    std::map<TopicId, Hit> earliest;
    for (const Hit &h : kept) {
      if (h.topic == a.id) continue;
      auto it = earliest.find(h.topic);
      if (it == earliest.end() || std::pair(h.begin, h.end) < std::pair(it->second.begin, it->second.end)) {
        earliest[h.topic] = h;
      }
    }
    for (const auto &[target, h] : earliest) {
      const std::size_t cb = tokens[h.begin].char_span.begin;
      const std::size_t ce = tokens[h.end - 1].char_span.end;
      std::string role(kMentionRole);
      if (ev != nullptr && !ev->roles.empty()) {
        std::size_t best = SIZE_MAX;
        for (const EntitySpan &r : ev->roles) {
          std::size_t dist = 0;
          if (r.char_span.end <= cb) dist = cb - r.char_span.end;
          if (r.char_span.begin >= ce) dist = r.char_span.begin - ce;
          if (dist < best) {
            best = dist;
            role = to_lower(r.value);
          }
        }
      }
      mentions[{a.id, target}] = role;
    }

    if (ev == nullptr) continue;
    for (const MarkerRef &ref : ev->refs) {
      std::optional<TopicId> target;
      if (ref.target_id) {
        if (forms.count(*ref.target_id)) target = ref.target_id;
      } else {
        std::vector<std::string> wanted;
        for (const Token &t : tokenize(ref.surface_term)) wanted.push_back(t.normalized);
        bool names_self = false;
        for (const auto &[id, fs] : forms) {
          if (std::find(fs.begin(), fs.end(), wanted) == fs.end()) continue;
          if (id == a.id) {
            names_self = true;
            continue;
          }
          target = id;
          break;
        }
        if (!target && names_self) continue;
      }
      if (target == a.id) continue;
      Association assoc;
      assoc.source = a.id;
      assoc.role = std::string(kReferenceRole);
      if (target) {
        assoc.target = *target;
      } else {
        assoc.target = ref.surface_term;
      }
      out.push_back(std::move(assoc));
    }
  }

  for (const auto &[key, role] : mentions) {
    const bool mutual = mentions.count({key.second, key.first}) != 0;
    if (!mutual) {
      out.push_back({key.first, key.second, role, Direction::OneWay});
    } else if (key.first < key.second) {
      out.push_back({key.first, key.second, role, Direction::TwoWay});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<TopicId> oracle_reachable(const TopicMap &map, TopicId root, std::size_t depth) {
  std::set<TopicId> reached{root};
  for (std::size_t step = 0; step < depth; ++step) {
    std::set<TopicId> next = reached;
    for (const Association &a : map.associations) {
      const auto t = a.target_id();
      if (!t) continue;
      if (reached.count(a.source)) next.insert(*t);
      if (a.direction == Direction::TwoWay && reached.count(*t)) next.insert(a.source);
    }
    reached = std::move(next);
  }
  return reached;
}

TopicMap project(const TopicMap &map, const PersistenceDescriptor &d) {
  auto keep = [&](const char *type, const char *field) { return d.persists(type, field); };
  TopicMap out;
  for (const auto &[id, t] : map.topics) {
    Topic p;
    p.id = id;
    if (keep("Topic", "base_name")) p.base_name = t.base_name;
    if (keep("Topic", "variants")) p.variants = t.variants;
    if (keep("Topic", "instance_of")) p.instance_of = t.instance_of;
    if (keep("Topic", "shortdesc")) p.shortdesc = t.shortdesc;
    if (keep("Topic", "body")) p.body = t.body;
    for (const DateFact &f : t.date_facts) {
      DateFact q;
      if (keep("DateFact", "role")) q.role = f.role;
      if (keep("DateFact", "location")) q.location = f.location;
      if (keep("DateFact", "day")) q.day = f.day;
      if (keep("DateFact", "month")) q.month = f.month;
      if (keep("DateFact", "year")) q.year = f.year;
      p.date_facts.push_back(q);
    }
    for (const Occurrence &o : t.occurrences) {
      p.occurrences.push_back({keep("Occurrence", "role_spec") ? o.role_spec : "",
                               keep("Occurrence", "resource_data") ? o.resource_data : ""});
    }
    out.topics.emplace(id, std::move(p));
  }
  for (const Association &a : map.associations) {
    Association q;
    q.source = a.source;
    q.target = keep("Association", "target") ? a.target : AssociationTarget{TopicId{0}};
    if (keep("Association", "role")) q.role = a.role;
    if (keep("Association", "direction")) q.direction = a.direction;
    out.associations.push_back(std::move(q));
  }
  if (d.has_type("UnresolvedRef")) {
    for (const UnresolvedRef &r : map.unresolved_refs) {
      out.unresolved_refs.push_back({r.source, keep("UnresolvedRef", "term") ? r.term : ""});
    }
  }
  return out;
}

bool xml_well_formed(const std::string &document, std::string *error) {
  std::istringstream in(document);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_xml(in, tree);
  } catch (const boost::property_tree::xml_parser_error &e) {
    if (error) *error = e.what();
    return false;
  }
  return true;
}

}  // namespace conditor::testing
