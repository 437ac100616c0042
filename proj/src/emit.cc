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

#include "conditor/emit.h"

#include <charconv>
#include <set>

#include "conditor/xml.h"

namespace conditor {

namespace {

void leaf(std::string &out, std::string_view indent, std::string_view name,
          std::string_view value) {
  out += indent;
  out += '<';
  out += name;
  out += '>';
  out += xml::escape_text(value);
  out += "</";
  out += name;
  out += ">\n";
}

void emit_topic(std::string &out, const Topic &t) {
  out += "<topic id=\"" + std::to_string(t.id) + "\">\n";
  out += "  <baseName>\n";
  leaf(out, "    ", "baseNameString", t.base_name);
  for (const std::string &v : t.variants) {
    out += "    <variant>\n      <variantName>\n";
    leaf(out, "        ", "resourceData", v);
    out += "      </variantName>\n    </variant>\n";
  }
  out += "  </baseName>\n";
  out += "  <instanceOf>\n";
  out += "    <topicRef xlink:type=\"simple\" xlink:show=\"replace\" "
         "xlink:actuate=\"onRequest\" xlink:href=\"#" +
         std::to_string(t.instance_of) + "\"/>\n";
  out += "  </instanceOf>\n";
  out += "  <contents>\n";
  leaf(out, "    ", "shortdesc", t.shortdesc);
  leaf(out, "    ", "body", t.body);
  out += "  </contents>\n";
  for (const DateFact &d : t.date_facts) {
    out += "  <date>\n";
    leaf(out, "    ", "role", d.role);
    if (d.location) leaf(out, "    ", "location", *d.location);
    if (d.day) leaf(out, "    ", "day", std::to_string(*d.day));
    if (d.month) leaf(out, "    ", "month", std::to_string(*d.month));
    leaf(out, "    ", "year", std::to_string(d.year));
    out += "  </date>\n";
  }
  for (const Occurrence &o : t.occurrences) {
    out += "  <occurrence>\n";
    leaf(out, "    ", "roleSpec", o.role_spec);
    leaf(out, "    ", "resourceData", o.resource_data);
    out += "  </occurrence>\n";
  }
  out += "</topic>\n";
}

// ---- parsing ----

[[noreturn]] void missing(const xml::Element &at, std::string_view topic_id,
                          std::string_view what) {
  std::string message = "missing <" + std::string(what) + ">";
  if (!topic_id.empty()) message += " in topic " + std::string(topic_id);
  throw xml::ParseError(message, at.line, at.column);
}

const xml::Element &require(const xml::Element &parent, std::string_view topic_id,
                            std::string_view name) {
  const xml::Element *e = parent.child(name);
  if (e == nullptr) missing(parent, topic_id, name);
  return *e;
}

template <typename Int>
Int parse_number(const xml::Element &at, std::string_view topic_id, std::string_view text) {
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    std::string message = "bad number '" + std::string(text) + "' in <" + at.name + ">";
    if (!topic_id.empty()) message += " of topic " + std::string(topic_id);
    throw xml::ParseError(message, at.line, at.column);
  }
  return value;
}

TopicId parse_ref(const xml::Element &at, std::string_view topic_id, const std::string *ref) {
  if (ref == nullptr || ref->empty() || ref->front() != '#') {
    std::string message = "<" + at.name + "> needs a '#id' reference";
    if (!topic_id.empty()) message += " in topic " + std::string(topic_id);
    throw xml::ParseError(message, at.line, at.column);
  }
  return parse_number<TopicId>(at, topic_id, std::string_view(*ref).substr(1));
}

void unknown(std::vector<Lint> *lints, const xml::Element &e, std::string_view context) {
  if (lints == nullptr) return;
  lints->push_back({"xtm.unknown_element",
                    "ignored <" + e.name + "> in <" + std::string(context) + "> at line " +
                        std::to_string(e.line),
                    std::nullopt});
}

Topic parse_topic(const xml::Element &e, std::vector<Lint> *lints) {
  const std::string *id_attr = e.attribute("id");
  if (id_attr == nullptr) throw xml::ParseError("<topic> without id attribute", e.line, e.column);
  const std::string &id = *id_attr;
  Topic t;
  t.id = parse_number<TopicId>(e, id, id);

  const xml::Element &base = require(e, id, "baseName");
  t.base_name = require(base, id, "baseNameString").text;
  for (const auto &c : base.children) {
    if (c->name == "baseNameString") continue;
    if (c->name != "variant") {
      unknown(lints, *c, "baseName");
      continue;
    }
    const xml::Element &name = require(*c, id, "variantName");
    t.variants.push_back(require(name, id, "resourceData").text);
  }

  const xml::Element &instance = require(e, id, "instanceOf");
  const xml::Element &ref = require(instance, id, "topicRef");
  t.instance_of = parse_ref(ref, id, ref.attribute("xlink:href"));

  const xml::Element &contents = require(e, id, "contents");
  t.shortdesc = require(contents, id, "shortdesc").text;
  t.body = require(contents, id, "body").text;

  for (const auto &c : e.children) {
    if (c->name == "baseName" || c->name == "instanceOf" || c->name == "contents") continue;
    if (c->name == "date") {
      DateFact d;
      d.role = require(*c, id, "role").text;
      if (const xml::Element *l = c->child("location")) d.location = l->text;
      if (const xml::Element *x = c->child("day")) d.day = parse_number<int>(*x, id, x->text);
      if (const xml::Element *x = c->child("month")) d.month = parse_number<int>(*x, id, x->text);
      const xml::Element &year = require(*c, id, "year");
      d.year = parse_number<int>(year, id, year.text);
      t.date_facts.push_back(std::move(d));
    } else if (c->name == "occurrence") {
      t.occurrences.push_back(
          {require(*c, id, "roleSpec").text, require(*c, id, "resourceData").text});
    } else {
      unknown(lints, *c, "topic");
    }
  }
  return t;
}

}  // namespace

std::string emit_xtm_dita(const TopicMap &map) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<voces xmlns:ditaarch=\"" + std::string(kDitaArchNamespace) + "\" xmlns:xlink=\"" +
         std::string(kXlinkNamespace) + "\"";
  if (map.topics.empty() && map.associations.empty() && map.unresolved_refs.empty()) {
    out += "/>\n";
    return out;
  }
  out += ">\n";
  for (const auto &[id, topic] : map.topics) emit_topic(out, topic);
  if (!map.associations.empty()) {
    out += "<associations>\n";
    for (const Association &a : map.associations) {
      const std::optional<TopicId> target = a.target_id();
      out += "  <association>\n";
      leaf(out, "    ", "role", a.role);
      out += "    <member ref=\"#" + std::to_string(a.source) + "\"/>\n";
      out += "    <member ref=\"" +
             (target ? "#" + std::to_string(*target)
                     : xml::escape_attribute(std::get<std::string>(a.target))) +
             "\"/>\n";
      leaf(out, "    ", "direction", to_string(a.direction));
      out += "  </association>\n";
    }
    out += "</associations>\n";
  }
  if (!map.unresolved_refs.empty()) {
    out += "<unresolved>\n";
    for (const UnresolvedRef &r : map.unresolved_refs) {
      out += "  <ref source=\"" + std::to_string(r.source) + "\">" + xml::escape_text(r.term) +
             "</ref>\n";
    }
    out += "</unresolved>\n";
  }
  out += "</voces>\n";
  return out;
}

TopicMap parse_xtm_dita(std::string_view document, std::vector<Lint> *lints) {
  const auto root = xml::parse(document);
  if (root->name != "voces") {
    throw xml::ParseError("expected root element <voces>, found <" + root->name + ">",
                          root->line, root->column);
  }
  TopicMap map;
  for (const auto &c : root->children) {
    if (c->name == "topic") {
      Topic t = parse_topic(*c, lints);
      const TopicId id = t.id;
      if (!map.topics.emplace(id, std::move(t)).second) {
        throw xml::ParseError("duplicate topic id " + std::to_string(id), c->line, c->column);
      }
    } else if (c->name == "associations") {
      for (const auto &a : c->children) {
        if (a->name != "association") {
          unknown(lints, *a, "associations");
          continue;
        }
        Association assoc;
        assoc.role = require(*a, "", "role").text;
        const auto members = a->children_named("member");
        if (members.size() != 2) {
          throw xml::ParseError("<association> needs exactly two <member> elements", a->line,
                                a->column);
        }
        assoc.source = parse_ref(*members[0], "", members[0]->attribute("ref"));
        assoc.target = parse_ref(*members[1], "", members[1]->attribute("ref"));
        const xml::Element &direction = require(*a, "", "direction");
        const auto d = parse_direction(direction.text);
        if (!d) {
          throw xml::ParseError("bad direction '" + direction.text + "'", direction.line,
                                direction.column);
        }
        assoc.direction = *d;
        map.associations.push_back(std::move(assoc));
      }
    } else if (c->name == "unresolved") {
      for (const auto &r : c->children) {
        if (r->name != "ref") {
          unknown(lints, *r, "unresolved");
          continue;
        }
        const std::string *source = r->attribute("source");
        if (source == nullptr) missing(*r, "", "ref source attribute");
        map.unresolved_refs.push_back({parse_number<TopicId>(*r, "", *source), r->text});
      }
    } else {
      unknown(lints, *c, "voces");
    }
  }
  return map;
}

}  // namespace conditor
