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

#include "conditor/xml.h"

#include <expat.h>

#include <climits>

namespace conditor::xml {

const std::string *Element::attribute(std::string_view key) const {
  for (const auto &[k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Element *Element::child(std::string_view child_name) const {
  for (const auto &c : children) {
    if (c->name == child_name) return c.get();
  }
  return nullptr;
}

std::vector<const Element *> Element::children_named(
    std::string_view child_name) const {
  std::vector<const Element *> out;
  for (const auto &c : children) {
    if (c->name == child_name) out.push_back(c.get());
  }
  return out;
}

namespace {

struct Builder {
  XML_Parser parser = nullptr;
  std::unique_ptr<Element> root;
  std::vector<Element *> stack;
};

void on_start(void *data, const XML_Char *name, const XML_Char **attrs) {
  auto *b = static_cast<Builder *>(data);
  auto element = std::make_unique<Element>();
  element->name = name;
  element->line = static_cast<long>(XML_GetCurrentLineNumber(b->parser));
  element->column = static_cast<long>(XML_GetCurrentColumnNumber(b->parser)) + 1;
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    element->attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  Element *raw = element.get();
  if (b->stack.empty()) {
    b->root = std::move(element);
  } else {
    b->stack.back()->children.push_back(std::move(element));
  }
  b->stack.push_back(raw);
}

void on_end(void *data, const XML_Char *) {
  static_cast<Builder *>(data)->stack.pop_back();
}

void on_text(void *data, const XML_Char *s, int len) {
  auto *b = static_cast<Builder *>(data);
  if (!b->stack.empty()) b->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

std::unique_ptr<Element> parse(std::string_view document) {
  if (document.size() > static_cast<std::size_t>(INT_MAX)) {
    throw ParseError("document too large", 0, 0);
  }
  Builder builder;
  XML_Parser parser = XML_ParserCreate("UTF-8");
  if (parser == nullptr) throw std::bad_alloc();
  builder.parser = parser;
  XML_SetUserData(parser, &builder);
  XML_SetElementHandler(parser, on_start, on_end);
  XML_SetCharacterDataHandler(parser, on_text);
  const auto status = XML_Parse(parser, document.data(),
                                static_cast<int>(document.size()), XML_TRUE);
  if (status != XML_STATUS_OK) {
    const std::string message = XML_ErrorString(XML_GetErrorCode(parser));
    const long line = static_cast<long>(XML_GetCurrentLineNumber(parser));
    const long column = static_cast<long>(XML_GetCurrentColumnNumber(parser)) + 1;
    XML_ParserFree(parser);
    throw ParseError("malformed XML: " + message, line, column);
  }
  XML_ParserFree(parser);
  return std::move(builder.root);
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      // Parsers normalize a literal CR away.
      case '\r': out += "&#13;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_attribute(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\r': out += "&#13;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace conditor::xml
